#include "soliton/geometry.hpp"

#include <cmath>

namespace soliton::geom {

namespace {
constexpr double kLightlikeTol = 1e-12;
constexpr double kDegenerateTol = 1e-12;

double sq(double x) { return x * x; }
}  // namespace

double inner(Metric m, const Vector3& a, const Vector3& b) {
  double e = a.x * b.x + a.y * b.y;
  return m == Metric::Euclidean ? e + a.z * b.z : e - a.z * b.z;
}

Vector3 cross(Metric m, const Vector3& a, const Vector3& b) {
  Vector3 e{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  if (m == Metric::Lorentzian) e.z = -e.z;  // inner(m, x, c) = det[a b c]
  return e;
}

CausalCharacter causal_character(const Vector3& a) {
  if (a.x == 0 && a.y == 0 && a.z == 0)
    throw std::invalid_argument("causal_character: zero vector");
  double q = inner(Metric::Lorentzian, a, a);
  if (std::fabs(q) <= kLightlikeTol) return CausalCharacter::Lightlike;
  return q > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

GraphInvariants graph_invariants(const Jet2& j) {
  double w2 = 1 + sq(j.ux) + sq(j.uy);
  double w = std::sqrt(w2);
  Vector3 n{-j.ux / w, -j.uy / w, 1 / w};
  double num = (1 + sq(j.uy)) * j.uxx - 2 * j.ux * j.uy * j.uxy + (1 + sq(j.ux)) * j.uyy;
  return {n, w, num / (2 * w2 * w)};
}

double residual_graph(const Jet2& j, const Vector3& v, ResidualForm form) {
  double w2 = 1 + sq(j.ux) + sq(j.uy);
  double lhs = (1 + sq(j.uy)) * j.uxx - 2 * j.ux * j.uy * j.uxy + (1 + sq(j.ux)) * j.uyy;
  double rhs = 2 * w2 * (-v.x * j.ux - v.y * j.uy + v.z);
  double raw = lhs - rhs;
  if (form == ResidualForm::Raw) return raw;
  return raw / (2 * w2 * std::sqrt(w2));
}

double residual_translation(const FuncJet& fj, const FuncJet& gj, const Vector3& v,
                            ResidualForm form) {
  double f1 = fj.d1, f2 = fj.d2, g1 = gj.d1, g2 = gj.d2;
  double w2 = 1 + sq(f1) + sq(g1);
  double raw = (1 + sq(g1)) * f2 + (1 + sq(f1)) * g2 - 2 * w2 * (-v.x * f1 - v.y * g1 + v.z);
  if (form == ResidualForm::Raw) return raw;
  return raw / (2 * w2 * std::sqrt(w2));
}

double residual_affine_translation(const FuncJet& fj, const FuncJet& gj, double c,
                                   const Vector3& v, ResidualForm form) {
  double f1 = fj.d1, f2 = fj.d2, g1 = gj.d1, g2 = gj.d2;
  double slope = f1 + c * g1;  // du/dx of z = f(x) + g(y + c x) in graph form
  double w2 = 1 + sq(g1) + sq(slope);
  double raw = (1 + sq(g1)) * f2 + (1 + c * c + sq(f1)) * g2 -
               2 * (-v.x * slope - v.y * g1 + v.z) * w2;
  if (form == ResidualForm::Raw) return raw;
  return raw / (2 * w2 * std::sqrt(w2));
}

double residual_space_translation(const FuncJet& fj, const FuncJet& hj, const FuncJet& gj,
                                  const Vector3& v, ResidualForm form) {
  double f1 = fj.d1, f2 = fj.d2, h1 = hj.d1, h2 = hj.d2, g1 = gj.d1, g2 = gj.d2;
  double t = f1 * g1 - h1;  // first normal component, up to 1/W
  double w2 = 1 + sq(g1) + sq(t);
  double raw = (h2 - f2 * g1) * (1 + sq(g1)) + (1 + sq(f1) + sq(h1)) * g2 -
               2 * (v.x * t - v.y * g1 + v.z) * w2;
  if (form == ResidualForm::Raw) return raw;
  return raw / (2 * w2 * std::sqrt(w2));
}

double residual_homothetical(const FuncJet& fj, const FuncJet& gj, const Vector3& v,
                             ResidualForm form) {
  double f = fj.value, f1 = fj.d1, f2 = fj.d2;
  double g = gj.value, g1 = gj.d1, g2 = gj.d2;
  double w2 = 1 + sq(f1 * g) + sq(f * g1);
  double raw = (1 + sq(f * g1)) * g * f2 - 2 * f * g * sq(f1) * sq(g1) +
               (1 + sq(g * f1)) * f * g2 - 2 * w2 * (-v.x * f1 * g - v.y * f * g1 + v.z);
  if (form == ResidualForm::Raw) return raw;
  return raw / (2 * w2 * std::sqrt(w2));
}

double residual_homothetical_pq(double f, double g, double p, double p1, double q, double q1,
                                const Vector3& v) {
  double w2 = 1 + sq(p * g) + sq(f * q);
  return (1 + sq(f * q)) * g * p * p1 - 2 * f * g * sq(p) * sq(q) +
         (1 + sq(g * p)) * f * q * q1 - 2 * w2 * (-v.x * p * g - v.y * f * q + v.z);
}

double residual_lorentz_cylinder(const CurveJet& cj, const Vector3& w, const Vector3& v) {
  const Metric L = Metric::Lorentzian;
  Vector3 n = cross(L, cj.d1, w);
  double nn = inner(L, n, n);
  if (std::fabs(nn) <= kDegenerateTol)
    throw DegenerateSurfaceError("residual_lorentz_cylinder: degenerate induced metric");
  double eps = nn > 0 ? 1.0 : -1.0;
  double eps1 = inner(L, cj.d1, cj.d1);
  double ww = inner(L, w, w);
  double sigma = ww < 0 ? -1.0 : 1.0;  // see sign note in the header
  double lhs = ww * inner(L, n, cj.d2);
  double rhs = 2 * sigma * eps * (eps1 * ww - sq(inner(L, cj.d1, w))) * inner(L, n, v);
  return lhs - rhs;
}

double lightlike_ruling_condition(const CurveJet& cj, const Vector3& w, const Vector3& v) {
  if (causal_character(w) != CausalCharacter::Lightlike)
    throw std::invalid_argument("lightlike_ruling_condition: ruling is not lightlike");
  return inner(Metric::Lorentzian, cross(Metric::Lorentzian, cj.d1, w), v);
}

Jet2 translation_jet(const FuncJet& fj, const FuncJet& gj) {
  Jet2 j;
  j.x = fj.s;
  j.y = gj.s;
  j.u = fj.value + gj.value;
  j.ux = fj.d1;
  j.uy = gj.d1;
  j.uxx = fj.d2;
  j.uxy = 0;
  j.uyy = gj.d2;
  return j;
}

Jet2 homothetical_jet(const FuncJet& fj, const FuncJet& gj) {
  Jet2 j;
  j.x = fj.s;
  j.y = gj.s;
  j.u = fj.value * gj.value;
  j.ux = fj.d1 * gj.value;
  j.uy = fj.value * gj.d1;
  j.uxx = fj.d2 * gj.value;
  j.uxy = fj.d1 * gj.d1;
  j.uyy = fj.value * gj.d2;
  return j;
}

}  // namespace soliton::geom
