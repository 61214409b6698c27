#pragma once

#include <stdexcept>
#include <string>

namespace soliton::geom {

// Curvature conventions
// ---------------------
// Euclidean graphs z = u(x,y) use the upward normal N = (-ux,-uy,1)/W with
// W = sqrt(1+ux^2+uy^2) and
//
//   H = [(1+uy^2) uxx - 2 ux uy uxy + (1+ux^2) uyy] / (2 W^3).
//
// The translator equation H = <N,v> therefore clears to
//
//   (1+uy^2) uxx - 2 ux uy uxy + (1+ux^2) uyy
//     = 2 (1+ux^2+uy^2) (-v1 ux - v2 uy + v3),
//
// and every residual in this library carries that factor 2 on the right.
// Raw residuals are LHS - RHS of the cleared equation; normalized residuals
// divide by 2 W^3 and equal H - <N,v>.  Some references drop the factor 2
// when quoting the cylindrical profile ODE (u'' = cos(theta) (1+u'^2)); a
// profile solving that form is a translator here for velocity (0,0,1/2),
// i.e. printed forms without the 2 correspond to velocity v/2.
//
// Lorentzian cylinders alpha(s) + t w (metric dx^2+dy^2-dz^2) satisfy
//
//   <w,w> <alpha' x_L w, alpha''> =
//     2 sigma eps (eps1 <w,w> - <alpha',w>^2) <alpha' x_L w, v>,
//
// with eps the sign of <alpha' x_L w, alpha' x_L w>, eps1 = <alpha',alpha'>
// (both computed from the data, never supplied), and sigma = -1 for timelike
// rulings (<w,w> < 0), +1 otherwise.  The sigma factor reconciles the two
// sign conventions in circulation for the mean curvature of timelike-ruled
// cylinders: with it, the cosh/sinh spacelike-ruling profiles, the cos
// timelike-ruling profile and the lightlike-ruling condition are exactly
// the zero set of this residual.

struct Vector3 {
  double x = 0, y = 0, z = 0;

  Vector3 operator+(const Vector3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vector3 operator-(const Vector3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vector3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vector3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

enum class Metric { Euclidean, Lorentzian };

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

/// Degenerate induced metric on a Lorentzian cylinder.
struct DegenerateSurfaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double inner(Metric m, const Vector3& a, const Vector3& b);

/// The unique x with inner(m, x, c) = det[a b c] for every c.
Vector3 cross(Metric m, const Vector3& a, const Vector3& b);

/// Sign classification of inner(Lorentzian, a, a); |.| <= 1e-12 counts as
/// lightlike.  Throws std::invalid_argument on the zero vector.
CausalCharacter causal_character(const Vector3& a);

/// Second-order jet of a graph z = u(x,y).  The base point is carried for
/// reporting only; residuals depend on the jet entries alone.
struct Jet2 {
  double x = 0, y = 0;
  double u = 0, ux = 0, uy = 0, uxx = 0, uxy = 0, uyy = 0;
};

/// Value and first two derivatives of a one-variable function at s.
struct FuncJet {
  double s = 0;
  double value = 0, d1 = 0, d2 = 0;
};

/// Space curve jet: alpha(s), alpha'(s), alpha''(s).
struct CurveJet {
  double s = 0;
  Vector3 value, d1, d2;
};

struct GraphInvariants {
  Vector3 normal;         // unit upward normal
  double area_element;    // W = sqrt(1+ux^2+uy^2)
  double mean_curvature;  // H per the convention above
};

GraphInvariants graph_invariants(const Jet2& j);

enum class ResidualForm { Raw, Normalized };

/// Euclidean graph translator residual.  Raw: LHS - RHS of the cleared
/// equation.  Normalized: raw / (2 W^3) = H - <N,v>.
double residual_graph(const Jet2& j, const Vector3& v, ResidualForm form = ResidualForm::Raw);

/// z = f(x) + g(y).  Equals residual_graph on the assembled jet (raw mode).
double residual_translation(const FuncJet& fj, const FuncJet& gj, const Vector3& v,
                            ResidualForm form = ResidualForm::Raw);

/// X(x,y) = (x, y - c x, f(x) + g(y)); reduces to residual_translation at c=0.
double residual_affine_translation(const FuncJet& fj, const FuncJet& gj, double c,
                                   const Vector3& v, ResidualForm form = ResidualForm::Raw);

/// X(x,y) = (x, y + f(x), h(x) + g(y)); reduces to residual_translation(h,g)
/// at f == 0.
double residual_space_translation(const FuncJet& fj, const FuncJet& hj, const FuncJet& gj,
                                  const Vector3& v, ResidualForm form = ResidualForm::Raw);

/// z = f(x) g(y).  Equals residual_graph on the product jet (raw mode).
double residual_homothetical(const FuncJet& fj, const FuncJet& gj, const Vector3& v,
                             ResidualForm form = ResidualForm::Raw);

/// Product-surface residual in the substituted variables p = f'(f),
/// q = g'(g); equals residual_homothetical under p = f', p p' = f''.
double residual_homothetical_pq(double f, double g, double p, double p1, double q, double q1,
                                const Vector3& v);

/// Lorentzian cylinder residual (see header note).  Throws
/// DegenerateSurfaceError when |<alpha' x_L w, alpha' x_L w>| <= 1e-12.
double residual_lorentz_cylinder(const CurveJet& cj, const Vector3& w, const Vector3& v);

/// <alpha'(s) x_L w, v>_L for a lightlike ruling w; the translator condition
/// for lightlike-ruled cylinders.  Throws std::invalid_argument unless w is
/// lightlike.
double lightlike_ruling_condition(const CurveJet& cj, const Vector3& w, const Vector3& v);

// Jet assembly helpers shared by tests, probes and the CLI.
Jet2 translation_jet(const FuncJet& fj, const FuncJet& gj);
Jet2 homothetical_jet(const FuncJet& fj, const FuncJet& gj);

}  // namespace soliton::geom
