#include <doctest.h>

#include <cmath>
#include <random>

#include "soliton/closed_forms.hpp"
#include "soliton/geometry.hpp"

using namespace soliton;
using geom::CurveJet;
using geom::FuncJet;
using geom::Jet2;
using geom::Metric;
using geom::ResidualForm;
using geom::Vector3;

namespace {

double det3(const Vector3& a, const Vector3& b, const Vector3& c) {
  return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
         a.z * (b.x * c.y - b.y * c.x);
}

std::mt19937_64 rng(321);
double rnd(double lo = -2, double hi = 2) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

FuncJet random_jet() { return {rnd(), rnd(), rnd(), rnd()}; }
Vector3 random_vec() { return {rnd(-1, 1), rnd(-1, 1), rnd(-1, 1)}; }

}  // namespace

TEST_CASE("inner products") {
  CHECK(geom::inner(Metric::Euclidean, {1, 2, 3}, {4, 5, 6}) == 32.0);
  CHECK(geom::inner(Metric::Lorentzian, {0, 0, 1}, {0, 0, 1}) == -1.0);
  CHECK(geom::inner(Metric::Lorentzian, {1, 0, 1}, {1, 0, 1}) == 0.0);  // lightlike ruling
}

TEST_CASE("cross products satisfy the determinant identity") {
  CHECK(geom::cross(Metric::Euclidean, {1, 0, 0}, {0, 1, 0}).z == 1.0);
  Vector3 lz = geom::cross(Metric::Lorentzian, {1, 0, 0}, {0, 1, 0});
  CHECK(lz.x == 0.0);
  CHECK(lz.y == 0.0);
  CHECK(lz.z == -1.0);

  for (int i = 0; i < 200; ++i) {
    Vector3 a = random_vec(), b = random_vec(), c = random_vec();
    for (Metric m : {Metric::Euclidean, Metric::Lorentzian}) {
      CHECK(geom::inner(m, geom::cross(m, a, b), c) ==
            doctest::Approx(det3(a, b, c)).epsilon(1e-12));
      // defining identity with c = a
      CHECK(geom::inner(m, geom::cross(m, a, b), a) == doctest::Approx(0.0).scale(1.0));
    }
  }
}

TEST_CASE("causal character") {
  CHECK(geom::causal_character({1, 0, 0}) == geom::CausalCharacter::Spacelike);
  CHECK(geom::causal_character({0, 0, 1}) == geom::CausalCharacter::Timelike);
  CHECK(geom::causal_character({1, 0, 1}) == geom::CausalCharacter::Lightlike);
  CHECK_THROWS_AS(geom::causal_character({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("graph invariants") {
  Jet2 flat{};
  auto gi = geom::graph_invariants(flat);
  CHECK(gi.normal.z == 1.0);
  CHECK(gi.area_element == 1.0);
  CHECK(gi.mean_curvature == 0.0);

  // u = (x^2+y^2)/2 at the origin: uxx = uyy = 1
  Jet2 paraboloid{0, 0, 0, 0, 0, 1, 0, 1};
  CHECK(geom::graph_invariants(paraboloid).mean_curvature == doctest::Approx(1.0));

  auto sj = forms::scherk_jet(1.0, 0.3, 0.2);
  CHECK(std::fabs(geom::graph_invariants(sj).mean_curvature) <= 1e-12);
}

TEST_CASE("graph residual") {
  // cylindrical profile with u'' = 2 (1+u'^2) solves the equation for v = e3
  forms::GrimReaperParams p{2, 0, 0, 0};
  for (double s = -0.7; s <= 0.7; s += 0.05) {
    FuncJet u = forms::grim_reaper_jet(p, s);
    Jet2 j{s, 0, u.value, u.d1, 0, u.d2, 0, 0};
    CHECK(std::fabs(geom::residual_graph(j, {0, 0, 1}, ResidualForm::Raw)) <= 1e-10);
  }

  // planes: normalized residual (v1 a + v2 b - v3)/W
  for (int i = 0; i < 50; ++i) {
    double a = rnd(), b = rnd();
    Vector3 v = random_vec();
    Jet2 j{rnd(), rnd(), rnd(), a, b, 0, 0, 0};
    double w = std::sqrt(1 + a * a + b * b);
    CHECK(geom::residual_graph(j, v, ResidualForm::Normalized) ==
          doctest::Approx((v.x * a + v.y * b - v.z) / w).epsilon(1e-12));
  }

  // u = -log cos x at x = 0 with v = e3: H = 1/2 but <N,v> = 1
  Jet2 j{0, 0, 0, 0, 0, 1, 0, 0};
  CHECK(geom::residual_graph(j, {0, 0, 1}, ResidualForm::Normalized) == doctest::Approx(-0.5));
}

TEST_CASE("translation residual equals the assembled graph residual") {
  for (int i = 0; i < 1000; ++i) {
    FuncJet f = random_jet(), g = random_jet();
    Vector3 v = random_vec();
    double direct = geom::residual_translation(f, g, v);
    double via_graph = geom::residual_graph(geom::translation_jet(f, g), v);
    CHECK(std::fabs(direct - via_graph) <= 1e-12 * (1 + std::fabs(direct)));
  }

  // linear f, g: only the velocity term is left
  for (int i = 0; i < 100; ++i) {
    FuncJet f{0, rnd(), rnd(), 0}, g{0, rnd(), rnd(), 0};
    Vector3 v = random_vec();
    double expect =
        -2 * (1 + f.d1 * f.d1 + g.d1 * g.d1) * (-v.x * f.d1 - v.y * g.d1 + v.z);
    CHECK(geom::residual_translation(f, g, v) == doctest::Approx(expect).epsilon(1e-12));
  }

  // two curved profiles together do not solve the equation
  forms::GrimReaperParams p{2, 0, 0, 0};
  FuncJet f = forms::grim_reaper_jet(p, 0.2), g = forms::grim_reaper_jet(p, 0.3);
  CHECK(std::fabs(geom::residual_translation(f, g, {0, 0, 1})) > 1e-3);
}

TEST_CASE("affine translation residual") {
  // c = 0 coincides with the orthogonal-chart residual
  for (int i = 0; i < 100; ++i) {
    FuncJet f = random_jet(), g = random_jet();
    Vector3 v = random_vec();
    double a = geom::residual_affine_translation(f, g, 0.0, v);
    double b = geom::residual_translation(f, g, v);
    CHECK(std::fabs(a - b) <= 1e-12 * (1 + std::fabs(a)));
  }

  // planes in the skew chart: -v1 (f'+c g') - v2 g' + v3 = 0 kills the residual
  for (int i = 0; i < 50; ++i) {
    double c = rnd(), fp = rnd(), gp = rnd();
    Vector3 v{rnd(), rnd(), 0};
    v.z = v.x * (fp + c * gp) + v.y * gp;  // solve the tangency condition
    FuncJet f{0, rnd(), fp, 0}, g{0, rnd(), gp, 0};
    CHECK(std::fabs(geom::residual_affine_translation(f, g, c, v)) <= 1e-12);
  }

  // g constant makes c drop out
  forms::GrimReaperParams p{2, 0, 0, 0};
  FuncJet f = forms::grim_reaper_jet(p, 0.3);
  FuncJet g{0, 1.7, 0, 0};
  CHECK(std::fabs(geom::residual_affine_translation(f, g, 1.0, {0, 0, 1})) <= 1e-10);
}

TEST_CASE("space translation residual") {
  // f == 0 reduces to the planar-chart residual with (h, g)
  for (int i = 0; i < 200; ++i) {
    FuncJet h = random_jet(), g = random_jet();
    FuncJet f{h.s, 0, 0, 0};
    Vector3 v = random_vec();
    double a = geom::residual_space_translation(f, h, g, v);
    double b = geom::residual_translation(h, g, v);
    CHECK(std::fabs(a - b) <= 1e-12 * (1 + std::fabs(a)));
  }

  // profile with u'' = 2(1+u'^2) embedded in the chart
  forms::GrimReaperParams p{2, 0, 0, 0};
  FuncJet h = forms::grim_reaper_jet(p, 0.25);
  FuncJet f{0.25, 0, 0, 0}, g{0.4, 2.0, 0, 0};
  CHECK(std::fabs(geom::residual_space_translation(f, h, g, {0, 0, 1})) <= 1e-10);

  // a genuinely space curve fails the equation
  FuncJet f2{0.1, 0.01, 0.2, 2.0};   // x^2
  FuncJet h2{0.1, 0.001, 0.03, 0.6}; // x^3
  FuncJet g2{0.1, 0.01, 0.2, 2.0};   // y^2
  CHECK(std::fabs(geom::residual_space_translation(f2, h2, g2, {0, 0, 1})) > 1e-6);
}

TEST_CASE("homothetical residual") {
  // f == 1 with g'' = 2(1+g'^2) solves the product equation for v = e3
  forms::GrimReaperParams p{2, 0, 0, 0};
  for (double s = -0.5; s <= 0.5; s += 0.1) {
    FuncJet f{0, 1, 0, 0};
    FuncJet g = forms::grim_reaper_jet(p, s);
    CHECK(std::fabs(geom::residual_homothetical(f, g, {0, 0, 1})) <= 1e-10);
  }

  // f == 0: every f-term dies and -2 v3 is left
  for (int i = 0; i < 20; ++i) {
    FuncJet f{0, 0, 0, 0};
    FuncJet g = random_jet();
    Vector3 v = random_vec();
    CHECK(geom::residual_homothetical(f, g, v) == doctest::Approx(-2 * v.z).epsilon(1e-14));
  }

  // exponential-times-exponential is not a translator
  FuncJet f{0, 1, 1, 1}, g{0, 1, 1, 1};  // e^x, e^y at 0
  CHECK(std::fabs(geom::residual_homothetical(f, g, {0, 0, 1})) > 1e-3);

  // matches the assembled product jet through the graph residual
  for (int i = 0; i < 200; ++i) {
    FuncJet f = random_jet(), g = random_jet();
    Vector3 v = random_vec();
    double direct = geom::residual_homothetical(f, g, v);
    double via_graph = geom::residual_graph(geom::homothetical_jet(f, g), v);
    CHECK(std::fabs(direct - via_graph) <= 1e-12 * (1 + std::fabs(direct)));
  }
}

TEST_CASE("homothetical residual in p,q variables") {
  // change of variables p = f'(f), q = g'(g): p p' = f''
  for (int i = 0; i < 100; ++i) {
    FuncJet f = random_jet(), g = random_jet();
    if (std::fabs(f.d1) < 1e-3 || std::fabs(g.d1) < 1e-3) continue;
    Vector3 v = random_vec();
    double direct = geom::residual_homothetical(f, g, v);
    double pq = geom::residual_homothetical_pq(f.value, g.value, f.d1, f.d2 / f.d1, g.d1,
                                               g.d2 / g.d1, v);
    CHECK(std::fabs(direct - pq) <= 1e-10 * (1 + std::fabs(direct)));
  }

  // v = (0,1,0) with f = g = q = 1, p = p' = q' = 0: only the velocity term
  // 2 f q (1 + p^2 g^2 + f^2 q^2) = 2 * (1 + 0 + 1) survives
  CHECK(geom::residual_homothetical_pq(1, 1, 0, 0, 1, 0, {0, 1, 0}) == doctest::Approx(4.0));
}

TEST_CASE("Lorentz cylinder residual") {
  using forms::LorentzProfileCase;
  for (LorentzProfileCase kind : {LorentzProfileCase::SpacelikeCosh,
                                  LorentzProfileCase::SpacelikeSinh,
                                  LorentzProfileCase::TimelikeCos}) {
    forms::LorentzProfileParams p{kind, 0, 0};
    Vector3 w = forms::lorentz_profile_ruling(kind);
    Vector3 v = forms::lorentz_profile_velocity(kind);
    double lo = kind == LorentzProfileCase::SpacelikeSinh ? 0.05 : -0.6;
    double hi = kind == LorentzProfileCase::SpacelikeSinh ? 1.2 : 0.6;
    for (double s = lo; s <= hi; s += (hi - lo) / 100) {
      CurveJet c = forms::lorentz_profile_curve(p, s);
      CHECK(std::fabs(geom::residual_lorentz_cylinder(c, w, v)) <= 1e-10);
    }
  }

  // straight rulings over a straight line with <alpha' x w, v> = 0 give a plane
  CurveJet line{0, {0, 0, 0}, {0, 1, 0.3}, {0, 0, 0}};
  Vector3 w{1, 0, 0};
  Vector3 v{0.7, 1.0, 0.3};  // n = (0, 0.3, 1), so <n,v>_L = 0.3 - 0.3 = 0
  CHECK(std::fabs(geom::inner(Metric::Lorentzian,
                              geom::cross(Metric::Lorentzian, line.d1, w), v)) <= 1e-15);
  CHECK(std::fabs(geom::residual_lorentz_cylinder(line, w, v)) <= 1e-12);

  // degenerate induced metric is an error: in the lightlike chart u' = 0
  // makes alpha' x_L w lightlike
  CurveJet bad{0, {0, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(geom::residual_lorentz_cylinder(bad, {1, 0, 1}, {0, 0, 1}),
                  geom::DegenerateSurfaceError);
}

TEST_CASE("lightlike ruling condition") {
  Vector3 w{1, 0, 1};
  // v parallel to w kills the condition for arbitrary curves
  for (int i = 0; i < 100; ++i) {
    CurveJet c{0, random_vec(), random_vec(), random_vec()};
    CHECK(std::fabs(geom::lightlike_ruling_condition(c, w, w)) <= 1e-12);
  }
  // chart alpha = (u, s, -u): the condition is v1 - 2 v2 u' - v3
  double up = 0.5;
  CurveJet c{0, {0, 0, 0}, {up, 1, -up}, {0, 0, 0}};
  CHECK(geom::lightlike_ruling_condition(c, w, {0, 1, 0}) == doctest::Approx(-1.0));
  CHECK(geom::lightlike_ruling_condition(c, w, {1, 0, 1}) == doctest::Approx(0.0));
  // u(s) = s^3 at s = 0.3, still parallel-velocity clean
  CurveJet c3{0.3, {0.027, 0.3, -0.027}, {0.27, 1, -0.27}, {1.8, 0, -1.8}};
  CHECK(std::fabs(geom::lightlike_ruling_condition(c3, w, w)) <= 1e-12);
  CHECK_THROWS_AS(geom::lightlike_ruling_condition(c, {1, 0, 0}, w), std::invalid_argument);
}

TEST_CASE("raw and normalized residuals are consistent") {
  for (int i = 0; i < 300; ++i) {
    FuncJet f = random_jet(), g = random_jet();
    Vector3 v = random_vec();
    Jet2 j = geom::translation_jet(f, g);
    double w2 = 1 + j.ux * j.ux + j.uy * j.uy;
    double raw = geom::residual_graph(j, v, ResidualForm::Raw);
    double nrm = geom::residual_graph(j, v, ResidualForm::Normalized);
    CHECK(std::fabs(nrm * 2 * w2 * std::sqrt(w2) - raw) <= 1e-12 * (1 + std::fabs(raw)));
  }
}

TEST_CASE("residuals ignore the base point") {
  FuncJet f{0.1, 0.4, -0.3, 0.9}, g{-0.2, 1.1, 0.2, -0.5};
  Vector3 v{0.3, -0.1, 0.8};
  FuncJet f2 = f, g2 = g;
  f2.s = 5.0;
  g2.s = -7.0;
  CHECK(geom::residual_translation(f, g, v) == geom::residual_translation(f2, g2, v));
  CHECK(geom::residual_homothetical(f, g, v) == geom::residual_homothetical(f2, g2, v));
}

TEST_CASE("raw residuals are affine in the velocity") {
  for (int i = 0; i < 300; ++i) {
    FuncJet f = random_jet(), g = random_jet(), h = random_jet();
    Vector3 v1 = random_vec(), v2 = random_vec(), zero{};
    auto affinity = [&](auto&& r) {
      double lhs = r(v1 + v2) - r(v1) - r(v2) + r(zero);
      double scale = 1 + std::fabs(r(v1)) + std::fabs(r(v2));
      CHECK(std::fabs(lhs) <= 1e-12 * scale);
    };
    affinity([&](const Vector3& v) { return geom::residual_translation(f, g, v); });
    affinity([&](const Vector3& v) { return geom::residual_homothetical(f, g, v); });
    affinity([&](const Vector3& v) { return geom::residual_space_translation(f, h, g, v); });
    affinity([&](const Vector3& v) { return geom::residual_affine_translation(f, g, 0.7, v); });
  }
}
