#include <doctest.h>

#include <cmath>

#include "soliton/closed_forms.hpp"
#include "soliton/geometry.hpp"

using namespace soliton;
using forms::GrimReaperParams;
using forms::LorentzProfileCase;
using forms::LorentzProfileParams;
using geom::FuncJet;
using geom::Vector3;

TEST_CASE("grim reaper profile") {
  GrimReaperParams p{1, 0, 0, 0};
  FuncJet j0 = forms::grim_reaper_jet(p, 0);
  CHECK(j0.value == 0.0);
  CHECK(j0.d1 == 0.0);
  CHECK(j0.d2 == 1.0);

  double quarter = std::acos(0.0) / 2;  // pi/4
  CHECK(forms::grim_reaper_jet(p, quarter).value ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(forms::grim_reaper_jet(p, 2 * quarter), std::domain_error);  // pole
  CHECK_THROWS_AS(forms::grim_reaper_jet({0, 0, 0, 0}, 0.1), std::invalid_argument);

  // the k = 2 profile is the unit-speed vertical translator
  GrimReaperParams p2{2, 0, 0, 0};
  for (double s = -0.7; s <= 0.7; s += 0.01) {
    FuncJet u = forms::grim_reaper_jet(p2, s);
    geom::Jet2 jet{s, 0, u.value, u.d1, 0, u.d2, 0, 0};
    CHECK(std::fabs(geom::residual_graph(jet, {0, 0, 1}, geom::ResidualForm::Normalized)) <=
          1e-10);
  }
}

TEST_CASE("grim reaper symmetry and parameter covariance") {
  GrimReaperParams p{1.5, 0, 0, 0};
  for (double s : {0.1, 0.3, 0.45}) {
    FuncJet plus = forms::grim_reaper_jet(p, s);
    FuncJet minus = forms::grim_reaper_jet(p, -s);
    CHECK(plus.value == doctest::Approx(minus.value).epsilon(1e-14));  // even
    CHECK(plus.d1 == doctest::Approx(-minus.d1).epsilon(1e-14));      // odd
    CHECK(plus.d2 == doctest::Approx(minus.d2).epsilon(1e-14));       // even
  }

  // a shifts the parameter, b the height, neither changes the residual
  GrimReaperParams shifted{2, 0.3, 1.7, 0};
  for (double s = -0.4; s <= 0.4; s += 0.05) {
    FuncJet u = forms::grim_reaper_jet(shifted, s);
    geom::Jet2 jet{s, 0, u.value, u.d1, 0, u.d2, 0, 0};
    CHECK(std::fabs(geom::residual_graph(jet, {0, 0, 1}, geom::ResidualForm::Raw)) <= 1e-10);
    FuncJet base = forms::grim_reaper_jet({2, 0, 0, 0}, s + 0.15);
    FuncJet moved = forms::grim_reaper_jet({2, 0.3, 0, 0}, s);
    CHECK(moved.value == doctest::Approx(base.value).epsilon(1e-12));
  }
}

TEST_CASE("tilted rulings through the translation chart") {
  // the tilted cylinder is the graph x tan(theta) + u(y)/cos(theta), so the
  // profile with k = 2 v3 cos(theta) must kill the translation residual
  double theta = 0.4, v3 = 0.7;
  double k = forms::grim_reaper_speed(v3, theta);
  CHECK(k == doctest::Approx(2 * v3 * std::cos(theta)));
  GrimReaperParams p{k, 0, 0, theta};
  for (double y = -0.5; y <= 0.5; y += 0.05) {
    FuncJet u = forms::grim_reaper_jet(p, y);
    FuncJet f{0.0, 0.0, std::tan(theta), 0.0};
    FuncJet g{y, u.value / std::cos(theta), u.d1 / std::cos(theta), u.d2 / std::cos(theta)};
    CHECK(std::fabs(geom::residual_translation(f, g, {0, 0, v3})) <= 1e-10);
  }
}

TEST_CASE("Lorentz profiles") {
  LorentzProfileParams cosh_p{LorentzProfileCase::SpacelikeCosh, 0, 0};
  FuncJet c0 = forms::lorentz_profile_jet(cosh_p, 0);
  CHECK(c0.value == 0.0);
  CHECK(c0.d1 == 0.0);
  CHECK(c0.d2 == doctest::Approx(-2.0));

  LorentzProfileParams cos_p{LorentzProfileCase::TimelikeCos, 0, 0};
  FuncJet t0 = forms::lorentz_profile_jet(cos_p, 0);
  CHECK(t0.value == 0.0);
  CHECK(t0.d1 == 0.0);
  CHECK(t0.d2 == doctest::Approx(-2.0));

  // profile equations hold on a dense grid with the stated velocities
  for (int i = 0; i <= 1000; ++i) {
    double s = -0.7 + 1.4 * i / 1000.0;
    FuncJet j = forms::lorentz_profile_jet(cosh_p, s);
    CHECK(std::fabs(forms::lorentz_profile_ode_residual(
              j, LorentzProfileCase::SpacelikeCosh, {0, 0, 1})) <= 1e-10);
  }
  LorentzProfileParams sinh_p{LorentzProfileCase::SpacelikeSinh, 0, 0};
  for (int i = 0; i <= 1000; ++i) {
    double s = 0.05 + 1.0 * i / 1000.0;
    FuncJet j = forms::lorentz_profile_jet(sinh_p, s);
    CHECK(std::fabs(forms::lorentz_profile_ode_residual(
              j, LorentzProfileCase::SpacelikeSinh, {0, 0, 1})) <= 1e-10);
  }
  for (int i = 0; i <= 1000; ++i) {
    double s = -0.7 + 1.4 * i / 1000.0;
    FuncJet j = forms::lorentz_profile_jet(cos_p, s);
    CHECK(std::fabs(forms::lorentz_profile_ode_residual(
              j, LorentzProfileCase::TimelikeCos, {0, 1, 0})) <= 1e-10);
  }

  // branch ends fail loudly
  CHECK_THROWS_AS(forms::lorentz_profile_jet(sinh_p, -0.1), std::domain_error);
  CHECK_THROWS_AS(forms::lorentz_profile_jet(cos_p, 0.8), std::domain_error);
}

TEST_CASE("minimal-graph oracle jet") {
  geom::Jet2 center = forms::scherk_jet(1, 0, 0);
  CHECK(center.u == 0.0);
  CHECK(center.ux == 0.0);
  CHECK(center.uy == 0.0);

  geom::Jet2 diag = forms::scherk_jet(1, 0.5, 0.5);
  CHECK(diag.u == doctest::Approx(0.0));
  CHECK(diag.ux == doctest::Approx(std::tan(0.5)));
  CHECK(diag.uy == doctest::Approx(-std::tan(0.5)));

  CHECK(std::fabs(geom::graph_invariants(forms::scherk_jet(1, 0.3, 0.2)).mean_curvature) <=
        1e-12);
  CHECK_THROWS_AS(forms::scherk_jet(1, 1.6, 0), std::domain_error);
  CHECK_THROWS_AS(forms::scherk_jet(0, 0, 0), std::invalid_argument);
}

TEST_CASE("bowl field and series start") {
  auto f = forms::bowl_ode_field({1, 0, 1}, 1);
  CHECK(f[0] == 1.0);
  CHECK(f[1] == doctest::Approx(2.0));  // (1+1)(2-1)

  auto flat = forms::bowl_ode_field({0.37, 5.0, 0}, 0.8);
  CHECK(flat[1] == doctest::Approx(2 * 0.8));

  forms::BowlState s = forms::bowl_series_start(0, 1e-3, 1);
  CHECK(s.u == doctest::Approx(5e-7).epsilon(1e-10));
  CHECK(s.du == doctest::Approx(1e-3));
  CHECK(forms::bowl_series_start(0.4, 1e-3, 0).du == 0.0);
  CHECK(forms::bowl_series_start(0.4, 1e-3, 0).u == doctest::Approx(0.4));
  CHECK(forms::bowl_series_start(0, 1e-3, -1).du == doctest::Approx(-1e-3));
  CHECK_THROWS_AS(forms::bowl_series_start(0, 2e-3, 1), std::invalid_argument);
  CHECK_THROWS_AS(forms::bowl_series_start(0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(forms::bowl_ode_field({0, 0, 0}, 1), std::domain_error);
}
