#include "soliton/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace soliton::forms {

namespace {
double sq(double x) { return x * x; }
}

geom::FuncJet grim_reaper_jet(const GrimReaperParams& p, double s) {
  if (p.k == 0) throw std::invalid_argument("grim_reaper_jet: k must be nonzero");
  double arg = p.k * s + p.a;
  double c = std::cos(arg);
  if (std::fabs(c) <= 1e-9) throw std::domain_error("grim_reaper_jet: profile pole");
  if (c < 0) throw std::domain_error("grim_reaper_jet: outside the principal branch");
  geom::FuncJet j;
  j.s = s;
  j.value = -std::log(c) / p.k + p.b;
  j.d1 = std::tan(arg);
  j.d2 = p.k * (1 + sq(j.d1));
  return j;
}

double grim_reaper_speed(double v3, double theta) { return 2 * v3 * std::cos(theta); }

geom::FuncJet lorentz_profile_jet(const LorentzProfileParams& p, double s) {
  geom::FuncJet j;
  j.s = s;
  switch (p.kind) {
    case LorentzProfileCase::SpacelikeCosh: {
      double arg = -2 * s + p.a;
      j.value = -0.5 * std::log(std::cosh(arg)) + p.b;
      j.d1 = std::tanh(arg);
      j.d2 = -2 * (1 - sq(j.d1));
      return j;
    }
    case LorentzProfileCase::SpacelikeSinh: {
      double arg = 2 * s + p.a;
      if (arg <= 1e-9) throw std::domain_error("lorentz_profile_jet: sinh argument must be positive");
      j.value = 0.5 * std::log(std::sinh(arg)) + p.b;
      j.d1 = std::cosh(arg) / std::sinh(arg);
      j.d2 = 2 * (1 - sq(j.d1));
      return j;
    }
    case LorentzProfileCase::TimelikeCos: {
      double arg = 2 * s + p.a;
      if (std::fabs(arg) >= std::numbers::pi / 2 - 1e-9)
        throw std::domain_error("lorentz_profile_jet: cos argument outside (-pi/2, pi/2)");
      j.value = 0.5 * std::log(std::cos(arg)) + p.b;
      j.d1 = -std::tan(arg);
      j.d2 = -2 * (1 + sq(j.d1));
      return j;
    }
  }
  throw std::logic_error("lorentz_profile_jet: bad case");
}

double lorentz_profile_ode_residual(const geom::FuncJet& j, LorentzProfileCase kind,
                                    const geom::Vector3& v) {
  switch (kind) {
    case LorentzProfileCase::SpacelikeCosh:
      return j.d2 - 2 * (1 - sq(j.d1)) * (v.y * j.d1 - v.z);
    case LorentzProfileCase::SpacelikeSinh:
      return j.d2 + 2 * (1 - sq(j.d1)) * (v.y * j.d1 - v.z);
    case LorentzProfileCase::TimelikeCos:
      return j.d2 - 2 * (1 + sq(j.d1)) * (v.x * j.d1 - v.y);
  }
  throw std::logic_error("lorentz_profile_ode_residual: bad case");
}

geom::CurveJet lorentz_profile_curve(const LorentzProfileParams& p, double s) {
  geom::FuncJet u = lorentz_profile_jet(p, s);
  geom::CurveJet c;
  c.s = s;
  switch (p.kind) {
    case LorentzProfileCase::SpacelikeCosh:
    case LorentzProfileCase::SpacelikeSinh:
      c.value = {0, s, u.value};
      c.d1 = {0, 1, u.d1};
      c.d2 = {0, 0, u.d2};
      return c;
    case LorentzProfileCase::TimelikeCos:
      c.value = {s, u.value, 0};
      c.d1 = {1, u.d1, 0};
      c.d2 = {0, u.d2, 0};
      return c;
  }
  throw std::logic_error("lorentz_profile_curve: bad case");
}

geom::Vector3 lorentz_profile_ruling(LorentzProfileCase kind) {
  switch (kind) {
    case LorentzProfileCase::SpacelikeCosh:
    case LorentzProfileCase::SpacelikeSinh:
      return {1, 0, 0};
    case LorentzProfileCase::TimelikeCos:
      return {0, 0, 1};
  }
  throw std::logic_error("lorentz_profile_ruling: bad case");
}

geom::Vector3 lorentz_profile_velocity(LorentzProfileCase kind) {
  switch (kind) {
    case LorentzProfileCase::SpacelikeCosh:
    case LorentzProfileCase::SpacelikeSinh:
      return {0, 0, 1};
    case LorentzProfileCase::TimelikeCos:
      return {0, 1, 0};
  }
  throw std::logic_error("lorentz_profile_velocity: bad case");
}

geom::Jet2 scherk_jet(double c, double x, double y) {
  if (c == 0) throw std::invalid_argument("scherk_jet: c must be nonzero");
  double cx = std::cos(c * x), cy = std::cos(c * y);
  if (cx <= 0 || cy <= 0) throw std::domain_error("scherk_jet: cos(cx), cos(cy) must be positive");
  geom::Jet2 j;
  j.x = x;
  j.y = y;
  j.u = (std::log(cy) - std::log(cx)) / c;
  j.ux = std::tan(c * x);
  j.uy = -std::tan(c * y);
  j.uxx = c * (1 + sq(j.ux));
  j.uxy = 0;
  j.uyy = -c * (1 + sq(j.uy));
  return j;
}

std::array<double, 2> bowl_ode_field(const BowlState& s, double v3) {
  if (s.r <= 0) throw std::domain_error("bowl_ode_field: r must be positive (use bowl_series_start)");
  return {s.du, (1 + sq(s.du)) * (2 * v3 - s.du / s.r)};
}

BowlState bowl_series_start(double u0, double r0, double v3) {
  if (!(r0 > 0 && r0 <= 1e-3))
    throw std::invalid_argument("bowl_series_start: r0 must lie in (0, 1e-3]");
  return {r0, u0 + v3 * r0 * r0 / 2, v3 * r0};
}

}  // namespace soliton::forms
