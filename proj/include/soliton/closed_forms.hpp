#pragma once

#include <array>

#include "soliton/geometry.hpp"

namespace soliton::forms {

/// Cylindrical profile u(s) = -(1/k) log cos(k s + a) + b, the translator
/// profile with u'' = k (1 + u'^2).  Under this library's conventions the
/// cylinder over it translates with velocity (0,0,v3) when k = 2 v3 cos(theta),
/// theta the tilt of the rulings against the horizontal.
struct GrimReaperParams {
  double k = 1;      // speed, k != 0
  double a = 0;      // phase
  double b = 0;      // height offset
  double theta = 0;  // ruling tilt, cos(theta) != 0
};

/// Profile jet at s.  Throws expr-independent DomainError-style
/// std::domain_error when cos(k s + a) is within 1e-9 of a zero.
geom::FuncJet grim_reaper_jet(const GrimReaperParams& p, double s);

/// k = 2 v3 cos(theta): the profile speed matching velocity (0,0,v3).
double grim_reaper_speed(double v3, double theta);

enum class LorentzProfileCase { SpacelikeCosh, SpacelikeSinh, TimelikeCos };

struct LorentzProfileParams {
  LorentzProfileCase kind = LorentzProfileCase::SpacelikeCosh;
  double a = 0, b = 0;
};

/// The three Lorentzian cylinder profiles:
///   spacelike-cosh : u = -(1/2) log(cosh(-2s+a)) + b   (|u'| < 1)
///   spacelike-sinh : u =  (1/2) log(sinh( 2s+a)) + b   (2s+a > 0, |u'| > 1)
///   timelike-cos   : u =  (1/2) log(cos ( 2s+a)) + b   (|2s+a| < pi/2)
/// Branch violations throw std::domain_error rather than returning NaN.
geom::FuncJet lorentz_profile_jet(const LorentzProfileParams& p, double s);

/// Profile ODEs solved by the three cases, as residuals (zero on solutions):
///   spacelike-cosh : u'' - 2 (1-u'^2) (v2 u' - v3)
///   spacelike-sinh : u'' + 2 (1-u'^2) (v2 u' - v3)
///   timelike-cos   : u'' - 2 (1+u'^2) (v1 u' - v2)
double lorentz_profile_ode_residual(const geom::FuncJet& j, LorentzProfileCase kind,
                                    const geom::Vector3& v);

/// Canonical cylinder chart for each case: the curve alpha(s), the ruling w
/// and the velocity for which the profile solves the cylinder equation.
geom::CurveJet lorentz_profile_curve(const LorentzProfileParams& p, double s);
geom::Vector3 lorentz_profile_ruling(LorentzProfileCase kind);
geom::Vector3 lorentz_profile_velocity(LorentzProfileCase kind);

/// Full second-order jet of u(x,y) = (1/c) log(cos(c y)/cos(c x)), the
/// minimal graph used as the H == 0 oracle.  Requires cos(cx), cos(cy) > 0.
geom::Jet2 scherk_jet(double c, double x, double y);

/// Rotational profile state: height u and slope u' at radius r.
struct BowlState {
  double r = 0;
  double u = 0;
  double du = 0;
};

/// Rotationally symmetric translator ODE.  For a graph u(r) of the radius,
/// the graph equation reduces (u_x = u' x/r etc.) to
///
///     u''/(1+u'^2) + u'/r = 2 v3,
///
/// i.e. (du/dr, du'/dr) = (u', (1+u'^2)(2 v3 - u'/r)).  Requires r > 0; use
/// bowl_series_start to step off the axis.
std::array<double, 2> bowl_ode_field(const BowlState& s, double v3);

/// Series start at small r0: u = u0 + v3 r0^2/2 + O(r0^4), u' = v3 r0.
/// Requires 0 < r0 <= 1e-3.
BowlState bowl_series_start(double u0, double r0, double v3);

}  // namespace soliton::forms
