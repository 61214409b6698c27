#include "soliton/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "soliton/closed_forms.hpp"

namespace soliton::ode {

namespace {

bool finite(std::span<const double> y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

Trajectory integrate_rk4(const OdeSystem& sys, double t0, std::span<const double> y0, double t1,
                         double h) {
  if (!(h > 0) || !(t1 > t0)) throw std::invalid_argument("integrate_rk4: need h > 0, t1 > t0");
  const int n = sys.dim;
  Trajectory traj;
  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = t0;
  traj.t.push_back(t);
  traj.y.push_back(y);
  if (sys.stop && sys.stop(t, y)) {
    traj.reason = Termination::StopPredicate;
    return traj;
  }
  while (t < t1) {
    double step = std::min(h, t1 - t);
    sys.rhs(t, y, k1);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * step * k1[i];
    sys.rhs(t + 0.5 * step, tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * step * k2[i];
    sys.rhs(t + 0.5 * step, tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + step * k3[i];
    sys.rhs(t + step, tmp, k4);
    for (int i = 0; i < n; ++i)
      y[i] += step / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t += step;
    if (!finite(y)) {
      traj.reason = Termination::Blowup;
      return traj;  // last valid point already recorded
    }
    traj.t.push_back(t);
    traj.y.push_back(y);
    if (sys.stop && sys.stop(t, y)) {
      traj.reason = Termination::StopPredicate;
      return traj;
    }
  }
  traj.reason = Termination::SpanEnd;
  return traj;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace

Trajectory integrate_adaptive(const OdeSystem& sys, double t0, std::span<const double> y0,
                              double t1, double tol, double max_step) {
  if (!(tol >= 1e-14 && tol <= 1e-3))
    throw std::invalid_argument("integrate_adaptive: tol must lie in [1e-14, 1e-3]");
  if (!(t1 > t0)) throw std::invalid_argument("integrate_adaptive: need t1 > t0");
  const int n = sys.dim;
  const double span = t1 - t0;
  Trajectory traj;
  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n), y4(n);
  double t = t0;
  traj.t.push_back(t);
  traj.y.push_back(y);
  if (sys.stop && sys.stop(t, y)) {
    traj.reason = Termination::StopPredicate;
    return traj;
  }
  double h = span / 100.0;
  if (max_step > 0) h = std::min(h, max_step);
  while (t < t1) {
    h = std::min(h, t1 - t);
    if (t1 - t - h < 0.01 * h) h = t1 - t;  // avoid a sliver final step
    if (h < 1e-14 * span) {
      traj.reason = Termination::StepUnderflow;
      return traj;
    }
    sys.rhs(t, y, k1);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    sys.rhs(t + h / 5, tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    sys.rhs(t + 3 * h / 10, tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    sys.rhs(t + 4 * h / 5, tmp, k4);
    for (int i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    sys.rhs(t + 8 * h / 9, tmp, k5);
    for (int i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    sys.rhs(t + h, tmp, k6);
    for (int i = 0; i < n; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    sys.rhs(t + h, y5, k7);
    for (int i = 0; i < n; ++i)
      y4[i] = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);

    if (!finite(y5)) {
      traj.reason = Termination::Blowup;
      return traj;
    }
    double err = 0;
    for (int i = 0; i < n; ++i)
      err = std::max(err, std::fabs(y5[i] - y4[i]) / (tol * (1 + std::fabs(y[i]))));
    if (err <= 1.0) {
      t += h;
      y = y5;
      traj.t.push_back(t);
      traj.y.push_back(y);
      if (sys.stop && sys.stop(t, y)) {
        traj.reason = Termination::StopPredicate;
        return traj;
      }
    }
    double scale = 0.9 * std::pow(err > 0 ? err : 1e-16, -0.2);
    h *= std::clamp(scale, 0.2, 5.0);
    if (max_step > 0) h = std::min(h, max_step);
  }
  traj.reason = Termination::SpanEnd;
  return traj;
}

Trajectory shoot_bowl(double u0, double v3, double rmax, double tol, double max_step) {
  if (!(rmax > 1e-3)) throw std::invalid_argument("shoot_bowl: rmax must exceed 1e-3");
  forms::BowlState start = forms::bowl_series_start(u0, 1e-3, v3);
  OdeSystem sys;
  sys.dim = 2;
  sys.rhs = [v3](double r, std::span<const double> y, std::span<double> dy) {
    auto f = forms::bowl_ode_field({r, y[0], y[1]}, v3);
    dy[0] = f[0];
    dy[1] = f[1];
  };
  double y0[2] = {start.u, start.du};
  return integrate_adaptive(sys, start.r, y0, rmax, tol, max_step);
}

}  // namespace soliton::ode
