#pragma once

#include <functional>
#include <span>
#include <vector>

namespace soliton::ode {

/// First-order system y' = f(t, y) with an optional stop predicate checked
/// at accepted samples.
struct OdeSystem {
  int dim = 1;
  std::function<void(double t, std::span<const double> y, std::span<double> dydt)> rhs;
  std::function<bool(double t, std::span<const double> y)> stop;  // may be empty
};

enum class Termination {
  SpanEnd,        // reached t1
  StopPredicate,  // stop() fired at an accepted sample
  StepUnderflow,  // adaptive step fell below 1e-14 * span
  Blowup,         // non-finite state; trajectory ends at the last valid point
};

struct Trajectory {
  std::vector<double> t;               // strictly monotone
  std::vector<std::vector<double>> y;  // y[i] is the state at t[i]
  Termination reason = Termination::SpanEnd;

  std::size_t size() const { return t.size(); }
  const std::vector<double>& back_state() const { return y.back(); }
};

/// Classical fixed-step fourth-order integration from t0 to t1 (h > 0,
/// t1 > t0); every step is recorded.
Trajectory integrate_rk4(const OdeSystem& sys, double t0, std::span<const double> y0, double t1,
                         double h);

/// Dormand-Prince 5(4) embedded pair with per-step error <= tol * (1+|y|)
/// componentwise; accepted steps are recorded.  tol must lie in
/// [1e-14, 1e-3].  max_step == 0 means unlimited.
Trajectory integrate_adaptive(const OdeSystem& sys, double t0, std::span<const double> y0,
                              double t1, double tol, double max_step = 0);

/// Shoot the rotational translator profile from the axis series start at
/// r0 = 1e-3 out to rmax.  State is (u, u').  The step cap keeps samples
/// dense enough that a finite-difference check of the profile equation on
/// the output resolves residuals down to about max_step^2.
Trajectory shoot_bowl(double u0, double v3, double rmax, double tol, double max_step = 1e-3);

}  // namespace soliton::ode
