#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "soliton/geometry.hpp"

namespace soliton::probe {

enum class AnsatzFamily { Polynomial, CubicSpline };
enum class SurfaceStructure { Translation, AffineTranslation, SpaceTranslation, Homothetical };

/// Hypothesis class for a least-squares residual probe.  `degree` is the
/// polynomial degree or the spline knot count (>= 4).  When the velocity is
/// free it is constrained to the unit sphere through two angles, which
/// quotients out the scaling freedom of the translator equation.
struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::Polynomial;
  int degree = 4;
  std::array<double, 2> xdomain{-0.5, 0.5};
  std::array<double, 2> ydomain{-0.5, 0.5};
  SurfaceStructure structure = SurfaceStructure::Translation;
  bool velocity_free = false;
  geom::Vector3 velocity{0, 0, 1};
  bool affine_c_free = false;
  double affine_c = 0;
  /// When positive, a quadratic penalty pushes |f''| and |g''| at the domain
  /// centers above this floor (tool default for nonexistence probes; not a
  /// certified bound).
  double curvature_floor = 0;
  /// When positive, penalizes curve coefficients beyond this magnitude.
  /// Product and sum parametrizations carry exact scale redundancies
  /// ((c f)(g/c) is the same surface), and unbounded coefficients let the
  /// search escape to steep surfaces whose normalized residual vanishes for
  /// scaling reasons rather than geometric ones; the bound pins the
  /// explored family to well-scaled representatives.
  double coefficient_bound = 0;
  /// When positive, penalizes grid points where |grad u| exceeds this cap,
  /// keeping the explored family uniformly graph-like.
  double slope_cap = 0;
  double penalty_weight = 1e4;
};

/// Mean squared normalized residual over a tensor midpoint grid.  `total`
/// includes the curvature-floor penalty, `residual_only` never does:
/// thresholds on probe results are checked against the penalty-free value.
struct Objective {
  int dim = 0;
  std::function<double(std::span<const double>)> total;
  std::function<double(std::span<const double>)> residual_only;
  std::string layout;  // human-readable parameter layout
};

Objective build_objective(const AnsatzSpec& spec, int grid = 64);

struct NmConfig {
  long max_evals = 40000;
  double step = 0.25;          // initial simplex edge
  double diameter_tol = 1e-12; // stop when the simplex shrinks below this
};

struct TraceRow {
  int restart;
  long iteration;
  double best;
};

struct ProbeResult {
  std::vector<double> best_params;
  double best_value = 0;           // objective at the optimum (with penalty)
  double best_residual_value = 0;  // penalty-free value at the optimum
  long evaluations = 0;
  int best_restart = 0;
  std::vector<double> restart_minima;
  std::vector<TraceRow> trace;  // best-so-far per iteration, per restart
};

/// Standard simplex search: reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5.  Deterministic: identical input produces an identical trace.
ProbeResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> init, const NmConfig& cfg = {});

/// Best of `restarts` seeded random initializations of the spec objective.
/// (spec, restarts, seed) fully determines the result.
ProbeResult probe_run(const AnsatzSpec& spec, int restarts, std::uint64_t seed,
                      const NmConfig& cfg = {}, int grid = 64);

/// Evaluate the ansatz curves described by spec at a parameter vector; used
/// for reporting (e.g. curvature at the domain centers).
struct AnsatzEval {
  geom::FuncJet f, g;
  geom::Vector3 velocity;
  double affine_c;
};
AnsatzEval eval_ansatz(const AnsatzSpec& spec, std::span<const double> params, double x, double y);

}  // namespace soliton::probe
