#include "soliton/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace soliton::probe {

namespace {

// Polynomial in the monomial basis: value and two derivatives by Horner.
geom::FuncJet poly_jet(std::span<const double> coeffs, double s) {
  double v = 0, d1 = 0, d2 = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    d2 = d2 * s + 2 * d1;
    d1 = d1 * s + v;
    v = v * s + coeffs[i];
  }
  return {s, v, d1, d2};
}

// Natural cubic spline through uniformly spaced knots; the knot values are
// the parameters.  Second derivatives come from the standard tridiagonal
// solve, so the jet is C^2 in s and linear in the parameters.
geom::FuncJet spline_jet(std::span<const double> values, double lo, double hi, double s) {
  const std::size_t n = values.size();
  const double h = (hi - lo) / double(n - 1);
  std::vector<double> m(n, 0.0);  // second derivatives at knots
  if (n > 2) {
    std::vector<double> diag(n - 2, 4.0), rhs(n - 2), upper(n - 2, 1.0);
    for (std::size_t i = 0; i + 2 < n; ++i)
      rhs[i] = 6.0 * (values[i] - 2 * values[i + 1] + values[i + 2]) / (h * h);
    for (std::size_t i = 1; i + 2 < n; ++i) {  // Thomas algorithm
      double w = 1.0 / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i-- > 0;) {
      double acc = rhs[i];
      if (i + 1 < n - 2) acc -= upper[i] * m[i + 2];
      m[i + 1] = acc / diag[i];
    }
  }
  double clamped = std::clamp(s, lo, hi - 1e-12 * (hi - lo));
  std::size_t i = std::min<std::size_t>(std::size_t((clamped - lo) / h), n - 2);
  double a = lo + double(i) * h;
  double t = s - a;
  double A = (h - t) / h, B = t / h;
  double v = A * values[i] + B * values[i + 1] +
             ((A * A * A - A) * m[i] + (B * B * B - B) * m[i + 1]) * h * h / 6.0;
  double d1 = (values[i + 1] - values[i]) / h -
              (3 * A * A - 1) / 6.0 * h * m[i] + (3 * B * B - 1) / 6.0 * h * m[i + 1];
  double d2 = A * m[i] + B * m[i + 1];
  return {s, v, d1, d2};
}

struct Layout {
  int nf = 0, ng = 0;
  int c_index = -1;
  int v_index = -1;  // two spherical angles
  int dim = 0;
};

Layout make_layout(const AnsatzSpec& spec) {
  Layout l;
  int per = spec.family == AnsatzFamily::Polynomial ? spec.degree + 1 : spec.degree;
  if (spec.family == AnsatzFamily::CubicSpline && spec.degree < 4)
    throw std::invalid_argument("probe: spline ansatz needs at least 4 knots");
  if (spec.family == AnsatzFamily::Polynomial && spec.degree < 1)
    throw std::invalid_argument("probe: polynomial ansatz needs degree >= 1");
  l.nf = per;
  l.ng = per;
  l.dim = 2 * per;
  if (spec.structure == SurfaceStructure::SpaceTranslation) {
    l.dim += per;  // the h curve
  }
  if (spec.structure == SurfaceStructure::AffineTranslation && spec.affine_c_free) {
    l.c_index = l.dim;
    l.dim += 1;
  }
  if (spec.velocity_free) {
    l.v_index = l.dim;
    l.dim += 2;
  }
  return l;
}

geom::Vector3 sphere_velocity(double phi, double psi) {
  return {std::sin(phi) * std::cos(psi), std::sin(phi) * std::sin(psi), std::cos(phi)};
}

geom::FuncJet curve_jet(const AnsatzSpec& spec, std::span<const double> c,
                        const std::array<double, 2>& dom, double s) {
  return spec.family == AnsatzFamily::Polynomial ? poly_jet(c, s)
                                                 : spline_jet(c, dom[0], dom[1], s);
}

}  // namespace

AnsatzEval eval_ansatz(const AnsatzSpec& spec, std::span<const double> params, double x,
                       double y) {
  Layout l = make_layout(spec);
  if (std::ssize(params) != l.dim) throw std::invalid_argument("probe: parameter size mismatch");
  AnsatzEval out;
  out.f = curve_jet(spec, params.subspan(0, l.nf), spec.xdomain, x);
  out.g = curve_jet(spec, params.subspan(l.nf, l.ng), spec.ydomain, y);
  out.velocity = spec.velocity_free
                     ? sphere_velocity(params[l.v_index], params[l.v_index + 1])
                     : spec.velocity;
  out.affine_c = (l.c_index >= 0) ? params[l.c_index] : spec.affine_c;
  return out;
}

Objective build_objective(const AnsatzSpec& spec, int grid) {
  if (grid < 2) throw std::invalid_argument("probe: grid must be >= 2");
  Layout l = make_layout(spec);

  // one grid pass computing the mean squared normalized residual and, when
  // a slope cap is set, the cap-violation penalty term
  auto sweep = [spec, l, grid](std::span<const double> p) -> std::array<double, 2> {
    std::span<const double> fc = p.subspan(0, l.nf);
    std::span<const double> gc = p.subspan(l.nf, l.ng);
    std::span<const double> hc =
        spec.structure == SurfaceStructure::SpaceTranslation ? p.subspan(2 * l.nf, l.nf)
                                                             : std::span<const double>{};
    geom::Vector3 v = spec.velocity_free
                          ? sphere_velocity(p[l.v_index], p[l.v_index + 1])
                          : spec.velocity;
    double c = (l.c_index >= 0) ? p[l.c_index] : spec.affine_c;
    const double wx = (spec.xdomain[1] - spec.xdomain[0]) / grid;
    const double wy = (spec.ydomain[1] - spec.ydomain[0]) / grid;
    const double cap2 = spec.slope_cap > 0 ? spec.slope_cap * spec.slope_cap : 0;
    double sum = 0, slope_pen = 0;
    for (int i = 0; i < grid; ++i) {
      double x = spec.xdomain[0] + (i + 0.5) * wx;
      geom::FuncJet fj = curve_jet(spec, fc, spec.xdomain, x);
      geom::FuncJet hj;
      if (!hc.empty()) hj = curve_jet(spec, hc, spec.xdomain, x);
      for (int j = 0; j < grid; ++j) {
        double y = spec.ydomain[0] + (j + 0.5) * wy;
        geom::FuncJet gj = curve_jet(spec, gc, spec.ydomain, y);
        double r = 0;
        geom::Jet2 jet;
        switch (spec.structure) {
          case SurfaceStructure::Translation:
            r = geom::residual_translation(fj, gj, v, geom::ResidualForm::Normalized);
            jet = geom::translation_jet(fj, gj);
            break;
          case SurfaceStructure::AffineTranslation:
            r = geom::residual_affine_translation(fj, gj, c, v, geom::ResidualForm::Normalized);
            jet.ux = fj.d1 + c * gj.d1;
            jet.uy = gj.d1;
            break;
          case SurfaceStructure::SpaceTranslation:
            r = geom::residual_space_translation(fj, hj, gj, v, geom::ResidualForm::Normalized);
            jet.ux = fj.d1 * gj.d1 - hj.d1;  // first normal component scale
            jet.uy = gj.d1;
            break;
          case SurfaceStructure::Homothetical:
            r = geom::residual_homothetical(fj, gj, v, geom::ResidualForm::Normalized);
            jet = geom::homothetical_jet(fj, gj);
            break;
        }
        sum += r * r;
        if (cap2 > 0) {
          double excess = jet.ux * jet.ux + jet.uy * jet.uy - cap2;
          if (excess > 0) slope_pen += excess * excess;
        }
      }
    }
    double n = double(grid) * grid;
    return {sum / n, slope_pen / n};
  };

  auto residual_ms = [sweep](std::span<const double> p) -> double { return sweep(p)[0]; };

  auto penalty = [spec, l](std::span<const double> p) -> double {
    double pen = 0;
    if (spec.curvature_floor > 0) {
      double xc = 0.5 * (spec.xdomain[0] + spec.xdomain[1]);
      double yc = 0.5 * (spec.ydomain[0] + spec.ydomain[1]);
      geom::FuncJet fj = curve_jet(spec, p.subspan(0, l.nf), spec.xdomain, xc);
      geom::FuncJet gj = curve_jet(spec, p.subspan(l.nf, l.ng), spec.ydomain, yc);
      double df = std::max(0.0, spec.curvature_floor - std::fabs(fj.d2));
      double dg = std::max(0.0, spec.curvature_floor - std::fabs(gj.d2));
      pen += df * df + dg * dg;
    }
    if (spec.coefficient_bound > 0) {
      int ncurve = l.nf + l.ng +
                   (spec.structure == SurfaceStructure::SpaceTranslation ? l.nf : 0);
      for (int i = 0; i < ncurve; ++i) {
        double excess = std::fabs(p[i]) - spec.coefficient_bound;
        if (excess > 0) pen += excess * excess;
      }
    }
    return spec.penalty_weight * pen;
  };

  Objective obj;
  obj.dim = l.dim;
  obj.residual_only = residual_ms;
  obj.total = [sweep, penalty, spec](std::span<const double> p) {
    auto [ms, slope_pen] = sweep(p);
    return ms + penalty(p) + spec.penalty_weight * slope_pen;
  };
  obj.layout = "[f coefficients (" + std::to_string(l.nf) + "), g coefficients (" +
               std::to_string(l.ng) + ")" +
               (spec.structure == SurfaceStructure::SpaceTranslation ? ", h coefficients" : "") +
               (l.c_index >= 0 ? ", c" : "") + (l.v_index >= 0 ? ", v angles (phi, psi)" : "") +
               "]";
  return obj;
}

ProbeResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> init, const NmConfig& cfg) {
  const int n = int(init.size());
  if (n < 1) throw std::invalid_argument("nelder_mead: empty parameter vector");
  for (double v : init)
    if (!std::isfinite(v)) throw std::invalid_argument("nelder_mead: non-finite start");

  ProbeResult res;
  std::vector<std::vector<double>> x(n + 1, std::vector<double>(init.begin(), init.end()));
  std::vector<double> fx(n + 1);
  for (int i = 1; i <= n; ++i) x[i][i - 1] += cfg.step;
  for (int i = 0; i <= n; ++i) fx[i] = f(x[i]);
  res.evaluations = n + 1;

  std::vector<int> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  long iter = 0;
  auto record = [&](double best) { res.trace.push_back({0, iter, best}); };

  while (res.evaluations < cfg.max_evals) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    int best = order[0], worst = order[n], second = order[n - 1];
    record(fx[best]);

    double diameter = 0;
    for (int i = 0; i <= n; ++i)
      for (int d = 0; d < n; ++d)
        diameter = std::max(diameter, std::fabs(x[i][d] - x[best][d]));
    if (diameter < cfg.diameter_tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < n; ++d) centroid[d] += x[i][d];
    }
    for (int d = 0; d < n; ++d) centroid[d] /= n;

    for (int d = 0; d < n; ++d) xr[d] = centroid[d] + (centroid[d] - x[worst][d]);
    double fr = f(xr);
    ++res.evaluations;

    if (fr < fx[best]) {
      for (int d = 0; d < n; ++d) xe[d] = centroid[d] + 2.0 * (xr[d] - centroid[d]);
      double fe = f(xe);
      ++res.evaluations;
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
    } else if (fr < fx[second]) {
      x[worst] = xr;
      fx[worst] = fr;
    } else {
      bool outside = fr < fx[worst];
      if (outside) {
        for (int d = 0; d < n; ++d) xc[d] = centroid[d] + 0.5 * (xr[d] - centroid[d]);
      } else {
        for (int d = 0; d < n; ++d) xc[d] = centroid[d] + 0.5 * (x[worst][d] - centroid[d]);
      }
      double fc = f(xc);
      ++res.evaluations;
      if (fc < (outside ? fr : fx[worst])) {
        x[worst] = xc;
        fx[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {  // shrink toward the best vertex
          if (i == best) continue;
          for (int d = 0; d < n; ++d) x[i][d] = x[best][d] + 0.5 * (x[i][d] - x[best][d]);
          fx[i] = f(x[i]);
        }
        res.evaluations += n;
      }
    }
    ++iter;
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fx[i] < fx[best]) best = i;
  res.best_params = x[best];
  res.best_value = fx[best];
  res.best_residual_value = fx[best];
  res.restart_minima = {fx[best]};
  record(fx[best]);
  return res;
}

ProbeResult probe_run(const AnsatzSpec& spec, int restarts, std::uint64_t seed,
                      const NmConfig& cfg, int grid) {
  if (restarts < 1) throw std::invalid_argument("probe_run: restarts must be >= 1");
  Objective obj = build_objective(spec, grid);

  ProbeResult best;
  best.best_value = std::numeric_limits<double>::infinity();
  best.best_residual_value = std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    // one deterministic stream per restart index
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (std::uint64_t(r) + 1));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> init(obj.dim);
    for (double& v : init) v = unit(rng);
    ProbeResult one = nelder_mead(obj.total, init, cfg);
    for (auto& row : one.trace) {
      row.restart = r;
      best.trace.push_back(row);
    }
    best.evaluations += one.evaluations;
    best.restart_minima.push_back(one.best_value);
    if (one.best_value < best.best_value) {
      best.best_value = one.best_value;
      best.best_params = one.best_params;
      best.best_restart = r;
    }
  }
  best.best_residual_value = obj.residual_only(best.best_params);
  return best;
}

}  // namespace soliton::probe
