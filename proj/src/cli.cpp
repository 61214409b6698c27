#include "soliton/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "soliton/closed_forms.hpp"
#include "soliton/expr.hpp"
#include "soliton/geometry.hpp"
#include "soliton/ode.hpp"
#include "soliton/probe.hpp"
#include "soliton/replay.hpp"
#include "soliton/report.hpp"

namespace soliton::cli {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SurfaceConfig {
  std::string kind;
  geom::Metric metric = geom::Metric::Euclidean;
  geom::Vector3 velocity{0, 0, 1};
  std::map<std::string, std::string> functions;
  double affine_c = 0;
  std::array<double, 2> xdomain{-0.5, 0.5};
  std::array<double, 2> ydomain{-0.5, 0.5};
  std::array<double, 2> sdomain{-0.5, 0.5};
  std::optional<geom::Vector3> ruling;
  std::map<std::string, std::string> curve;  // explicit x,y,z components in s
  std::string hash;
};

geom::Vector3 parse_vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be [x,y,z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::array<double, 2> parse_interval(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(what) + " must be [lo,hi]");
  std::array<double, 2> out{j[0].get<double>(), j[1].get<double>()};
  if (!(out[1] > out[0])) throw ConfigError(std::string(what) + " must be nondegenerate");
  return out;
}

SurfaceConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();

  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!j.contains("v") || j["v"] != 1) throw ConfigError("config must declare \"v\": 1");
  if (!j.contains("kind")) throw ConfigError("config must declare \"kind\"");

  SurfaceConfig cfg;
  cfg.hash = report::fnv1a64_hex(bytes);
  cfg.kind = j["kind"].get<std::string>();
  if (j.contains("metric")) {
    std::string m = j["metric"].get<std::string>();
    if (m == "euclidean")
      cfg.metric = geom::Metric::Euclidean;
    else if (m == "lorentzian")
      cfg.metric = geom::Metric::Lorentzian;
    else
      throw ConfigError("metric must be \"euclidean\" or \"lorentzian\"");
  }
  if (j.contains("velocity")) cfg.velocity = parse_vec3(j["velocity"], "velocity");
  if (j.contains("functions")) {
    for (auto& [k, v] : j["functions"].items()) cfg.functions[k] = v.get<std::string>();
  }
  if (j.contains("c")) cfg.affine_c = j["c"].get<double>();
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (d.contains("x")) cfg.xdomain = parse_interval(d["x"], "domain.x");
    if (d.contains("y")) cfg.ydomain = parse_interval(d["y"], "domain.y");
    if (d.contains("s")) cfg.sdomain = parse_interval(d["s"], "domain.s");
  }
  if (j.contains("ruling")) cfg.ruling = parse_vec3(j["ruling"], "ruling");
  if (j.contains("curve")) {
    for (auto& [k, v] : j["curve"].items()) cfg.curve[k] = v.get<std::string>();
  }
  return cfg;
}

const std::string& require_fn(const SurfaceConfig& cfg, const std::string& name) {
  auto it = cfg.functions.find(name);
  if (it == cfg.functions.end())
    throw ConfigError("kind '" + cfg.kind + "' requires functions." + name);
  return it->second;
}

geom::FuncJet to_funcjet(const expr::Function1& f, double s) {
  auto j = f.jet(s);
  return {s, j.value, j.d1, j.d2};
}

struct ResidualSample {
  std::vector<double> row;  // CSV row
  double residual;
};

struct ResidualRun {
  std::vector<std::string> header;
  std::vector<ResidualSample> samples;
  double max_abs = 0;
  double mean_square = 0;
};

// Sample one generating curve of a translation chart along its own axis,
// with the other curve held at its domain center: rows (s, u, u', residual).
ResidualRun run_profile(const SurfaceConfig& cfg, int grid, const geom::Vector3& v,
                        const std::string& axis) {
  if (cfg.kind != "translation")
    throw ConfigError("--profile-of requires a translation config");
  expr::Function1 f = expr::Function1::parse(require_fn(cfg, "f"), "x");
  expr::Function1 g = expr::Function1::parse(require_fn(cfg, "g"), "y");
  bool along_x = axis == "x";
  if (!along_x && axis != "y") throw ConfigError("--profile-of must be x or y");
  ResidualRun out;
  out.header = {"s", "u", "du", "residual"};
  auto dom = along_x ? cfg.xdomain : cfg.ydomain;
  double other = along_x ? 0.5 * (cfg.ydomain[0] + cfg.ydomain[1])
                         : 0.5 * (cfg.xdomain[0] + cfg.xdomain[1]);
  for (int i = 0; i < grid; ++i) {
    double s = dom[0] + (i + 0.5) * (dom[1] - dom[0]) / grid;
    geom::FuncJet fj = to_funcjet(f, along_x ? s : other);
    geom::FuncJet gj = to_funcjet(g, along_x ? other : s);
    double r = geom::residual_translation(fj, gj, v, geom::ResidualForm::Normalized);
    const geom::FuncJet& c = along_x ? fj : gj;
    double res = r;
    out.max_abs = std::max(out.max_abs, std::fabs(res));
    out.mean_square += res * res;
    out.samples.push_back({{s, c.value, c.d1, res}, res});
  }
  out.mean_square /= double(out.samples.size());
  return out;
}

ResidualRun run_residual(const SurfaceConfig& cfg, int grid, const geom::Vector3& v) {
  ResidualRun out;
  auto push = [&](std::vector<double> row, double r) {
    out.max_abs = std::max(out.max_abs, std::fabs(r));
    out.mean_square += r * r;
    row.push_back(r);
    out.samples.push_back({std::move(row), r});
  };

  auto grid_xy = [&](auto&& residual_at) {
    out.header = {"x", "y", "residual"};
    for (int i = 0; i < grid; ++i) {
      double x = cfg.xdomain[0] + (i + 0.5) * (cfg.xdomain[1] - cfg.xdomain[0]) / grid;
      for (int k = 0; k < grid; ++k) {
        double y = cfg.ydomain[0] + (k + 0.5) * (cfg.ydomain[1] - cfg.ydomain[0]) / grid;
        push({x, y}, residual_at(x, y));
      }
    }
  };

  if (cfg.kind == "graph") {
    expr::Surface2 u = expr::Surface2::parse(require_fn(cfg, "u"), "x", "y");
    grid_xy([&](double x, double y) {
      auto uj = u.jet(x, y);
      geom::Jet2 jet{x, y, uj.value, uj.dx, uj.dy, uj.dxx, uj.dxy, uj.dyy};
      return geom::residual_graph(jet, v, geom::ResidualForm::Normalized);
    });
  } else if (cfg.kind == "translation") {
    expr::Function1 f = expr::Function1::parse(require_fn(cfg, "f"), "x");
    expr::Function1 g = expr::Function1::parse(require_fn(cfg, "g"), "y");
    grid_xy([&](double x, double y) {
      return geom::residual_translation(to_funcjet(f, x), to_funcjet(g, y), v,
                                        geom::ResidualForm::Normalized);
    });
  } else if (cfg.kind == "affine-translation") {
    expr::Function1 f = expr::Function1::parse(require_fn(cfg, "f"), "x");
    expr::Function1 g = expr::Function1::parse(require_fn(cfg, "g"), "y");
    grid_xy([&](double x, double y) {
      return geom::residual_affine_translation(to_funcjet(f, x), to_funcjet(g, y), cfg.affine_c,
                                               v, geom::ResidualForm::Normalized);
    });
  } else if (cfg.kind == "space-translation") {
    expr::Function1 f = expr::Function1::parse(require_fn(cfg, "f"), "x");
    expr::Function1 h = expr::Function1::parse(require_fn(cfg, "h"), "x");
    expr::Function1 g = expr::Function1::parse(require_fn(cfg, "g"), "y");
    grid_xy([&](double x, double y) {
      return geom::residual_space_translation(to_funcjet(f, x), to_funcjet(h, x),
                                              to_funcjet(g, y), v,
                                              geom::ResidualForm::Normalized);
    });
  } else if (cfg.kind == "homothetical") {
    expr::Function1 f = expr::Function1::parse(require_fn(cfg, "f"), "x");
    expr::Function1 g = expr::Function1::parse(require_fn(cfg, "g"), "y");
    grid_xy([&](double x, double y) {
      return geom::residual_homothetical(to_funcjet(f, x), to_funcjet(g, y), v,
                                         geom::ResidualForm::Normalized);
    });
  } else if (cfg.kind == "lorentz-cylinder") {
    if (!cfg.ruling) throw ConfigError("lorentz-cylinder requires \"ruling\"");
    geom::Vector3 w = *cfg.ruling;
    out.header = {"s", "u", "du", "residual"};

    std::optional<expr::Function1> cx, cy, cz, up;
    if (!cfg.curve.empty()) {
      for (const char* comp : {"x", "y", "z"})
        if (!cfg.curve.count(comp))
          throw ConfigError(std::string("curve needs component ") + comp);
      cx = expr::Function1::parse(cfg.curve.at("x"), "s");
      cy = expr::Function1::parse(cfg.curve.at("y"), "s");
      cz = expr::Function1::parse(cfg.curve.at("z"), "s");
    } else {
      up = expr::Function1::parse(require_fn(cfg, "u"), "s");
    }

    auto sample_curve = [&](double s) -> std::pair<geom::CurveJet, geom::FuncJet> {
      if (cx) {
        auto jx = cx->jet(s), jy = cy->jet(s), jz = cz->jet(s);
        geom::CurveJet c{s,
                         {jx.value, jy.value, jz.value},
                         {jx.d1, jy.d1, jz.d1},
                         {jx.d2, jy.d2, jz.d2}};
        return {c, {s, jz.value, jz.d1, jz.d2}};
      }
      auto uj = up->jet(s);
      geom::FuncJet fj{s, uj.value, uj.d1, uj.d2};
      geom::CurveJet c;
      c.s = s;
      if (w.x == 1 && w.y == 0 && w.z == 0) {
        c.value = {0, s, uj.value};
        c.d1 = {0, 1, uj.d1};
        c.d2 = {0, 0, uj.d2};
      } else if (w.x == 0 && w.y == 0 && w.z == 1) {
        c.value = {s, uj.value, 0};
        c.d1 = {1, uj.d1, 0};
        c.d2 = {0, uj.d2, 0};
      } else if (w.x == 1 && w.y == 0 && w.z == 1) {
        c.value = {uj.value, s, -uj.value};
        c.d1 = {uj.d1, 1, -uj.d1};
        c.d2 = {uj.d2, 0, -uj.d2};
      } else {
        throw ConfigError(
            "lorentz-cylinder with a non-canonical ruling needs an explicit \"curve\"");
      }
      return {c, fj};
    };
    bool lightlike =
        geom::causal_character(w) == geom::CausalCharacter::Lightlike;
    for (int i = 0; i < grid; ++i) {
      double s = cfg.sdomain[0] + (i + 0.5) * (cfg.sdomain[1] - cfg.sdomain[0]) / grid;
      auto [c, fj] = sample_curve(s);
      double r = lightlike ? geom::lightlike_ruling_condition(c, w, v)
                           : geom::residual_lorentz_cylinder(c, w, v);
      push({s, fj.value, fj.d1}, r);
    }
  } else {
    throw ConfigError("unknown kind '" + cfg.kind + "'");
  }
  out.mean_square /= double(out.samples.size());
  return out;
}

void write_run_outputs(const ResidualRun& run, int grid, const std::string& csv,
                       const std::string& svg) {
  if (!csv.empty()) {
    std::vector<std::vector<double>> rows;
    rows.reserve(run.samples.size());
    for (const auto& s : run.samples) rows.push_back(s.row);
    report::write_csv(csv, run.header, rows);
  }
  if (!svg.empty()) {
    if (run.header.front() == "s") {
      // 1-D profile: plot u over s
      std::vector<double> xs, ys;
      for (const auto& s : run.samples) {
        xs.push_back(s.row[0]);
        ys.push_back(s.row[1]);
      }
      report::write_svg_polyline(svg, xs, ys);
    } else {
      std::vector<double> values;
      for (const auto& s : run.samples) values.push_back(s.residual);
      report::write_svg_heatmap(svg, grid, grid, values);
    }
  }
}

json run_report_json(const std::string& command, const std::string& hash, const json& summary,
                     const std::string& verdict, double wall_s) {
  return json{{"command", command},
              {"config_hash", hash},
              {"summary", summary},
              {"verdict", verdict},
              {"wall_time_s", wall_s}};
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

json replay_to_json(const std::vector<sym::ReplayReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) {
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name},
                        {"expected", c.expected},
                        {"computed", c.computed},
                        {"pass", c.pass},
                        {"normalization", c.normalization}});
    out.push_back({{"title", r.title}, {"pass", r.pass}, {"checks", checks}});
  }
  return out;
}

bool parse_velocity_flag(const std::string& text, geom::Vector3& v) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> vals;
  while (std::getline(ss, part, ',')) vals.push_back(std::stod(part));
  if (vals.size() != 3) return false;
  v = {vals[0], vals[1], vals[2]};
  return true;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"translating-soliton toolkit: residual checks, closed forms, ODE shooting, "
               "exact classification replays, and least-squares probes"};
  app.require_subcommand(1);

  auto t_start = std::chrono::steady_clock::now();
  auto wall = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  // residual ---------------------------------------------------------------
  auto* cmd_res = app.add_subcommand("residual", "evaluate a surface residual over a grid");
  std::string res_config, res_velocity, res_csv, res_svg, res_json;
  int res_grid = 200;
  double res_tol = 1e-10;
  cmd_res->add_option("--config", res_config, "surface config (JSON)")->required();
  cmd_res->add_option("--grid", res_grid, "grid resolution");
  cmd_res->add_option("--velocity", res_velocity, "override velocity as v1,v2,v3");
  cmd_res->add_option("--tol", res_tol, "pass tolerance on max |residual|");
  cmd_res->add_option("--csv", res_csv, "write per-point CSV");
  cmd_res->add_option("--svg", res_svg, "write polyline SVG of the first two columns");
  cmd_res->add_option("--json", res_json, "write run report JSON");

  // integrate ---------------------------------------------------------------
  auto* cmd_int = app.add_subcommand("integrate", "integrate a profile ODE and cross-check");
  cmd_int->require_subcommand(1);

  auto* int_grim = cmd_int->add_subcommand("grim-reaper", "u'' = k (1+u'^2) from s=0");
  double gr_k = 2, gr_to = 0.5, gr_h = 1e-4, gr_tol = 1e-10, gr_check = 1e-8;
  bool gr_adaptive = false;
  std::string gr_csv;
  int_grim->add_option("--k", gr_k, "profile speed");
  int_grim->add_option("--to", gr_to, "endpoint");
  int_grim->add_option("--step", gr_h, "fixed RK4 step");
  int_grim->add_flag("--adaptive", gr_adaptive, "use the embedded pair");
  int_grim->add_option("--tol", gr_tol, "adaptive tolerance");
  int_grim->add_option("--check-tol", gr_check, "endpoint agreement tolerance");
  int_grim->add_option("--csv", gr_csv, "write trajectory CSV");

  auto* int_lor = cmd_int->add_subcommand("lorentz", "Lorentzian profile ODEs");
  std::string lor_case = "spacelike-cosh", lor_csv;
  double lor_from = 0, lor_to = 1, lor_tol = 1e-10, lor_check = 1e-8;
  int_lor->add_option("--case", lor_case, "spacelike-cosh | spacelike-sinh | timelike-cos");
  int_lor->add_option("--from", lor_from, "start parameter");
  int_lor->add_option("--to", lor_to, "end parameter");
  int_lor->add_option("--tol", lor_tol, "adaptive tolerance");
  int_lor->add_option("--check-tol", lor_check, "endpoint agreement tolerance");
  int_lor->add_option("--csv", lor_csv, "write trajectory CSV");

  auto* int_bowl = cmd_int->add_subcommand("bowl", "rotational profile shooting from the axis");
  double bowl_u0 = 0, bowl_v3 = 1, bowl_rmax = 2, bowl_tol = 1e-7, bowl_step = 1e-3;
  std::string bowl_csv, bowl_svg;
  int_bowl->add_option("--u0", bowl_u0, "height at the axis");
  int_bowl->add_option("--v3", bowl_v3, "vertical speed");
  int_bowl->add_option("--rmax", bowl_rmax, "outer radius");
  int_bowl->add_option("--tol", bowl_tol, "adaptive tolerance");
  int_bowl->add_option("--max-step", bowl_step, "step cap");
  int_bowl->add_option("--csv", bowl_csv, "write (r,u,u') CSV");
  int_bowl->add_option("--svg", bowl_svg, "write profile SVG");

  // verify -------------------------------------------------------------------
  auto* cmd_ver = app.add_subcommand("verify", "replay the classification computations exactly");
  int ver_theorem = 0;
  bool ver_all = false;
  std::string ver_subcase, ver_transcript, ver_json;
  cmd_ver->add_option("--theorem", ver_theorem, "1, 2 or 3");
  cmd_ver->add_flag("--all", ver_all, "run every replay");
  cmd_ver->add_option("--subcase", ver_subcase,
                      "theorem 2: 1a 1b 2a 2b 2c 2d; theorem 3: prelim-linear "
                      "prelim-exponential case1 case2");
  cmd_ver->add_option("--transcript", ver_transcript, "write the text transcript");
  cmd_ver->add_option("--json", ver_json, "write machine-readable report");

  // probe ---------------------------------------------------------------------
  auto* cmd_probe = app.add_subcommand("probe", "least-squares residual minimization");
  std::string pr_structure = "translation", pr_family = "polynomial", pr_velocity,
              pr_json_path, pr_trace;
  int pr_degree = 6, pr_restarts = 1, pr_grid = 64;
  long pr_maxevals = 40000;
  bool pr_vfree = false;
  double pr_floor = 0, pr_bound = 0, pr_slope = 0;
  std::uint64_t pr_seed = 1;
  bool pr_seed_given = false;
  std::string pr_xdom = "-0.5,0.5", pr_ydom = "-0.5,0.5";
  cmd_probe->add_option("--structure", pr_structure,
                        "translation | affine-translation | space-translation | homothetical");
  cmd_probe->add_option("--family", pr_family, "polynomial | cubic-spline");
  cmd_probe->add_option("--degree", pr_degree, "polynomial degree or spline knot count");
  cmd_probe->add_option("--xdomain", pr_xdom, "x interval lo,hi");
  cmd_probe->add_option("--ydomain", pr_ydom, "y interval lo,hi");
  cmd_probe->add_option("--velocity", pr_velocity, "fixed velocity v1,v2,v3");
  cmd_probe->add_flag("--velocity-free", pr_vfree, "optimize the velocity on the unit sphere");
  cmd_probe->add_option("--floor", pr_floor, "curvature floor penalty at the domain centers");
  cmd_probe->add_option("--bound", pr_bound, "coefficient bound penalty (0 = off)");
  cmd_probe->add_option("--slope-cap", pr_slope, "gradient cap penalty (0 = off)");
  cmd_probe->add_option("--restarts", pr_restarts, "seeded restarts");
  cmd_probe->add_option("--seed", pr_seed, "RNG seed (SOLITON_SEED overrides the default)");
  cmd_probe->add_option("--max-evals", pr_maxevals, "objective evaluation budget per restart");
  cmd_probe->add_option("--grid", pr_grid, "quadrature grid resolution");
  cmd_probe->add_option("--json", pr_json_path, "write probe result JSON");
  cmd_probe->add_option("--trace", pr_trace, "write convergence trace CSV");

  // export ---------------------------------------------------------------------
  auto* cmd_exp = app.add_subcommand("export", "sample a configured surface to CSV/SVG");
  std::string exp_config, exp_csv, exp_svg, exp_velocity, exp_profile;
  int exp_grid = 1000;
  cmd_exp->add_option("--config", exp_config, "surface config (JSON)")->required();
  cmd_exp->add_option("--grid", exp_grid, "sample count");
  cmd_exp->add_option("--velocity", exp_velocity, "override velocity");
  cmd_exp->add_option("--profile-of", exp_profile,
                      "sample one generating curve of a translation chart (x or y)");
  cmd_exp->add_option("--csv", exp_csv, "write CSV");
  cmd_exp->add_option("--svg", exp_svg, "write SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_res || *cmd_exp) {
      bool exporting = bool(*cmd_exp);
      std::string cfg_path = exporting ? exp_config : res_config;
      SurfaceConfig cfg = load_config(cfg_path);
      geom::Vector3 v = cfg.velocity;
      std::string vflag = exporting ? exp_velocity : res_velocity;
      if (!vflag.empty() && !parse_velocity_flag(vflag, v))
        throw ConfigError("--velocity must be v1,v2,v3");
      int grid = exporting ? exp_grid : res_grid;

      ResidualRun run;
      try {
        run = (exporting && !exp_profile.empty()) ? run_profile(cfg, grid, v, exp_profile)
                                                  : run_residual(cfg, grid, v);
      } catch (const expr::ParseError& e) {
        throw ConfigError(std::string("expression error: ") + e.what());
      }
      write_run_outputs(run, grid, exporting ? exp_csv : res_csv, exporting ? exp_svg : res_svg);

      bool pass = run.max_abs <= res_tol;
      std::cout << "kind " << cfg.kind << ", samples " << run.samples.size() << ", max|residual| "
                << report::format_double(run.max_abs) << ", mean square "
                << report::format_double(run.mean_square) << "\n";
      if (!res_json.empty()) {
        json summary{{"samples", run.samples.size()},
                     {"max_abs_residual", run.max_abs},
                     {"mean_square_residual", run.mean_square},
                     {"tolerance", res_tol}};
        report::write_text_file(
            res_json, run_report_json(join_args(argc, argv), cfg.hash, summary,
                                      exporting ? "exported" : (pass ? "pass" : "fail"), wall())
                          .dump(2) +
                          "\n");
      }
      if (exporting) return 0;
      std::cout << (pass ? "PASS" : "FAIL") << " (tolerance "
                << report::format_double(res_tol) << ")\n";
      return pass ? 0 : 1;
    }

    if (*cmd_int) {
      if (*int_grim) {
        ode::OdeSystem sys;
        sys.dim = 2;
        double k = gr_k;
        sys.rhs = [k](double, std::span<const double> y, std::span<double> dy) {
          dy[0] = y[1];
          dy[1] = k * (1 + y[1] * y[1]);
        };
        sys.stop = [](double, std::span<const double> y) { return std::fabs(y[1]) > 1e6; };
        double y0[2] = {0, 0};
        ode::Trajectory traj = gr_adaptive ? ode::integrate_adaptive(sys, 0, y0, gr_to, gr_tol)
                                           : ode::integrate_rk4(sys, 0, y0, gr_to, gr_h);
        double expected = -std::log(std::cos(gr_k * gr_to)) / gr_k;
        double got = traj.back_state()[0];
        double err = std::fabs(got - expected);
        std::cout << "u(" << gr_to << ") = " << report::format_double(got) << ", closed form "
                  << report::format_double(expected) << ", error "
                  << report::format_double(err) << "\n";
        if (!gr_csv.empty()) {
          std::vector<std::vector<double>> rows;
          for (std::size_t i = 0; i < traj.size(); ++i)
            rows.push_back({traj.t[i], traj.y[i][0], traj.y[i][1]});
          report::write_csv(gr_csv, {"s", "u", "du"}, rows);
        }
        return err <= gr_check ? 0 : 1;
      }
      if (*int_lor) {
        forms::LorentzProfileCase kind;
        if (lor_case == "spacelike-cosh")
          kind = forms::LorentzProfileCase::SpacelikeCosh;
        else if (lor_case == "spacelike-sinh")
          kind = forms::LorentzProfileCase::SpacelikeSinh;
        else if (lor_case == "timelike-cos")
          kind = forms::LorentzProfileCase::TimelikeCos;
        else
          throw ConfigError("unknown lorentz case '" + lor_case + "'");
        forms::LorentzProfileParams params{kind, 0, 0};
        geom::Vector3 v = forms::lorentz_profile_velocity(kind);
        geom::FuncJet start = forms::lorentz_profile_jet(params, lor_from);
        ode::OdeSystem sys;
        sys.dim = 2;
        sys.rhs = [kind, v](double, std::span<const double> y, std::span<double> dy) {
          dy[0] = y[1];
          // residual = u'' - rhs(u'), so the field is -residual at u'' = 0
          geom::FuncJet at{0, y[0], y[1], 0};
          dy[1] = -forms::lorentz_profile_ode_residual(at, kind, v);
        };
        sys.stop = [](double, std::span<const double> y) { return std::fabs(y[1]) > 1e6; };
        double y0[2] = {start.value, start.d1};
        ode::Trajectory traj = ode::integrate_adaptive(sys, lor_from, y0, lor_to, lor_tol);
        geom::FuncJet end = forms::lorentz_profile_jet(params, lor_to);
        double err = std::fabs(traj.back_state()[0] - end.value);
        std::cout << lor_case << ": u(" << lor_to << ") = "
                  << report::format_double(traj.back_state()[0]) << ", closed form "
                  << report::format_double(end.value) << ", error "
                  << report::format_double(err) << "\n";
        if (!lor_csv.empty()) {
          std::vector<std::vector<double>> rows;
          for (std::size_t i = 0; i < traj.size(); ++i)
            rows.push_back({traj.t[i], traj.y[i][0], traj.y[i][1]});
          report::write_csv(lor_csv, {"s", "u", "du"}, rows);
        }
        return err <= lor_check ? 0 : 1;
      }
      if (*int_bowl) {
        ode::Trajectory traj = ode::shoot_bowl(bowl_u0, bowl_v3, bowl_rmax, bowl_tol, bowl_step);
        std::cout << "bowl profile: " << traj.size() << " samples to r = " << bowl_rmax
                  << ", u(rmax) = " << report::format_double(traj.back_state()[0]) << "\n";
        if (!bowl_csv.empty()) {
          std::vector<std::vector<double>> rows;
          for (std::size_t i = 0; i < traj.size(); ++i)
            rows.push_back({traj.t[i], traj.y[i][0], traj.y[i][1]});
          report::write_csv(bowl_csv, {"r", "u", "du"}, rows);
        }
        if (!bowl_svg.empty()) {
          std::vector<double> xs(traj.t), ys;
          for (std::size_t i = 0; i < traj.size(); ++i) ys.push_back(traj.y[i][0]);
          report::write_svg_polyline(bowl_svg, xs, ys);
        }
        return 0;
      }
    }

    if (*cmd_ver) {
      std::vector<sym::ReplayReport> reports;
      if (ver_all || ver_theorem == 1) reports.push_back(sym::replay_theorem1());
      if (ver_all || ver_theorem == 2) {
        if (!ver_all && !ver_subcase.empty()) {
          std::map<std::string, sym::T2Subcase> names{
              {"1a", sym::T2Subcase::S1a}, {"1b", sym::T2Subcase::S1b},
              {"2a", sym::T2Subcase::S2a}, {"2b", sym::T2Subcase::S2b},
              {"2c", sym::T2Subcase::S2c}, {"2d", sym::T2Subcase::S2d}};
          auto it = names.find(ver_subcase);
          if (it == names.end()) throw ConfigError("unknown theorem-2 subcase " + ver_subcase);
          reports.push_back(sym::replay_theorem2(it->second));
        } else {
          reports.push_back(sym::replay_all_theorem2());
        }
      }
      if (ver_all || ver_theorem == 3) {
        std::map<std::string, sym::T3Case> names{
            {"prelim-linear", sym::T3Case::PrelimLinear},
            {"prelim-exponential", sym::T3Case::PrelimExponential},
            {"case1", sym::T3Case::Case1},
            {"case2", sym::T3Case::Case2}};
        if (!ver_all && !ver_subcase.empty()) {
          auto it = names.find(ver_subcase);
          if (it == names.end()) throw ConfigError("unknown theorem-3 case " + ver_subcase);
          reports.push_back(sym::replay_theorem3(it->second));
        } else {
          for (auto& [_, c] : names) reports.push_back(sym::replay_theorem3(c));
        }
      }
      if (reports.empty()) throw ConfigError("verify needs --all or --theorem 1|2|3");

      std::string text = sym::transcript(reports);
      std::cout << text;
      if (!ver_transcript.empty()) report::write_text_file(ver_transcript, text);
      bool pass = true;
      for (const auto& r : reports) pass = pass && r.pass;
      if (!ver_json.empty()) {
        json j{{"command", join_args(argc, argv)},
               {"pass", pass},
               {"reports", replay_to_json(reports)},
               {"wall_time_s", wall()}};
        report::write_text_file(ver_json, j.dump(2) + "\n");
      }
      return pass ? 0 : 1;
    }

    if (*cmd_probe) {
      probe::AnsatzSpec spec;
      if (pr_structure == "translation")
        spec.structure = probe::SurfaceStructure::Translation;
      else if (pr_structure == "affine-translation")
        spec.structure = probe::SurfaceStructure::AffineTranslation;
      else if (pr_structure == "space-translation")
        spec.structure = probe::SurfaceStructure::SpaceTranslation;
      else if (pr_structure == "homothetical")
        spec.structure = probe::SurfaceStructure::Homothetical;
      else
        throw ConfigError("unknown probe structure '" + pr_structure + "'");
      if (pr_family == "polynomial")
        spec.family = probe::AnsatzFamily::Polynomial;
      else if (pr_family == "cubic-spline")
        spec.family = probe::AnsatzFamily::CubicSpline;
      else
        throw ConfigError("unknown probe family '" + pr_family + "'");
      spec.degree = pr_degree;
      geom::Vector3 vtmp;
      if (!pr_velocity.empty()) {
        if (!parse_velocity_flag(pr_velocity, vtmp)) throw ConfigError("--velocity must be v1,v2,v3");
        spec.velocity = vtmp;
      }
      spec.velocity_free = pr_vfree;
      spec.curvature_floor = pr_floor;
      spec.coefficient_bound = pr_bound;
      spec.slope_cap = pr_slope;
      auto parse_dom = [](const std::string& text, std::array<double, 2>& dom) {
        std::stringstream ss(text);
        std::string part;
        std::vector<double> vals;
        while (std::getline(ss, part, ',')) vals.push_back(std::stod(part));
        if (vals.size() != 2 || !(vals[1] > vals[0]))
          throw ConfigError("domain must be lo,hi with hi > lo");
        dom = {vals[0], vals[1]};
      };
      parse_dom(pr_xdom, spec.xdomain);
      parse_dom(pr_ydom, spec.ydomain);

      pr_seed_given = cmd_probe->count("--seed") > 0;
      if (!pr_seed_given) {
        if (const char* env = std::getenv("SOLITON_SEED")) pr_seed = std::strtoull(env, nullptr, 10);
      }
      probe::NmConfig nm;
      nm.max_evals = pr_maxevals;
      probe::ProbeResult result = probe::probe_run(spec, pr_restarts, pr_seed, nm, pr_grid);
      std::cout << "probe best objective " << report::format_double(result.best_value)
                << " (penalty-free " << report::format_double(result.best_residual_value)
                << ") at restart " << result.best_restart << ", " << result.evaluations
                << " evaluations\n";
      if (!pr_trace.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& t : result.trace)
          rows.push_back({double(t.restart), double(t.iteration), t.best});
        report::write_csv(pr_trace, {"restart", "iteration", "objective"}, rows);
      }
      if (!pr_json_path.empty()) {
        double xc = 0.5 * (spec.xdomain[0] + spec.xdomain[1]);
        double yc = 0.5 * (spec.ydomain[0] + spec.ydomain[1]);
        probe::AnsatzEval at_center = probe::eval_ansatz(spec, result.best_params, xc, yc);
        json j{{"command", join_args(argc, argv)},
               {"best_f_dd_center", at_center.f.d2},
               {"best_g_dd_center", at_center.g.d2},
               {"seed", pr_seed},
               {"restarts", pr_restarts},
               {"best_objective", result.best_value},
               {"best_objective_penalty_free", result.best_residual_value},
               {"best_restart", result.best_restart},
               {"evaluations", result.evaluations},
               {"restart_minima", result.restart_minima},
               {"best_params", result.best_params},
               {"curvature_floor", spec.curvature_floor},
               {"note", spec.curvature_floor > 0
                            ? "curvature floor is a tool default, not a certified bound"
                            : ""},
               {"wall_time_s", wall()}};
        report::write_text_file(pr_json_path, j.dump(2) + "\n");
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const expr::DomainError& e) {
    std::cerr << "domain violation: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "domain violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace soliton::cli
