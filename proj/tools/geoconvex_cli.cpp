// Command-line front end: one subcommand per experiment family, JSON
// summaries on stdout, bulk numeric series as CSV files. Exit codes:
// 0 success, 2 usage, 3 numerical failure, 4 inconclusive result.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "geoconvex/builtins.hpp"
#include "geoconvex/convexity.hpp"
#include "geoconvex/curvature.hpp"
#include "geoconvex/flow.hpp"
#include "geoconvex/geodesic.hpp"
#include "geoconvex/io.hpp"
#include "geoconvex/minimize.hpp"
#include "geoconvex/registry.hpp"
#include "geoconvex/warped.hpp"

namespace {

using geoconvex::ordered_json;

// Configuration problems detected after flag parsing (unknown registry keys,
// malformed descriptor files) exit with the usage code, like flag errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

geoconvex::ChartManifold resolve_manifold(const std::string& key) {
  try {
    return geoconvex::make_manifold(key);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

geoconvex::ConvexFunction resolve_function(const std::string& key,
                                           const geoconvex::ChartManifold& m) {
  try {
    return geoconvex::make_convex_function(key, m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const ordered_json& summary, const std::string& summary_path) {
  const std::string text = summary.dump(2) + "\n";
  std::cout << text;
  if (!summary_path.empty()) geoconvex::write_text_file(summary_path, text);
}

ordered_json json_vec(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double c : v) a.push_back(c);
  return a;
}

struct GeodesicArgs {
  std::string manifold = "plane";
  std::vector<double> point;
  std::vector<double> velocity;
  double duration = 10.0;
  double step = geoconvex::kDefaultStep;
  std::string out;
  std::string summary;
};

int run_geodesic(const GeodesicArgs& a) {
  const geoconvex::ChartManifold m = resolve_manifold(a.manifold);
  if (static_cast<int>(a.point.size()) != m.dim ||
      static_cast<int>(a.velocity.size()) != m.dim)
    throw UsageError("--point and --velocity need " + std::to_string(m.dim) +
                     " components on " + m.key);

  const geoconvex::GeodesicPath path =
      geoconvex::geodesic_integrate(m, {a.point, a.velocity}, a.duration, a.step);

  double speed_drift = 0.0;
  const double speed0 =
      geoconvex::metric_norm(m, path.states.front().point, path.states.front().vector);
  for (const geoconvex::PhasePoint& s : path.states)
    speed_drift = std::max(speed_drift,
                           std::abs(geoconvex::metric_norm(m, s.point, s.vector) - speed0));

  ordered_json j;
  j["config"] = {{"command", "geodesic"}, {"manifold", a.manifold},
                 {"point", json_vec(a.point)}, {"velocity", json_vec(a.velocity)},
                 {"duration", a.duration}, {"step", a.step},
                 {"out", a.out}, {"summary", a.summary}};
  j["status"] = path.status == geoconvex::PathStatus::kCompleted ? "completed" : "chart-exit";
  if (path.status == geoconvex::PathStatus::kChartExit) j["exit_time"] = path.exit_time;
  j["endpoint"] = json_vec(path.states.back().point);
  j["end_velocity"] = json_vec(path.states.back().vector);
  j["speed_drift"] = speed_drift;
  if (a.manifold == "paraboloid") {
    const double l0 = geoconvex::paraboloid_rotation_momentum(path.states.front().point,
                                                              path.states.front().vector);
    double drift = 0.0;
    for (const geoconvex::PhasePoint& s : path.states)
      drift = std::max(drift,
                       std::abs(geoconvex::paraboloid_rotation_momentum(s.point, s.vector) - l0));
    j["clairaut_drift"] = drift;
  }
  if (!a.out.empty()) geoconvex::write_text_file(a.out, geoconvex::path_csv(m, path));
  emit(j, a.summary);
  return 0;
}

struct CurvatureArgs {
  std::string manifold = "m3";
  double t_lo = -3.0, t_hi = 3.0;
  int nt = 25;
  double r_lo = 0.0, r_hi = 3.0;
  int nr = 16;
  double x_lo = -2.0, x_hi = 2.0;
  int nx = 21;
  double y_lo = -2.0, y_hi = 2.0;
  int ny = 21;
  std::string out;
  std::string summary;
};

int run_curvature(const CurvatureArgs& a) {
  std::vector<geoconvex::CurvatureGridRow> rows;
  ordered_json cfg = {{"command", "curvature"}, {"manifold", a.manifold}};
  if (a.manifold == "m3") {
    const geoconvex::WarpedProduct w = geoconvex::make_m3();
    rows = geoconvex::vertical_curvature_grid(w, a.nt, a.t_lo, a.t_hi, a.nr, a.r_lo, a.r_hi);
    cfg["t_lo"] = a.t_lo;
    cfg["t_hi"] = a.t_hi;
    cfg["nt"] = a.nt;
    cfg["r_lo"] = a.r_lo;
    cfg["r_hi"] = a.r_hi;
    cfg["nr"] = a.nr;
  } else {
    const geoconvex::ChartManifold m = resolve_manifold(a.manifold);
    if (m.dim != 2) throw UsageError("curvature grids need a surface or m3");
    cfg["x_lo"] = a.x_lo;
    cfg["x_hi"] = a.x_hi;
    cfg["nx"] = a.nx;
    cfg["y_lo"] = a.y_lo;
    cfg["y_hi"] = a.y_hi;
    cfg["ny"] = a.ny;
    if (a.nx < 2 || a.ny < 2) throw UsageError("curvature grid needs at least 2x2 nodes");
    const geoconvex::Vec e1 = {1.0, 0.0}, e2 = {0.0, 1.0};
    for (int i = 0; i < a.nx; ++i) {
      const double x = a.x_lo + (a.x_hi - a.x_lo) * i / (a.nx - 1);
      for (int jy = 0; jy < a.ny; ++jy) {
        const double y = a.y_lo + (a.y_hi - a.y_lo) * jy / (a.ny - 1);
        geoconvex::CurvatureGridRow row;
        row.t = 0.0;
        row.x = x;
        row.y = y;
        row.analytic =
            a.manifold == "paraboloid" ? geoconvex::paraboloid_gauss_curvature({x, y}) : 0.0;
        row.fd = geoconvex::sectional_curvature(m, {x, y}, e1, e2);
        row.abs_err = std::abs(row.analytic - row.fd);
        rows.push_back(row);
      }
    }
  }
  cfg["out"] = a.out;
  cfg["summary"] = a.summary;

  double max_err = 0.0, k_min = rows.front().analytic, k_max = rows.front().analytic;
  for (const geoconvex::CurvatureGridRow& r : rows) {
    max_err = std::max(max_err, r.abs_err);
    k_min = std::min(k_min, r.analytic);
    k_max = std::max(k_max, r.analytic);
  }
  ordered_json j;
  j["config"] = std::move(cfg);
  j["rows"] = static_cast<int>(rows.size());
  j["max_abs_err"] = max_err;
  j["k_analytic_min"] = k_min;
  j["k_analytic_max"] = k_max;
  if (a.manifold == "m3") j["k_at_origin"] = geoconvex::m3_vertical_curvature_formula(0, 0, 0);
  if (!a.out.empty()) geoconvex::write_text_file(a.out, geoconvex::curvature_grid_csv(rows));
  emit(j, a.summary);
  return 0;
}

struct CertifyArgs {
  std::string manifold = "paraboloid";
  std::string function = "height";
  int n = 100;
  double span = 1.0;
  int cells = 64;
  int substeps = 8;
  double tol = 1e-7;
  std::uint64_t seed = 0;
  int threads = 0;
  std::vector<double> box;  // lo1 hi1 lo2 hi2 ...
  std::string out;
};

int run_certify(const CertifyArgs& a) {
  const geoconvex::ChartManifold m = resolve_manifold(a.manifold);
  const geoconvex::ConvexFunction f = resolve_function(a.function, m);
  geoconvex::DomainBox box = geoconvex::default_domain_box(a.manifold);
  if (!a.box.empty()) {
    if (static_cast<int>(a.box.size()) != 2 * m.dim)
      throw UsageError("--box needs lo/hi per chart coordinate");
    box.lo.clear();
    box.hi.clear();
    for (int i = 0; i < m.dim; ++i) {
      box.lo.push_back(a.box[2 * i]);
      box.hi.push_back(a.box[2 * i + 1]);
    }
  }
  geoconvex::CertifyOptions opt;
  opt.n_geodesics = a.n;
  opt.span = a.span;
  opt.grid_cells = a.cells;
  opt.steps_per_cell = a.substeps;
  opt.tol = a.tol;
  opt.seed = a.seed;
  opt.threads = a.threads;

  const geoconvex::ConvexityReport rep = geoconvex::certify(m, f, box, opt);
  ordered_json j;
  j["config"] = {{"command", "certify"}, {"manifold", a.manifold},
                 {"function", a.function}, {"n", a.n}, {"span", a.span},
                 {"cells", a.cells}, {"substeps", a.substeps}, {"tol", a.tol},
                 {"seed", a.seed}, {"threads", a.threads},
                 {"box_lo", json_vec(box.lo)}, {"box_hi", json_vec(box.hi)},
                 {"out", a.out}};
  j["report"] = geoconvex::to_json(rep);
  emit(j, a.out);
  return rep.verdict == geoconvex::ConvexityVerdict::kInconclusive ? 4 : 0;
}

struct RecurArgs {
  std::string manifold = "torus";
  int samples = 200;
  double epsilon = 0.05;
  double horizon = 200.0;
  double check_dt = 0.01;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string summary;
};

int run_recur(const RecurArgs& a) {
  const geoconvex::ChartManifold m = resolve_manifold(a.manifold);
  geoconvex::RecurrenceOptions opt;
  opt.n_samples = a.samples;
  opt.epsilon = a.epsilon;
  opt.horizon = a.horizon;
  opt.check_dt = a.check_dt;
  opt.seed = a.seed;
  opt.threads = a.threads;

  const geoconvex::RecurrenceStats stats =
      geoconvex::recurrence_experiment(m, geoconvex::default_domain_box(a.manifold), opt);
  ordered_json j;
  j["config"] = {{"command", "recur"}, {"manifold", a.manifold}, {"samples", a.samples},
                 {"epsilon", a.epsilon}, {"horizon", a.horizon},
                 {"check_dt", a.check_dt}, {"seed", a.seed}, {"threads", a.threads},
                 {"out", a.out}, {"summary", a.summary}};
  j["stats"] = geoconvex::to_json(stats);
  if (!a.out.empty()) geoconvex::write_text_file(a.out, geoconvex::recurrence_csv(stats));
  emit(j, a.summary);
  return 0;
}

struct MinimizeArgs {
  std::string config;
  std::string manifold = "paraboloid";
  std::string u = "zero";
  std::string g = "height";
  std::vector<double> p0;
  std::vector<int> schedule = {1, 2, 4, 8, 16, 32, 64};
  std::uint64_t seed = 0;
  int threads = 0;
  int certify_n = 100;
  double certify_span = 1.0;
  double certify_tol = 1e-7;
  double grad_tol = 1e-8;
  int max_iter = 10000;
  double limit_tol = 1e-6;
  std::string out;
  std::string summary;
};

void apply_descriptor(MinimizeArgs& a) {
  std::ifstream in(a.config);
  if (!in) throw UsageError("cannot read config file: " + a.config);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config root must be an object");
  for (const auto& [key, val] : doc.items()) {
    try {
      if (key == "manifold") {
        a.manifold = val.get<std::string>();
      } else if (key == "u") {
        a.u = val.get<std::string>();
      } else if (key == "g") {
        a.g = val.get<std::string>();
      } else if (key == "p0") {
        a.p0 = val.get<std::vector<double>>();
      } else if (key == "schedule") {
        a.schedule = val.get<std::vector<int>>();
      } else if (key == "seed") {
        a.seed = val.get<std::uint64_t>();
      } else if (key == "threads") {
        a.threads = val.get<int>();
      } else if (key == "certify_n") {
        a.certify_n = val.get<int>();
      } else if (key == "certify_span") {
        a.certify_span = val.get<double>();
      } else if (key == "certify_tol") {
        a.certify_tol = val.get<double>();
      } else if (key == "grad_tol") {
        a.grad_tol = val.get<double>();
      } else if (key == "max_iter") {
        a.max_iter = val.get<int>();
      } else if (key == "limit_tol") {
        a.limit_tol = val.get<double>();
      } else {
        throw UsageError("unknown config key: " + key);
      }
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

int run_minimize(MinimizeArgs a) {
  if (!a.config.empty()) apply_descriptor(a);
  const geoconvex::ChartManifold m = resolve_manifold(a.manifold);
  const geoconvex::ConvexFunction u = resolve_function(a.u, m);
  const geoconvex::ConvexFunction g = resolve_function(a.g, m);
  if (a.p0.empty()) a.p0 = geoconvex::Vec(m.dim, 0.0);
  if (static_cast<int>(a.p0.size()) != m.dim)
    throw UsageError("p0 needs " + std::to_string(m.dim) + " components on " + m.key);

  geoconvex::RegularizedOptions opt;
  opt.schedule = a.schedule;
  opt.certify.n_geodesics = a.certify_n;
  opt.certify.span = a.certify_span;
  opt.certify.tol = a.certify_tol;
  opt.certify.seed = a.seed;
  opt.certify.threads = a.threads;
  opt.inner.grad_tol = a.grad_tol;
  opt.inner.max_iter = a.max_iter;
  opt.limit_tol = a.limit_tol;

  const geoconvex::MinimizeTrace trace =
      geoconvex::regularized_minimize(m, u, g, geoconvex::default_domain_box(a.manifold),
                                      a.p0, opt);
  ordered_json j;
  ordered_json sched = ordered_json::array();
  for (int k : a.schedule) sched.push_back(k);
  j["config"] = {{"command", "minimize"}, {"manifold", a.manifold}, {"u", a.u},
                 {"g", a.g}, {"p0", json_vec(a.p0)}, {"schedule", std::move(sched)},
                 {"seed", a.seed}, {"threads", a.threads}, {"certify_n", a.certify_n},
                 {"certify_span", a.certify_span}, {"certify_tol", a.certify_tol},
                 {"grad_tol", a.grad_tol}, {"max_iter", a.max_iter},
                 {"limit_tol", a.limit_tol}, {"out", a.out}, {"summary", a.summary}};
  j["trace"] = geoconvex::to_json(trace);
  if (a.manifold == "paraboloid")
    j["soul_region"] = geoconvex::to_json(geoconvex::soul_region_check(trace));
  if (!a.out.empty()) geoconvex::write_text_file(a.out, geoconvex::trace_csv(trace));
  emit(j, a.summary);
  return trace.status == geoconvex::TraceStatus::kConverged ? 0 : 4;
}

struct LoopsArgs {
  std::string manifold = "paraboloid";
  std::vector<double> point;
  double height = -1.0;
  int directions = 360;
  double max_length = 50.0;
  double closure_tol = 1e-3;
  double capture = 0.25;
  double scan_step = 5e-3;
  int threads = 0;
  std::string out;
};

int run_loops(const LoopsArgs& a) {
  const geoconvex::ChartManifold m = resolve_manifold(a.manifold);
  geoconvex::Vec p;
  if (!a.point.empty()) {
    p = a.point;
  } else if (a.height >= 0.0) {
    if (a.manifold != "paraboloid") throw UsageError("--height only places points on the paraboloid");
    p = {std::sqrt(a.height), 0.0};
  } else {
    p = geoconvex::Vec(m.dim, 0.0);
  }
  if (static_cast<int>(p.size()) != m.dim)
    throw UsageError("--point needs " + std::to_string(m.dim) + " components on " + m.key);

  geoconvex::LoopSearchOptions opt;
  opt.n_directions = a.directions;
  opt.max_length = a.max_length;
  opt.closure_tol = a.closure_tol;
  opt.capture_radius = a.capture;
  opt.scan_step = a.scan_step;
  opt.threads = a.threads;

  const geoconvex::LoopSearchResult res = geoconvex::loop_search(m, p, opt);
  ordered_json j;
  j["config"] = {{"command", "loops"}, {"manifold", a.manifold}, {"point", json_vec(p)},
                 {"directions", a.directions}, {"max_length", a.max_length},
                 {"closure_tol", a.closure_tol}, {"capture", a.capture},
                 {"scan_step", a.scan_step}, {"threads", a.threads}, {"out", a.out}};
  j["result"] = geoconvex::to_json(res);
  emit(j, a.out);
  return res.verdict == geoconvex::LoopVerdict::kInconclusive ? 4 : 0;
}

int run_beta(const std::string& out) {
  const double mu1 = geoconvex::solve_mu1();
  const double beta = geoconvex::soul_bound_beta();
  ordered_json j;
  j["config"] = {{"command", "beta"}, {"out", out}};
  j["mu1"] = mu1;
  j["beta"] = beta;
  j["residual"] = std::abs(mu1 - std::atan(mu1) - std::numbers::pi / 2.0);
  emit(j, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for warped-product curvature, convexity "
               "certification, geodesic-flow recurrence, and regularized "
               "convex minimization on chart manifolds"};
  app.require_subcommand(1);
  int exit_code = 0;

  GeodesicArgs ga;
  CLI::App* geodesic = app.add_subcommand("geodesic", "Integrate one geodesic and export the path");
  geodesic->add_option("--manifold", ga.manifold, "Manifold key")->capture_default_str();
  geodesic->add_option("--point", ga.point, "Start point (chart coordinates)")->required()->expected(1, 3);
  geodesic->add_option("--velocity", ga.velocity, "Initial velocity components")->required()->expected(1, 3);
  geodesic->add_option("--duration", ga.duration, "Integration time")->capture_default_str();
  geodesic->add_option("--step", ga.step, "Integrator step")->capture_default_str();
  geodesic->add_option("--out", ga.out, "Path CSV file");
  geodesic->add_option("--summary", ga.summary, "Also write the JSON summary here");
  geodesic->callback([&] { exit_code = run_geodesic(ga); });

  CurvatureArgs ca;
  CLI::App* curvature = app.add_subcommand("curvature", "Analytic vs finite-difference curvature grid");
  curvature->add_option("--manifold", ca.manifold, "m3, paraboloid, plane, or torus")->capture_default_str();
  curvature->add_option("--t-lo", ca.t_lo)->capture_default_str();
  curvature->add_option("--t-hi", ca.t_hi)->capture_default_str();
  curvature->add_option("--nt", ca.nt)->capture_default_str();
  curvature->add_option("--r-lo", ca.r_lo)->capture_default_str();
  curvature->add_option("--r-hi", ca.r_hi)->capture_default_str();
  curvature->add_option("--nr", ca.nr)->capture_default_str();
  curvature->add_option("--x-lo", ca.x_lo)->capture_default_str();
  curvature->add_option("--x-hi", ca.x_hi)->capture_default_str();
  curvature->add_option("--nx", ca.nx)->capture_default_str();
  curvature->add_option("--y-lo", ca.y_lo)->capture_default_str();
  curvature->add_option("--y-hi", ca.y_hi)->capture_default_str();
  curvature->add_option("--ny", ca.ny)->capture_default_str();
  curvature->add_option("--out", ca.out, "Grid CSV file");
  curvature->add_option("--summary", ca.summary, "Also write the JSON summary here");
  curvature->callback([&] { exit_code = run_curvature(ca); });

  CertifyArgs cfa;
  CLI::App* certify = app.add_subcommand("certify", "Convexity certification along sampled geodesics");
  certify->add_option("--manifold", cfa.manifold, "Manifold key")->capture_default_str();
  certify->add_option("--function", cfa.function, "Function key")->capture_default_str();
  certify->add_option("--n", cfa.n, "Number of geodesics")->capture_default_str();
  certify->add_option("--span", cfa.span, "Arclength each side of the base point")->capture_default_str();
  certify->add_option("--cells", cfa.cells, "Second-difference nodes per side")->capture_default_str();
  certify->add_option("--substeps", cfa.substeps, "Integrator substeps per cell")->capture_default_str();
  certify->add_option("--tol", cfa.tol, "Flatness tolerance on the margin")->capture_default_str();
  certify->add_option("--seed", cfa.seed, "Sampling seed")->capture_default_str();
  certify->add_option("--threads", cfa.threads, "Worker cap (0 = hardware)")->capture_default_str();
  certify->add_option("--box", cfa.box, "Domain box override: lo hi per coordinate")->expected(4, 6);
  certify->add_option("--out", cfa.out, "Write the JSON report here too");
  certify->callback([&] { exit_code = run_certify(cfa); });

  RecurArgs ra;
  CLI::App* recur = app.add_subcommand("recur", "Geodesic-flow recurrence experiment");
  recur->add_option("--manifold", ra.manifold, "Manifold key")->capture_default_str();
  recur->add_option("--samples", ra.samples, "Phase-point samples")->capture_default_str();
  recur->add_option("--epsilon", ra.epsilon, "Return radius in phase distance")->capture_default_str();
  recur->add_option("--horizon", ra.horizon, "Max flow time")->capture_default_str();
  recur->add_option("--check-dt", ra.check_dt, "Return-check spacing")->capture_default_str();
  recur->add_option("--seed", ra.seed, "Sampling seed")->capture_default_str();
  recur->add_option("--threads", ra.threads, "Worker cap (0 = hardware)")->capture_default_str();
  recur->add_option("--out", ra.out, "Per-sample CSV file");
  recur->add_option("--summary", ra.summary, "Also write the JSON summary here");
  recur->callback([&] { exit_code = run_recur(ra); });

  MinimizeArgs ma;
  CLI::App* minimize = app.add_subcommand("minimize", "Regularized scheme k*u + g with certification gate");
  minimize->add_option("--config", ma.config, "JSON run descriptor (other run flags then come from it)");
  minimize->add_option("--manifold", ma.manifold, "Manifold key")->capture_default_str();
  minimize->add_option("--u", ma.u, "Function key to drive to its minimum")->capture_default_str();
  minimize->add_option("--g", ma.g, "Strictly convex exhaustion key")->capture_default_str();
  minimize->add_option("--p0", ma.p0, "Reference point (defaults to the origin)")->expected(1, 3);
  minimize->add_option("--schedule", ma.schedule, "k values")->expected(1, 32);
  minimize->add_option("--seed", ma.seed, "Certification seed")->capture_default_str();
  minimize->add_option("--threads", ma.threads, "Worker cap (0 = hardware)")->capture_default_str();
  minimize->add_option("--certify-n", ma.certify_n)->capture_default_str();
  minimize->add_option("--certify-span", ma.certify_span)->capture_default_str();
  minimize->add_option("--certify-tol", ma.certify_tol)->capture_default_str();
  minimize->add_option("--grad-tol", ma.grad_tol)->capture_default_str();
  minimize->add_option("--max-iter", ma.max_iter)->capture_default_str();
  minimize->add_option("--limit-tol", ma.limit_tol)->capture_default_str();
  minimize->add_option("--out", ma.out, "Trace CSV file");
  minimize->add_option("--summary", ma.summary, "Also write the JSON summary here");
  minimize->callback([&] { exit_code = run_minimize(ma); });

  LoopsArgs la;
  CLI::App* loops = app.add_subcommand("loops", "Geodesic-loop search at a base point");
  loops->add_option("--manifold", la.manifold, "Manifold key (surface charts)")->capture_default_str();
  loops->add_option("--point", la.point, "Base point")->expected(2);
  loops->add_option("--height", la.height, "Paraboloid height; places the point at (sqrt(z), 0)");
  loops->add_option("--directions", la.directions, "Fan size")->capture_default_str();
  loops->add_option("--max-length", la.max_length, "Arclength horizon per direction")->capture_default_str();
  loops->add_option("--closure-tol", la.closure_tol, "Chart distance counting as closed")->capture_default_str();
  loops->add_option("--capture", la.capture, "Dip radius that triggers refinement")->capture_default_str();
  loops->add_option("--scan-step", la.scan_step, "Arclength step of the scan")->capture_default_str();
  loops->add_option("--threads", la.threads, "Worker cap (0 = hardware)")->capture_default_str();
  loops->add_option("--out", la.out, "Write the JSON result here too");
  loops->callback([&] { exit_code = run_loops(la); });

  std::string beta_out;
  CLI::App* beta = app.add_subcommand("beta", "Solve mu - arctan(mu) = pi/2 and report the height bound");
  beta->add_option("--out", beta_out, "Write the JSON result here too");
  beta->callback([&] { exit_code = run_beta(beta_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const geoconvex::DegenerateMetricError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
