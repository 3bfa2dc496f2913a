#include "geoconvex/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace geoconvex {

namespace {

ordered_json json_vec(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (double c : v) a.push_back(c);
  return a;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string path_csv(const ChartManifold& m, const GeodesicPath& path) {
  std::string out = "t";
  for (int i = 1; i <= m.dim; ++i) out += ",x_" + std::to_string(i);
  for (int i = 1; i <= m.dim; ++i) out += ",v_" + std::to_string(i);
  out += ",speed\n";
  for (std::size_t r = 0; r < path.states.size(); ++r) {
    const PhasePoint& s = path.states[r];
    std::vector<std::string> cells;
    cells.reserve(2 * m.dim + 2);
    cells.push_back(format_double(path.times[r]));
    for (double c : s.point) cells.push_back(format_double(c));
    for (double c : s.vector) cells.push_back(format_double(c));
    cells.push_back(format_double(metric_norm(m, s.point, s.vector)));
    append_row(out, cells);
  }
  return out;
}

std::string recurrence_csv(const RecurrenceStats& stats) {
  const int dim = stats.samples.empty()
                      ? 0
                      : static_cast<int>(stats.samples.front().theta.point.size());
  std::string out;
  for (int i = 1; i <= dim; ++i) out += (i == 1 ? "p_1" : ",p_" + std::to_string(i));
  for (int i = 1; i <= dim; ++i) out += ",v_" + std::to_string(i);
  out += ",first_return\n";
  for (const RecurrenceSample& s : stats.samples) {
    std::vector<std::string> cells;
    for (double c : s.theta.point) cells.push_back(format_double(c));
    for (double c : s.theta.vector) cells.push_back(format_double(c));
    cells.push_back(s.first_return ? format_double(*s.first_return) : std::string());
    append_row(out, cells);
  }
  return out;
}

std::string trace_csv(const MinimizeTrace& trace) {
  const int dim = trace.p0.size() ? static_cast<int>(trace.p0.size()) : 0;
  std::string out = "k";
  for (int i = 1; i <= dim; ++i) out += ",x_" + std::to_string(i);
  out += ",u,g,h,iterations\n";
  for (const TraceEntry& e : trace.entries) {
    std::vector<std::string> cells;
    cells.push_back(std::to_string(e.k));
    for (double c : e.x) cells.push_back(format_double(c));
    cells.push_back(format_double(e.u_value));
    cells.push_back(format_double(e.g_value));
    cells.push_back(format_double(e.h_value));
    cells.push_back(std::to_string(e.inner_iterations));
    append_row(out, cells);
  }
  return out;
}

std::string curvature_grid_csv(const std::vector<CurvatureGridRow>& rows) {
  std::string out = "t,x,y,K_analytic,K_fd,abs_err\n";
  for (const CurvatureGridRow& r : rows) {
    append_row(out, {format_double(r.t), format_double(r.x), format_double(r.y),
                     format_double(r.analytic), format_double(r.fd),
                     format_double(r.abs_err)});
  }
  return out;
}

ordered_json to_json(const ConvexityReport& rep) {
  ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  j["margin"] = rep.margin;
  if (rep.witness) {
    ordered_json w;
    w["base_point"] = json_vec(rep.witness->base_point);
    w["direction"] = json_vec(rep.witness->direction);
    w["arclength"] = rep.witness->arclength;
    w["second_difference"] = rep.witness->second_difference;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["geodesics_used"] = rep.geodesics_used;
  j["truncated"] = rep.truncated;
  j["seed"] = rep.seed;
  j["tol"] = rep.tol;
  j["note"] = rep.note;
  return j;
}

ordered_json to_json(const RecurrenceStats& stats) {
  ordered_json j;
  j["manifold"] = stats.manifold_key;
  j["epsilon"] = stats.epsilon;
  j["horizon"] = stats.horizon;
  j["t_min"] = stats.t_min;
  j["seed"] = stats.seed;
  j["n_samples"] = static_cast<int>(stats.samples.size());
  int returned = 0;
  for (const RecurrenceSample& s : stats.samples)
    if (s.first_return) ++returned;
  j["returned"] = returned;
  j["recurrent_fraction"] = stats.recurrent_fraction;
  j["max_unit_drift"] = stats.max_unit_drift;
  j["phase_distance"] = "euclidean on chart (point, vector) pairs, minimum image on periodic coordinates";
  j["verdict"] = stats.verdict;
  return j;
}

ordered_json to_json(const MinimizeTrace& trace) {
  ordered_json j;
  j["status"] = to_string(trace.status);
  j["p0"] = json_vec(trace.p0);
  j["g_at_p0"] = trace.g_at_p0;
  j["u_offset"] = trace.u_offset;
  j["limit"] = json_vec(trace.limit);
  j["limit_stabilized"] = trace.limit_stabilized;
  ordered_json entries = ordered_json::array();
  for (const TraceEntry& e : trace.entries) {
    ordered_json row;
    row["k"] = e.k;
    row["x"] = json_vec(e.x);
    row["u"] = e.u_value;
    row["g"] = e.g_value;
    row["h"] = e.h_value;
    row["inner_iterations"] = e.inner_iterations;
    row["inner_converged"] = e.inner_converged;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  j["g_certification"] = to_json(trace.g_certification);
  j["u_certification"] = to_json(trace.u_certification);
  return j;
}

ordered_json to_json(const LoopSearchResult& res) {
  ordered_json j;
  j["base_point"] = json_vec(res.base_point);
  j["directions_scanned"] = res.directions_scanned;
  j["escaped_directions"] = res.escaped_directions;
  ordered_json loops = ordered_json::array();
  for (const GeodesicLoop& l : res.loops) {
    ordered_json row;
    row["angle"] = l.angle;
    row["direction"] = json_vec(l.direction);
    row["length"] = l.length;
    row["closure_error"] = l.closure_error;
    loops.push_back(std::move(row));
  }
  j["loops"] = std::move(loops);
  j["verdict"] = to_string(res.verdict);
  j["note"] = res.note;
  return j;
}

ordered_json to_json(const SoulRegionResult& res) {
  ordered_json j;
  j["applicable"] = res.applicable;
  j["beta"] = res.beta;
  j["limit_height"] = res.limit_height;
  j["worst_trace_height"] = res.worst_trace_height;
  j["limit_within_bound"] = res.limit_within_bound;
  j["trace_within_bound"] = res.trace_within_bound;
  j["passed"] = res.passed;
  return j;
}

}  // namespace geoconvex
