#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "geoconvex/convexity.hpp"
#include "geoconvex/flow.hpp"
#include "geoconvex/geodesic.hpp"
#include "geoconvex/minimize.hpp"
#include "geoconvex/warped.hpp"

namespace geoconvex {

using ordered_json = nlohmann::ordered_json;

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

// Writes bytes as-is (LF endings, UTF-8); throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

// Columns: t, x_1..x_n, v_1..v_n, speed.
std::string path_csv(const ChartManifold& m, const GeodesicPath& path);
// Columns: p_1..p_n, v_1..v_n, first_return (empty cell when no return).
std::string recurrence_csv(const RecurrenceStats& stats);
// Columns: k, x_1..x_n, u, g, h, iterations.
std::string trace_csv(const MinimizeTrace& trace);
// Columns: t, x, y, K_analytic, K_fd, abs_err.
std::string curvature_grid_csv(const std::vector<CurvatureGridRow>& rows);

ordered_json to_json(const ConvexityReport& rep);
ordered_json to_json(const RecurrenceStats& stats);  // summary without the sample list
ordered_json to_json(const MinimizeTrace& trace);
ordered_json to_json(const LoopSearchResult& res);
ordered_json to_json(const SoulRegionResult& res);

}  // namespace geoconvex
