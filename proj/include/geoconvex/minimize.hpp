#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoconvex/convexity.hpp"
#include "geoconvex/manifold.hpp"

namespace geoconvex {

struct DescentOptions {
  double grad_tol = 1e-8;
  int max_iter = 10000;
  double initial_step = 1.0;
  double backtrack = 0.5;
  double armijo = 1e-4;
  double min_step = 1e-14;
  double fd_step = 1e-6;
};

struct DescentResult {
  Vec x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Chart components of the metric gradient: inverse metric applied to the
// partial derivatives of f (analytic callback or central differences).
Vec riemannian_gradient(const ChartManifold& m, const ConvexFunction& f, const Vec& x,
                        double fd_step = 1e-6);

// Geodesic gradient descent x <- exp_map(x, -alpha grad f) with Armijo
// backtracking on alpha. Stops when the gradient norm drops below grad_tol.
DescentResult gradient_descent(const ChartManifold& m, const ConvexFunction& f,
                               const Vec& x0, const DescentOptions& opt = {});

enum class TraceStatus {
  kConverged,             // all inner solves converged and iterates stabilized
  kNotStabilized,         // inner solves fine, iterates still moving
  kPartial,               // an inner solve gave up; trace kept up to there
  kAbortedCertification,  // a candidate function failed its convexity gate
};

std::string to_string(TraceStatus s);

struct TraceEntry {
  int k = 0;
  Vec x;
  double u_value = 0.0;  // after shifting u by its reference value
  double g_value = 0.0;
  double h_value = 0.0;  // k * u + g at x
  int inner_iterations = 0;
  bool inner_converged = false;
};

struct MinimizeTrace {
  std::vector<TraceEntry> entries;
  Vec p0;
  double g_at_p0 = 0.0;
  double u_offset = 0.0;  // raw u(p0) subtracted so the shifted u vanishes at p0
  Vec limit;              // last completed iterate
  bool limit_stabilized = false;
  TraceStatus status = TraceStatus::kPartial;
  ConvexityReport g_certification;
  ConvexityReport u_certification;
};

struct RegularizedOptions {
  std::vector<int> schedule = {1, 2, 4, 8, 16, 32, 64};
  DescentOptions inner;
  CertifyOptions certify;
  double limit_tol = 1e-6;  // successive-iterate distance for stabilization
};

// Tikhonov-style path: for each k in the schedule minimizes k*u + g from a
// warm start, gated on certification (g must come out strictly convex, u must
// not come out non-convex; a failed gate aborts with the stored report).
// u is shifted so its value at p0 is zero before entering the scheme.
MinimizeTrace regularized_minimize(const ChartManifold& m, const ConvexFunction& u,
                                   const ConvexFunction& g, const DomainBox& box,
                                   const Vec& p0, const RegularizedOptions& opt = {});

// Unique positive root of mu - arctan(mu) - pi/2 = 0, by bisection on [2, 4].
// The achievable residual bottoms out near machine precision.
double solve_mu1(double tol = 1e-12);

// sqrt(3/4 * (1 + mu1^2)).
double soul_bound_beta();

struct LoopSearchOptions {
  int n_directions = 360;
  double max_length = 50.0;
  double closure_tol = 1e-3;
  double capture_radius = 0.25;  // dips below this become refinement candidates
  double scan_step = 5e-3;       // arclength resolution of the direction scan
  int refine_iters = 60;         // golden-section iterations on the angle
  int threads = 0;
};

struct GeodesicLoop {
  double angle = 0.0;  // initial direction angle in the chart
  Vec direction;
  double length = 0.0;
  double closure_error = 0.0;
};

enum class LoopVerdict { kSimple, kNonSimple, kInconclusive };

std::string to_string(LoopVerdict v);

struct LoopSearchResult {
  Vec base_point;
  int directions_scanned = 0;
  int escaped_directions = 0;  // left a bounded chart; normal for outward shots
  std::vector<GeodesicLoop> loops;
  LoopVerdict verdict = LoopVerdict::kInconclusive;
  std::string note;
};

// Shoots unit-speed geodesics in a fan of directions, looks for near-returns
// to the base point (local minima of the chart distance below the capture
// radius), and refines candidate directions until the closure error settles.
// Closure below closure_tol reports a loop; closure stuck in the band
// (closure_tol, 10*closure_tol] makes the whole verdict inconclusive.
LoopSearchResult loop_search(const ChartManifold& m, const Vec& p,
                             const LoopSearchOptions& opt = {});

struct SoulRegionResult {
  bool applicable = false;  // needs a converged trace
  double beta = 0.0;
  double limit_height = 0.0;
  double worst_trace_height = 0.0;
  bool limit_within_bound = false;  // height(limit) <= beta + slack
  bool trace_within_bound = false;  // every traced height < beta
  bool passed = false;
};

// Checks a converged paraboloid trace against the height bound beta: the
// limit must sit at height beta + slack or lower, and every iterate strictly
// below beta.
SoulRegionResult soul_region_check(const MinimizeTrace& trace, double slack = 1e-2);

}  // namespace geoconvex
