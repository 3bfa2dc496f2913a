#pragma once

#include <limits>
#include <vector>

#include "geoconvex/manifold.hpp"

namespace geoconvex {

inline constexpr double kDefaultStep = 1e-3;

enum class PathStatus { kCompleted, kChartExit };

struct GeodesicPath {
  std::vector<double> times;        // starts at 0, uniform spacing |step|
  std::vector<PhasePoint> states;   // same length as times
  double step = 0.0;                // signed step actually used
  PathStatus status = PathStatus::kCompleted;
  double exit_time = std::numeric_limits<double>::quiet_NaN();
};

// Streaming classical RK4 on the first-order system x' = v, v' = -Gamma(x)(v, v).
// Fixed step; periodic coordinates are wrapped after each committed step.
class GeodesicStepper {
 public:
  GeodesicStepper(const ChartManifold& m, PhasePoint y0, double step);

  void advance();
  const PhasePoint& state() const { return y_; }
  double time() const { return t_; }
  double step() const { return h_; }
  // True once a non-periodic coordinate has left the chart bounds.
  bool exited() const { return exited_; }

 private:
  const ChartManifold* m_;
  PhasePoint y_;
  double h_;
  double t_ = 0.0;
  bool exited_ = false;
};

// Integrates over [0, duration], duration > 0. The step is shrunk to the
// nearest exact divisor of duration at or below `step`, so the final time is
// hit exactly. Zero initial velocity yields a constant path.
GeodesicPath geodesic_integrate(const ChartManifold& m, const PhasePoint& theta0,
                                double duration, double step = kDefaultStep);

// Endpoint of the unit-time geodesic with initial velocity v; the substep
// count scales with the metric length of v so accuracy does not degrade for
// long steps.
Vec exp_map(const ChartManifold& m, const Vec& p, const Vec& v);

// Parallel transport of w0 along an integrated geodesic. Re-integrates the
// augmented system (x, v, w) with the path's own initial data and step, which
// reproduces the discrete trajectory exactly instead of interpolating states.
Vec parallel_transport(const ChartManifold& m, const GeodesicPath& path, const Vec& w0);

}  // namespace geoconvex
