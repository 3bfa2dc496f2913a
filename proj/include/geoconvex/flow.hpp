#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoconvex/geodesic.hpp"
#include "geoconvex/manifold.hpp"
#include "geoconvex/sampling.hpp"

namespace geoconvex {

// Unit-speed geodesic flow on the unit tangent bundle. The input vector is
// normalized to unit metric norm; negative t integrates backwards. Throws
// std::runtime_error if the trajectory leaves a bounded chart.
PhasePoint geodesic_flow(const ChartManifold& m, const PhasePoint& theta, double t,
                         double step = kDefaultStep);

// (p, v) -> (p, -v); an involution on phase points.
PhasePoint flip(const PhasePoint& theta);

// Euclidean distance on (point, vector) pairs in chart coordinates, with the
// minimum-image rule on periodic coordinates. A deliberately light proxy for
// tangent-bundle distance; small neighborhoods are all the experiments need,
// and every report states this choice.
double phase_distance(const ChartManifold& m, const PhasePoint& a, const PhasePoint& b);

struct RecurrenceOptions {
  int n_samples = 200;
  double epsilon = 0.05;
  double horizon = 200.0;
  double check_dt = 0.01;  // spacing of the return checks along the flow
  std::uint64_t seed = 0;
  int threads = 0;
  double step = kDefaultStep;
};

struct RecurrenceSample {
  PhasePoint theta;
  std::optional<double> first_return;  // first epsilon-return past t_min
};

struct RecurrenceStats {
  std::string manifold_key;
  double epsilon = 0.0;
  double horizon = 0.0;
  double t_min = 0.0;  // 10 * epsilon: returns earlier than this are just continuity
  std::uint64_t seed = 0;
  std::vector<RecurrenceSample> samples;
  double recurrent_fraction = 0.0;
  double max_unit_drift = 0.0;  // worst | |v| - 1 | seen at any check point
  // A finite sample can support but never establish the measure-theoretic
  // property, so the verdict is phrased as consistency.
  std::string verdict;  // consistent-with-conservative / -dissipative / mixed
};

// Samples unit phase points (uniform base point in the box times uniform
// direction), follows each flow line to the horizon, and records the first
// return of the phase point into its own epsilon-ball.
RecurrenceStats recurrence_experiment(const ChartManifold& m, const DomainBox& box,
                                      const RecurrenceOptions& opt);

// sup over the check grid in [0, t_max] of
//   phase_distance( flip(flow(flip(theta), t)), flow(theta, -t) ).
// Stops early (with the max so far) if either trajectory leaves the chart.
double flip_conjugacy_residual(const ChartManifold& m, const PhasePoint& theta,
                               double t_max, double check_dt = 0.1,
                               double step = kDefaultStep);

}  // namespace geoconvex
