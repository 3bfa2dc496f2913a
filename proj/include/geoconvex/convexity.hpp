#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geoconvex/manifold.hpp"
#include "geoconvex/sampling.hpp"

namespace geoconvex {

// A scalar function on a chart. evaluate is required; the derivative
// callbacks are optional analytic fast paths. gradient returns chart partial
// derivatives of f (the differential, not the raised metric gradient);
// hessian_form(x, u) is the second derivative of f along the geodesic through
// (x, u) at parameter 0, when an analytic form exists.
struct ConvexFunction {
  std::string key;
  std::string manifold_key;
  std::function<double(const Vec&)> evaluate;
  std::function<Vec(const Vec&)> gradient;                     // optional
  std::function<double(const Vec&, const Vec&)> hessian_form;  // optional
};

enum class ConvexityVerdict { kStrictlyConvex, kConvex, kNonConvex, kInconclusive };

std::string to_string(ConvexityVerdict v);

struct CertifyOptions {
  int n_geodesics = 100;
  double span = 1.0;        // arclength covered on each side of the base point
  int grid_cells = 64;      // second-difference nodes per side
  int steps_per_cell = 8;   // integrator substeps between adjacent nodes
  double tol = 1e-7;
  std::uint64_t seed = 0;
  int threads = 0;          // 0 resolves to hardware concurrency
  double max_truncated_fraction = 0.2;
};

// f sampled at uniform arclength nodes along one unit-speed geodesic through
// the start condition, swept in both directions, together with the centered
// second differences (f(s-h) - 2 f(s) + f(s+h)) / h².
struct SecondDifferenceProfile {
  std::vector<double> arclengths;
  std::vector<Vec> points;           // chart point of each node
  std::vector<double> values;
  std::vector<double> second_diffs;  // one per interior node
  double h = 0.0;
  bool truncated = false;  // geodesic left the chart before covering the span
};

SecondDifferenceProfile second_difference_profile(const ChartManifold& m,
                                                  const ConvexFunction& f,
                                                  const PhasePoint& start,
                                                  const CertifyOptions& opt);

struct ConvexityWitness {
  Vec base_point;
  Vec direction;
  double arclength = 0.0;          // node where the minimum occurred
  double second_difference = 0.0;  // per unit parameter squared
};

struct ConvexityReport {
  ConvexityVerdict verdict = ConvexityVerdict::kInconclusive;
  double margin = 0.0;  // minimum second difference over all samples
  int geodesics_used = 0;
  int truncated = 0;
  std::optional<ConvexityWitness> witness;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string note;  // sampling provides evidence, not a proof; reports say so
};

// Samples base points quasi-uniformly in the box and well-spread unit
// directions, integrates each geodesic over [-span, span], and classifies by
// the worst second difference of f along the samples. Ties in the argmin are
// broken by sample index, so results do not depend on the thread count.
ConvexityReport certify(const ChartManifold& m, const ConvexFunction& f,
                        const DomainBox& box, const CertifyOptions& opt);

// strictly-convex iff margin > tol, convex iff margin >= -tol, else non-convex.
ConvexityVerdict verdict_for_margin(double margin, double tol);

struct ConstancyProbeResult {
  bool applicable = false;  // requires a recurrent-flow finding for the manifold
  bool constant = false;
  double max_oscillation = 0.0;
};

// On a manifold whose flow the recurrence experiment found recurrent, any
// function that passes convexity certification is expected to be constant:
// measures the value spread of f along long sampled geodesics. On other
// manifolds the probe is inapplicable and says so instead of failing.
ConstancyProbeResult constancy_probe(const ChartManifold& m, const ConvexFunction& f,
                                     const DomainBox& box, bool flow_recurrent,
                                     const CertifyOptions& opt);

}  // namespace geoconvex
