#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "geoconvex/errors.hpp"
#include "geoconvex/linalg.hpp"

namespace geoconvex {

// Central-difference step for metric partials (Christoffel assembly).
inline constexpr double kMetricFdStep = 1e-4;

// Christoffel symbols of the second kind, symmetric in the lower pair.
class Christoffel3 {
 public:
  Christoffel3() = default;
  explicit Christoffel3(int n)
      : n_(n), a_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int size() const { return n_; }
  // Gamma^k_{ij}
  double& at(int k, int i, int j) {
    return a_[(static_cast<std::size_t>(k) * n_ + i) * n_ + j];
  }
  double at(int k, int i, int j) const {
    return a_[(static_cast<std::size_t>(k) * n_ + i) * n_ + j];
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// A manifold presented in one global chart. The metric callback is the ground
// truth; the optional christoffel callback is an analytic fast path that must
// match finite differences of the metric (there is a test for every built-in).
// period[i] > 0 marks coordinate i as periodic with that period. lower/upper
// bound non-periodic coordinates; integration that leaves them is reported as
// a chart exit, not an error.
struct ChartManifold {
  std::string key;
  int dim = 0;
  std::function<SquareMatrix(const Vec&)> metric;
  std::function<Christoffel3(const Vec&)> christoffel;  // optional
  Vec period;
  Vec lower;
  Vec upper;
};

struct PhasePoint {
  Vec point;
  Vec vector;
};

ChartManifold make_chart(std::string key, int dim,
                         std::function<SquareMatrix(const Vec&)> metric);

// Metric evaluation with the SPD contract enforced.
SquareMatrix metric_at(const ChartManifold& m, const Vec& x);
SquareMatrix metric_inverse_at(const ChartManifold& m, const Vec& x);

double inner_product(const ChartManifold& m, const Vec& x, const Vec& u, const Vec& w);
double metric_norm(const ChartManifold& m, const Vec& x, const Vec& v);
// Throws std::invalid_argument on a zero vector.
Vec metric_normalized(const ChartManifold& m, const Vec& x, const Vec& v);

// Analytic symbols when the chart provides them, finite differences otherwise.
Christoffel3 christoffel(const ChartManifold& m, const Vec& x);
// Always the finite-difference route; the oracle side of dual-route checks.
Christoffel3 christoffel_fd(const ChartManifold& m, const Vec& x);

// Folds periodic coordinates into [0, period).
Vec wrap_point(const ChartManifold& m, Vec x);
bool in_bounds(const ChartManifold& m, const Vec& x);

// b - a with minimum-image convention on periodic coordinates.
Vec chart_displacement(const ChartManifold& m, const Vec& a, const Vec& b);
double chart_distance(const ChartManifold& m, const Vec& a, const Vec& b);

}  // namespace geoconvex
