#pragma once

#include "geoconvex/manifold.hpp"

namespace geoconvex {

// Central-difference step for Christoffel partials when assembling the
// curvature tensor.
inline constexpr double kChristoffelFdStep = 1e-3;

// Rank-4 curvature components. Storage convention:
//   at(l, i, j, k) = l-th component of R(d_j, d_k) d_i
// with R(X, Y)Z = D_X D_Y Z - D_Y D_X Z - D_[X,Y] Z, so the value is
//   d_j Gamma^l_{ki} - d_k Gamma^l_{ji} + Gamma^m_{ki} Gamma^l_{jm}
//                                       - Gamma^m_{ji} Gamma^l_{km}.
class RiemannTensor {
 public:
  RiemannTensor() = default;
  explicit RiemannTensor(int n)
      : n_(n), a_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int size() const { return n_; }
  double& at(int l, int i, int j, int k) {
    return a_[((static_cast<std::size_t>(l) * n_ + i) * n_ + j) * n_ + k];
  }
  double at(int l, int i, int j, int k) const {
    return a_[((static_cast<std::size_t>(l) * n_ + i) * n_ + j) * n_ + k];
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Curvature tensor assembled purely from finite differences of the metric
// (the Christoffel evaluations inside deliberately ignore any analytic
// callback, so this stays an independent oracle for closed-form curvature).
RiemannTensor riemann_fd(const ChartManifold& m, const Vec& x);

// K(u, w) = <R(u, w) w, u> / (|u|^2 |w|^2 - <u, w>^2). Scale invariant in u
// and w; throws std::invalid_argument when they do not span a plane.
double sectional_curvature(const ChartManifold& m, const Vec& x, const Vec& u, const Vec& w);
double sectional_curvature(const ChartManifold& m, const Vec& x, const Vec& u, const Vec& w,
                           const RiemannTensor& r);

// max over index triples of |R^l_{ijk} + R^l_{jki} + R^l_{kij}| (first Bianchi
// identity on the argument/plane indices).
double bianchi_residual(const RiemannTensor& r);

// max over (j, k) swaps of the antisymmetry defect |at(l,i,j,k) + at(l,i,k,j)|.
double antisymmetry_residual(const RiemannTensor& r);

}  // namespace geoconvex
