#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace geoconvex {

using Vec = std::vector<double>;

// Dense square matrix, row major. Chart dimensions here are 1 to 3, so plain
// loops beat any library dispatch and keep the dependency surface empty.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

inline double max_asymmetry(const SquareMatrix& m) {
  double worst = 0.0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

// Lower Cholesky factor; empty optional if a pivot is not safely positive.
inline std::optional<SquareMatrix> cholesky(const SquareMatrix& m, double pivot_floor = 1e-13) {
  const int n = m.size();
  SquareMatrix L(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= pivot_floor) return std::nullopt;
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return L;
}

// Solves L L^T x = b given the lower factor.
inline Vec cholesky_solve(const SquareMatrix& L, const Vec& b) {
  const int n = L.size();
  Vec y(n), x(n);
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= L(i, k) * y[k];
    y[i] = s / L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < n; ++k) s -= L(k, i) * x[k];
    x[i] = s / L(i, i);
  }
  return x;
}

inline std::optional<SquareMatrix> spd_inverse(const SquareMatrix& m, double pivot_floor = 1e-13) {
  auto L = cholesky(m, pivot_floor);
  if (!L) return std::nullopt;
  const int n = m.size();
  SquareMatrix inv(n);
  Vec e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    Vec col = cholesky_solve(*L, e);
    e[j] = 0.0;
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

// u^T g w
inline double quadratic_form(const SquareMatrix& g, const Vec& u, const Vec& w) {
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) s += u[i] * g(i, j) * w[j];
  return s;
}

inline Vec matvec(const SquareMatrix& m, const Vec& v) {
  Vec out(m.size(), 0.0);
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double euclidean_norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec axpy(double alpha, const Vec& x, const Vec& y) {
  Vec out(y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
  return out;
}

inline Vec scaled(const Vec& x, double alpha) {
  Vec out(x);
  for (double& c : out) c *= alpha;
  return out;
}

}  // namespace geoconvex
