#include "geoconvex/manifold.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace geoconvex {

namespace {

std::string point_string(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

ChartManifold make_chart(std::string key, int dim,
                         std::function<SquareMatrix(const Vec&)> metric) {
  ChartManifold m;
  m.key = std::move(key);
  m.dim = dim;
  m.metric = std::move(metric);
  m.period.assign(dim, 0.0);
  m.lower.assign(dim, -std::numeric_limits<double>::infinity());
  m.upper.assign(dim, std::numeric_limits<double>::infinity());
  return m;
}

SquareMatrix metric_at(const ChartManifold& m, const Vec& x) {
  SquareMatrix g = m.metric(x);
  if (g.size() != m.dim)
    throw std::logic_error("metric callback returned wrong dimension for chart '" + m.key + "'");
  // Symmetry tolerance is loose relative to machine epsilon but tight against
  // any real modeling mistake.
  if (max_asymmetry(g) > 1e-9)
    throw DegenerateMetricError("metric not symmetric at " + point_string(x) +
                                " on chart '" + m.key + "'");
  return g;
}

SquareMatrix metric_inverse_at(const ChartManifold& m, const Vec& x) {
  auto inv = spd_inverse(metric_at(m, x));
  if (!inv)
    throw DegenerateMetricError("metric not positive definite at " + point_string(x) +
                                " on chart '" + m.key + "'");
  return *inv;
}

double inner_product(const ChartManifold& m, const Vec& x, const Vec& u, const Vec& w) {
  return quadratic_form(metric_at(m, x), u, w);
}

double metric_norm(const ChartManifold& m, const Vec& x, const Vec& v) {
  return std::sqrt(std::max(0.0, inner_product(m, x, v, v)));
}

Vec metric_normalized(const ChartManifold& m, const Vec& x, const Vec& v) {
  const double n = metric_norm(m, x, v);
  if (n < 1e-300)
    throw std::invalid_argument("cannot normalize a zero tangent vector");
  return scaled(v, 1.0 / n);
}

Christoffel3 christoffel(const ChartManifold& m, const Vec& x) {
  if (m.christoffel) return m.christoffel(x);
  return christoffel_fd(m, x);
}

Christoffel3 christoffel_fd(const ChartManifold& m, const Vec& x) {
  const int n = m.dim;
  const double h = kMetricFdStep;
  // dg[l](i,j) = d g_ij / d x_l by central differences
  std::vector<SquareMatrix> dg;
  dg.reserve(n);
  Vec xp = x, xm = x;
  for (int l = 0; l < n; ++l) {
    xp[l] = x[l] + h;
    xm[l] = x[l] - h;
    SquareMatrix gp = metric_at(m, xp);
    SquareMatrix gm = metric_at(m, xm);
    SquareMatrix d(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
    dg.push_back(d);
    xp[l] = x[l];
    xm[l] = x[l];
  }
  SquareMatrix ginv = metric_inverse_at(m, x);
  Christoffel3 gamma(n);
  // Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma.at(k, i, j) = 0.5 * s;
        gamma.at(k, j, i) = 0.5 * s;
      }
  return gamma;
}

Vec wrap_point(const ChartManifold& m, Vec x) {
  for (int i = 0; i < m.dim; ++i) {
    const double p = m.period[i];
    if (p > 0.0) {
      x[i] -= p * std::floor(x[i] / p);
      if (x[i] >= p) x[i] -= p;  // guard against floor rounding at the seam
    }
  }
  return x;
}

bool in_bounds(const ChartManifold& m, const Vec& x) {
  for (int i = 0; i < m.dim; ++i) {
    if (m.period[i] > 0.0) continue;
    if (x[i] < m.lower[i] || x[i] > m.upper[i]) return false;
  }
  return true;
}

Vec chart_displacement(const ChartManifold& m, const Vec& a, const Vec& b) {
  Vec d(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    d[i] = b[i] - a[i];
    const double p = m.period[i];
    if (p > 0.0) {
      d[i] -= p * std::round(d[i] / p);
    }
  }
  return d;
}

double chart_distance(const ChartManifold& m, const Vec& a, const Vec& b) {
  return euclidean_norm(chart_displacement(m, a, b));
}

}  // namespace geoconvex
