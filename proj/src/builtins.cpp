#include "geoconvex/builtins.hpp"

#include <stdexcept>

namespace geoconvex {

ChartManifold make_plane(int dim) {
  if (dim < 1) throw std::invalid_argument("plane dimension must be at least 1");
  ChartManifold m = make_chart("plane", dim, [dim](const Vec&) {
    return SquareMatrix::identity(dim);
  });
  m.christoffel = [dim](const Vec&) { return Christoffel3(dim); };
  return m;
}

ChartManifold make_flat_torus(Vec periods) {
  const int dim = static_cast<int>(periods.size());
  if (dim < 1) throw std::invalid_argument("torus needs at least one period");
  for (double p : periods)
    if (!(p > 0.0)) throw std::invalid_argument("torus periods must be positive");
  ChartManifold m = make_chart("torus", dim, [dim](const Vec&) {
    return SquareMatrix::identity(dim);
  });
  m.christoffel = [dim](const Vec&) { return Christoffel3(dim); };
  m.period = std::move(periods);
  return m;
}

ChartManifold make_paraboloid() {
  ChartManifold m = make_chart("paraboloid", 2, [](const Vec& p) {
    const double x = p[0], y = p[1];
    SquareMatrix g(2);
    g(0, 0) = 1.0 + 4.0 * x * x;
    g(0, 1) = g(1, 0) = 4.0 * x * y;
    g(1, 1) = 1.0 + 4.0 * y * y;
    return g;
  });
  m.christoffel = [](const Vec& p) {
    const double x = p[0], y = p[1];
    const double w = 1.0 + 4.0 * x * x + 4.0 * y * y;
    // F_xx = F_yy = 2, F_xy = 0, so Gamma^k_ij = 2 F_k delta_ij / W
    Christoffel3 gamma(2);
    gamma.at(0, 0, 0) = 4.0 * x / w;
    gamma.at(0, 1, 1) = 4.0 * x / w;
    gamma.at(1, 0, 0) = 4.0 * y / w;
    gamma.at(1, 1, 1) = 4.0 * y / w;
    return gamma;
  };
  return m;
}

double paraboloid_gauss_curvature(const Vec& xy) {
  const double w = 1.0 + 4.0 * xy[0] * xy[0] + 4.0 * xy[1] * xy[1];
  return 4.0 / (w * w);
}

double paraboloid_height(const Vec& xy) {
  return xy[0] * xy[0] + xy[1] * xy[1];
}

double paraboloid_rotation_momentum(const Vec& xy, const Vec& v) {
  // <v, -y d_x + x d_y> under the graph metric collapses to x v_y - y v_x.
  return xy[0] * v[1] - xy[1] * v[0];
}

}  // namespace geoconvex
