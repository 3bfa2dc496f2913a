#pragma once

#include "geoconvex/manifold.hpp"

namespace geoconvex {

// Flat R^n, identity metric.
ChartManifold make_plane(int dim = 2);

// Flat torus: identity metric, every coordinate periodic.
ChartManifold make_flat_torus(Vec periods = {1.0, 1.0});

// Graph chart of the surface z = x^2 + y^2. Metric
//   g = I + 4 [x; y][x; y]^T
// with analytic Christoffel symbols Gamma^k_ij = F_k F_ij / W where
// F = x^2 + y^2 and W = 1 + 4x^2 + 4y^2.
ChartManifold make_paraboloid();

// Gauss curvature of the paraboloid in that chart: 4 / W^2.
double paraboloid_gauss_curvature(const Vec& xy);

// Height of the surface point over the chart point, z = x^2 + y^2.
double paraboloid_height(const Vec& xy);

// Conserved rotation momentum <v, d_theta> of the paraboloid in the graph
// chart; equals r^2 theta' of the polar description.
double paraboloid_rotation_momentum(const Vec& xy, const Vec& v);

}  // namespace geoconvex
