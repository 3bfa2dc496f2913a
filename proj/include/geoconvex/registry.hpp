#pragma once

#include <string>
#include <vector>

#include "geoconvex/convexity.hpp"
#include "geoconvex/manifold.hpp"
#include "geoconvex/sampling.hpp"

namespace geoconvex {

// Built-in manifolds addressable by string key: plane, torus, paraboloid, m3.
std::vector<std::string> manifold_keys();
ChartManifold make_manifold(const std::string& key);

// Sampling region used by experiments when the caller does not supply one.
DomainBox default_domain_box(const std::string& manifold_key);

// Named scalar functions; each is defined on specific manifolds and
// construction fails loudly on a mismatch.
std::vector<std::string> convex_function_keys();
ConvexFunction make_convex_function(const std::string& key, const ChartManifold& m);

// Intrinsic distance from the vertex along a paraboloid meridian,
// s(r) = (r/2) sqrt(1 + 4 r^2) + asinh(2 r) / 4.
double paraboloid_radial_arclength(double r);

}  // namespace geoconvex
