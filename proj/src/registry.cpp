#include "geoconvex/registry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geoconvex/builtins.hpp"
#include "geoconvex/warped.hpp"

namespace geoconvex {

namespace {

void require_manifold(const ConvexFunction& f, const ChartManifold& m,
                      std::initializer_list<const char*> allowed) {
  for (const char* key : allowed)
    if (m.key == key) return;
  std::string msg = "function '" + f.key + "' is not defined on manifold '" + m.key +
                    "'; allowed:";
  for (const char* key : allowed) msg += std::string(" ") + key;
  throw std::invalid_argument(msg);
}

}  // namespace

std::vector<std::string> manifold_keys() { return {"plane", "torus", "paraboloid", "m3"}; }

ChartManifold make_manifold(const std::string& key) {
  if (key == "plane") return make_plane();
  if (key == "torus") return make_flat_torus();
  if (key == "paraboloid") return make_paraboloid();
  if (key == "m3") return make_m3().total;
  throw std::invalid_argument("unknown manifold key: " + key);
}

DomainBox default_domain_box(const std::string& manifold_key) {
  if (manifold_key == "plane") return {{-2.0, -2.0}, {2.0, 2.0}};
  if (manifold_key == "torus") return {{0.0, 0.0}, {1.0, 1.0}};
  if (manifold_key == "paraboloid") return {{-2.0, -2.0}, {2.0, 2.0}};
  if (manifold_key == "m3") return {{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
  throw std::invalid_argument("unknown manifold key: " + manifold_key);
}

std::vector<std::string> convex_function_keys() {
  return {"zero",   "sqnorm",       "coord-x", "sin2pix",
          "height", "height-hinge", "radial-arclength-squared", "energy"};
}

double paraboloid_radial_arclength(double r) {
  return 0.5 * r * std::sqrt(1.0 + 4.0 * r * r) + 0.25 * std::asinh(2.0 * r);
}

ConvexFunction make_convex_function(const std::string& key, const ChartManifold& m) {
  ConvexFunction f;
  f.key = key;
  f.manifold_key = m.key;
  const int dim = m.dim;

  if (key == "zero") {
    f.evaluate = [](const Vec&) { return 0.0; };
    f.gradient = [dim](const Vec&) { return Vec(dim, 0.0); };
    f.hessian_form = [](const Vec&, const Vec&) { return 0.0; };
    return f;
  }
  if (key == "sqnorm") {
    require_manifold(f, m, {"plane"});
    f.evaluate = [](const Vec& x) { return dot(x, x); };
    f.gradient = [](const Vec& x) { return scaled(x, 2.0); };
    return f;
  }
  if (key == "coord-x") {
    require_manifold(f, m, {"plane"});
    f.evaluate = [](const Vec& x) { return x[0]; };
    f.gradient = [dim](const Vec&) {
      Vec g(dim, 0.0);
      g[0] = 1.0;
      return g;
    };
    return f;
  }
  if (key == "sin2pix") {
    require_manifold(f, m, {"torus", "plane"});
    f.evaluate = [](const Vec& x) { return std::sin(2.0 * std::numbers::pi * x[0]); };
    f.gradient = [dim](const Vec& x) {
      Vec g(dim, 0.0);
      g[0] = 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * x[0]);
      return g;
    };
    return f;
  }
  if (key == "height") {
    require_manifold(f, m, {"paraboloid"});
    f.evaluate = [](const Vec& x) { return paraboloid_height(x); };
    f.gradient = [](const Vec& x) { return scaled(x, 2.0); };
    return f;
  }
  if (key == "height-hinge") {
    require_manifold(f, m, {"paraboloid"});
    f.evaluate = [](const Vec& x) { return std::max(paraboloid_height(x) - 1.0, 0.0); };
    f.gradient = [dim](const Vec& x) {
      return paraboloid_height(x) > 1.0 ? scaled(x, 2.0) : Vec(dim, 0.0);
    };
    return f;
  }
  if (key == "radial-arclength-squared") {
    require_manifold(f, m, {"paraboloid"});
    f.evaluate = [](const Vec& x) {
      const double s = paraboloid_radial_arclength(euclidean_norm(x));
      return s * s;
    };
    f.gradient = [dim](const Vec& x) {
      const double r = euclidean_norm(x);
      if (r < 1e-12) return Vec(dim, 0.0);
      const double s = paraboloid_radial_arclength(r);
      const double ds = std::sqrt(1.0 + 4.0 * r * r);  // d s / d r
      return scaled(x, 2.0 * s * ds / r);
    };
    return f;
  }
  if (key == "energy") {
    require_manifold(f, m, {"m3"});
    ConvexFunction e = conformal_energy(make_m3());
    return e;
  }
  throw std::invalid_argument("unknown function key: " + key);
}

}  // namespace geoconvex
