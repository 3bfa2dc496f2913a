#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geoconvex/convexity.hpp"
#include "geoconvex/geodesic.hpp"
#include "geoconvex/manifold.hpp"

namespace geoconvex {

struct Interval {
  double lo;
  double hi;
};

// Warping function with its first two derivatives, all analytic.
struct WarpFunction {
  std::string key;
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::function<double(double)> second;
};

// Built-in warps addressable by key: "exp", "cosh", "one".
WarpFunction make_warp(const std::string& key);

// Product chart over base x fiber with metric diag(1, g(t)^2 * fiber metric).
// fiber_curvature is an optional analytic sectional curvature for the fiber
// surface; when absent the fiber's finite-difference curvature is used.
struct WarpedProduct {
  Interval base{};
  WarpFunction warp;
  ChartManifold fiber;
  ChartManifold total;
  std::function<double(const Vec&)> fiber_curvature;
};

// Assembles the product chart. g must be positive: checked on a probe grid
// here and again at every metric evaluation. Fibers must be surfaces.
// Analytic Christoffel symbols are wired through whenever the fiber has them.
WarpedProduct assemble_warped(const Interval& base, WarpFunction warp, ChartManifold fiber);

// The exponential warp over the paraboloid; total chart key "m3".
WarpedProduct make_m3();

// V = g(t) d/dt, in chart components at the given point.
Vec conformal_field(const WarpedProduct& w, const Vec& point);
// The factor phi with D_X V = phi X; equals g'(t) here.
double conformal_factor(const WarpedProduct& w, const Vec& point);
// Gradient of phi, equal to g''(t) d/dt.
Vec conformal_factor_gradient(const WarpedProduct& w, const Vec& point);
// Componentwise max of |V|^2 grad(phi) - <V, grad(phi)> V; vanishes exactly
// because both terms are proportional to d/dt with equal coefficients.
double conformal_identity_residual(const WarpedProduct& w, const Vec& point);

// f = (1/2)<V,V> = (1/2) g(t)^2, with analytic partials (g g', 0, 0) and the
// second-derivative form <X, grad phi><V, X> + phi^2 <X, X> along geodesics.
ConvexFunction conformal_energy(const WarpedProduct& w);

// Sectional curvature of a plane tangent to the fiber:
// (K_fiber - g'(t)^2) / g(t)^2. u and v must be total-chart vectors with
// vanishing base component; the pair is orthonormalized internally and
// rejected when degenerate.
double vertical_curvature(const WarpedProduct& w, const Vec& point, const Vec& u, const Vec& v);

// Closed form for the exponential warp over the paraboloid.
double m3_vertical_curvature_formula(double t, double x, double y);

struct HessianProbe {
  double fd_second = 0.0;       // centered second difference of f along the geodesic
  double identity_value = 0.0;  // <X, grad phi><V, X> + phi^2 <X, X>
  double residual = 0.0;        // |fd_second - identity_value|
};

// Integrates the geodesic through (point, x) a short way in both directions
// and differences f along it against the analytic second-derivative form.
HessianProbe hessian_probe(const WarpedProduct& w, const Vec& point, const Vec& x);
double hessian_identity_check(const WarpedProduct& w, const Vec& point, const Vec& x);

// Max drift of E = <gamma', gamma'> along the geodesic through theta0.
// E is constant along geodesics, which is exactly what makes E useless as a
// strictly convex function on the tangent bundle.
double kinetic_energy_witness(const ChartManifold& m, const PhasePoint& theta0,
                              double duration, double step = kDefaultStep);

struct CurvatureGridRow {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double analytic = 0.0;
  double fd = 0.0;
  double abs_err = 0.0;
};

// Vertical curvature over a (t, r) grid with the fiber point at (r, 0):
// the formula route against the finite-difference route on the total metric.
std::vector<CurvatureGridRow> vertical_curvature_grid(const WarpedProduct& w,
                                                      int nt, double t_lo, double t_hi,
                                                      int nr, double r_lo, double r_hi);

}  // namespace geoconvex
