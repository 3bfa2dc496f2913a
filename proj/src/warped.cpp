#include "geoconvex/warped.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "geoconvex/builtins.hpp"
#include "geoconvex/curvature.hpp"

namespace geoconvex {

namespace {

constexpr double kVerticalTol = 1e-12;

void require_warp(const WarpFunction& w) {
  if (!w.value || !w.deriv || !w.second)
    throw std::invalid_argument("warp function needs value, deriv, and second callbacks");
}

double warp_value_checked(const WarpFunction& w, double t) {
  const double g = w.value(t);
  if (!(g > 0.0))
    throw DegenerateMetricError("warp factor is not positive at t = " + std::to_string(t));
  return g;
}

Vec fiber_part(const Vec& x) { return Vec(x.begin() + 1, x.end()); }

}  // namespace

WarpFunction make_warp(const std::string& key) {
  WarpFunction w;
  w.key = key;
  if (key == "exp") {
    w.value = [](double t) { return std::exp(t); };
    w.deriv = w.value;
    w.second = w.value;
  } else if (key == "cosh") {
    w.value = [](double t) { return std::cosh(t); };
    w.deriv = [](double t) { return std::sinh(t); };
    w.second = w.value;
  } else if (key == "one") {
    w.value = [](double) { return 1.0; };
    w.deriv = [](double) { return 0.0; };
    w.second = [](double) { return 0.0; };
  } else {
    throw std::invalid_argument("unknown warp key: " + key);
  }
  return w;
}

WarpedProduct assemble_warped(const Interval& base, WarpFunction warp, ChartManifold fiber) {
  require_warp(warp);
  if (fiber.dim != 2) throw std::invalid_argument("warped fibers must be surfaces");
  if (!(base.lo < base.hi)) throw std::invalid_argument("empty base interval");

  // Positivity probe across the (clamped) base interval; evaluation-time
  // checks still guard points the probe grid missed.
  const double a = std::max(base.lo, -50.0);
  const double b = std::min(base.hi, 50.0);
  for (int i = 0; i <= 100; ++i) {
    const double t = a + (b - a) * i / 100.0;
    if (!(warp.value(t) > 0.0))
      throw std::invalid_argument("warp factor must be positive on the base interval");
  }

  ChartManifold total;
  total.key = warp.key + "-warp-" + fiber.key;
  total.dim = 1 + fiber.dim;
  total.period = Vec{0.0};
  total.lower = Vec{base.lo};
  total.upper = Vec{base.hi};
  total.period.insert(total.period.end(), fiber.period.begin(), fiber.period.end());
  total.lower.insert(total.lower.end(), fiber.lower.begin(), fiber.lower.end());
  total.upper.insert(total.upper.end(), fiber.upper.begin(), fiber.upper.end());

  const WarpFunction wf = warp;
  const ChartManifold fib = fiber;
  total.metric = [wf, fib](const Vec& x) {
    const double g = warp_value_checked(wf, x[0]);
    const SquareMatrix gf = metric_at(fib, fiber_part(x));
    SquareMatrix out(1 + fib.dim);
    out(0, 0) = 1.0;
    for (int i = 0; i < fib.dim; ++i)
      for (int j = 0; j < fib.dim; ++j) out(i + 1, j + 1) = g * g * gf(i, j);
    return out;
  };

  if (fiber.christoffel) {
    total.christoffel = [wf, fib](const Vec& x) {
      const double g = warp_value_checked(wf, x[0]);
      const double gp = wf.deriv(x[0]);
      const Vec xf = fiber_part(x);
      const SquareMatrix gf = metric_at(fib, xf);
      const Christoffel3 gamma_f = fib.christoffel(xf);
      Christoffel3 out(1 + fib.dim);
      for (int a2 = 0; a2 < fib.dim; ++a2) {
        for (int b2 = 0; b2 < fib.dim; ++b2) {
          out.at(0, a2 + 1, b2 + 1) = -g * gp * gf(a2, b2);
          for (int c = 0; c < fib.dim; ++c)
            out.at(c + 1, a2 + 1, b2 + 1) = gamma_f.at(c, a2, b2);
        }
        out.at(a2 + 1, 0, a2 + 1) = gp / g;
        out.at(a2 + 1, a2 + 1, 0) = gp / g;
      }
      return out;
    };
  }

  WarpedProduct out;
  out.base = base;
  out.warp = std::move(warp);
  out.fiber = std::move(fiber);
  out.total = std::move(total);
  return out;
}

WarpedProduct make_m3() {
  const double inf = std::numeric_limits<double>::infinity();
  WarpedProduct w = assemble_warped({-inf, inf}, make_warp("exp"), make_paraboloid());
  w.total.key = "m3";
  w.fiber_curvature = [](const Vec& xy) { return paraboloid_gauss_curvature(xy); };
  return w;
}

Vec conformal_field(const WarpedProduct& w, const Vec& point) {
  Vec v(w.total.dim, 0.0);
  v[0] = warp_value_checked(w.warp, point[0]);
  return v;
}

double conformal_factor(const WarpedProduct& w, const Vec& point) {
  return w.warp.deriv(point[0]);
}

Vec conformal_factor_gradient(const WarpedProduct& w, const Vec& point) {
  Vec v(w.total.dim, 0.0);
  v[0] = w.warp.second(point[0]);
  return v;
}

double conformal_identity_residual(const WarpedProduct& w, const Vec& point) {
  const Vec v = conformal_field(w, point);
  const Vec gphi = conformal_factor_gradient(w, point);
  const double vv = inner_product(w.total, point, v, v);
  const double vg = inner_product(w.total, point, v, gphi);
  double res = 0.0;
  for (int i = 0; i < w.total.dim; ++i)
    res = std::max(res, std::abs(vv * gphi[i] - vg * v[i]));
  return res;
}

ConvexFunction conformal_energy(const WarpedProduct& w) {
  ConvexFunction f;
  f.key = "energy";
  f.manifold_key = w.total.key;
  const WarpFunction wf = w.warp;
  const ChartManifold total = w.total;
  const int dim = total.dim;
  f.evaluate = [wf](const Vec& x) {
    const double g = wf.value(x[0]);
    return 0.5 * g * g;
  };
  f.gradient = [wf, dim](const Vec& x) {
    Vec grad(dim, 0.0);
    grad[0] = wf.value(x[0]) * wf.deriv(x[0]);
    return grad;
  };
  f.hessian_form = [wf, total](const Vec& x, const Vec& u) {
    const double g = wf.value(x[0]);
    const double gp = wf.deriv(x[0]);
    const double gpp = wf.second(x[0]);
    return gpp * g * u[0] * u[0] + gp * gp * inner_product(total, x, u, u);
  };
  return f;
}

double vertical_curvature(const WarpedProduct& w, const Vec& point, const Vec& u, const Vec& v) {
  const int n = w.total.dim;
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n ||
      static_cast<int>(point.size()) != n)
    throw std::invalid_argument("vertical_curvature expects total-chart vectors");
  const double su = euclidean_norm(u), sv = euclidean_norm(v);
  if (std::abs(u[0]) > kVerticalTol * std::max(1.0, su) ||
      std::abs(v[0]) > kVerticalTol * std::max(1.0, sv))
    throw std::invalid_argument("plane is not vertical");

  // Gram-Schmidt in the total metric, only to reject degenerate spans; the
  // curvature value itself is basis invariant.
  Vec e1 = metric_normalized(w.total, point, u);
  const double c = inner_product(w.total, point, v, e1);
  const Vec r = axpy(-c, e1, v);
  if (metric_norm(w.total, point, r) <= kVerticalTol * std::max(1.0, metric_norm(w.total, point, v)))
    throw std::invalid_argument("vertical vectors do not span a plane");

  const Vec xf = fiber_part(point);
  double k_fiber;
  if (w.fiber_curvature) {
    k_fiber = w.fiber_curvature(xf);
  } else {
    k_fiber = sectional_curvature(w.fiber, xf, fiber_part(u), fiber_part(v));
  }
  const double g = warp_value_checked(w.warp, point[0]);
  const double gp = w.warp.deriv(point[0]);
  return (k_fiber - gp * gp) / (g * g);
}

double m3_vertical_curvature_formula(double t, double x, double y) {
  const double w = 1.0 + 4.0 * x * x + 4.0 * y * y;
  return std::exp(-2.0 * t) * (4.0 / (w * w) - std::exp(2.0 * t));
}

HessianProbe hessian_probe(const WarpedProduct& w, const Vec& point, const Vec& x) {
  const double delta = 1e-3;
  const double step = delta / 10.0;
  const ConvexFunction f = conformal_energy(w);

  Vec neg = scaled(x, -1.0);
  const GeodesicPath fwd = geodesic_integrate(w.total, {point, x}, delta, step);
  const GeodesicPath bwd = geodesic_integrate(w.total, {point, neg}, delta, step);

  HessianProbe probe;
  const double f0 = f.evaluate(point);
  const double fp = f.evaluate(fwd.states.back().point);
  const double fm = f.evaluate(bwd.states.back().point);
  probe.fd_second = (fp - 2.0 * f0 + fm) / (delta * delta);

  const Vec vfield = conformal_field(w, point);
  const Vec gphi = conformal_factor_gradient(w, point);
  const double phi = conformal_factor(w, point);
  probe.identity_value = inner_product(w.total, point, x, gphi) *
                             inner_product(w.total, point, vfield, x) +
                         phi * phi * inner_product(w.total, point, x, x);
  probe.residual = std::abs(probe.fd_second - probe.identity_value);
  return probe;
}

double hessian_identity_check(const WarpedProduct& w, const Vec& point, const Vec& x) {
  return hessian_probe(w, point, x).residual;
}

double kinetic_energy_witness(const ChartManifold& m, const PhasePoint& theta0,
                              double duration, double step) {
  const GeodesicPath path = geodesic_integrate(m, theta0, duration, step);
  double e0 = 0.0;
  double drift = 0.0;
  bool first = true;
  for (const PhasePoint& s : path.states) {
    const double e = inner_product(m, s.point, s.vector, s.vector);
    if (first) {
      e0 = e;
      first = false;
    } else {
      drift = std::max(drift, std::abs(e - e0));
    }
  }
  return drift;
}

std::vector<CurvatureGridRow> vertical_curvature_grid(const WarpedProduct& w,
                                                      int nt, double t_lo, double t_hi,
                                                      int nr, double r_lo, double r_hi) {
  if (nt < 2 || nr < 2) throw std::invalid_argument("curvature grid needs at least 2x2 nodes");
  std::vector<CurvatureGridRow> rows;
  rows.reserve(static_cast<std::size_t>(nt) * nr);
  const Vec e1 = {0.0, 1.0, 0.0};
  const Vec e2 = {0.0, 0.0, 1.0};
  for (int i = 0; i < nt; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (nt - 1);
    for (int j = 0; j < nr; ++j) {
      const double r = r_lo + (r_hi - r_lo) * j / (nr - 1);
      const Vec p = {t, r, 0.0};
      CurvatureGridRow row;
      row.t = t;
      row.x = r;
      row.y = 0.0;
      row.analytic = vertical_curvature(w, p, e1, e2);
      row.fd = sectional_curvature(w.total, p, e1, e2);
      row.abs_err = std::abs(row.analytic - row.fd);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace geoconvex
