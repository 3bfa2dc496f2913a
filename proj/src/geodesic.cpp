#include "geoconvex/geodesic.hpp"

#include <cmath>
#include <stdexcept>

namespace geoconvex {

namespace {

// Acceleration a^k = -Gamma^k_ij v^i v^j
Vec geodesic_acceleration(const ChartManifold& m, const Vec& x, const Vec& v) {
  const Christoffel3 gamma = christoffel(m, x);
  const int n = m.dim;
  Vec a(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += gamma.at(k, i, j) * v[i] * v[j];
    a[k] = -s;
  }
  return a;
}

int step_count(double duration, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step size must be positive");
  if (!(duration > 0.0)) throw std::invalid_argument("integration duration must be positive");
  const double raw = duration / step;
  int n = static_cast<int>(std::ceil(raw - 1e-9));
  return n < 1 ? 1 : n;
}

}  // namespace

GeodesicStepper::GeodesicStepper(const ChartManifold& m, PhasePoint y0, double step)
    : m_(&m), y_(std::move(y0)), h_(step) {
  if (h_ == 0.0) throw std::invalid_argument("step size must be nonzero");
  if (static_cast<int>(y_.point.size()) != m.dim ||
      static_cast<int>(y_.vector.size()) != m.dim)
    throw std::invalid_argument("phase point dimension does not match chart");
}

void GeodesicStepper::advance() {
  const ChartManifold& m = *m_;
  const double h = h_;
  const Vec& x = y_.point;
  const Vec& v = y_.vector;

  const Vec a1 = geodesic_acceleration(m, x, v);
  const Vec x2 = axpy(h / 2, v, x), v2 = axpy(h / 2, a1, v);
  const Vec a2 = geodesic_acceleration(m, x2, v2);
  const Vec x3 = axpy(h / 2, v2, x), v3 = axpy(h / 2, a2, v);
  const Vec a3 = geodesic_acceleration(m, x3, v3);
  const Vec x4 = axpy(h, v3, x), v4 = axpy(h, a3, v);
  const Vec a4 = geodesic_acceleration(m, x4, v4);

  Vec xn(m.dim), vn(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    xn[i] = x[i] + h / 6.0 * (v[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
    vn[i] = v[i] + h / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
  }
  y_.point = wrap_point(m, std::move(xn));
  y_.vector = std::move(vn);
  t_ += h;
  if (!exited_ && !in_bounds(m, y_.point)) exited_ = true;
}

GeodesicPath geodesic_integrate(const ChartManifold& m, const PhasePoint& theta0,
                                double duration, double step) {
  const int n = step_count(duration, step);
  const double h = duration / n;

  GeodesicPath path;
  path.step = h;
  path.times.reserve(n + 1);
  path.states.reserve(n + 1);
  PhasePoint start = theta0;
  start.point = wrap_point(m, std::move(start.point));
  path.times.push_back(0.0);
  path.states.push_back(start);

  GeodesicStepper stepper(m, start, h);
  for (int i = 1; i <= n; ++i) {
    stepper.advance();
    path.times.push_back(stepper.time());
    path.states.push_back(stepper.state());
    if (stepper.exited()) {
      path.status = PathStatus::kChartExit;
      path.exit_time = stepper.time();
      break;
    }
  }
  return path;
}

Vec exp_map(const ChartManifold& m, const Vec& p, const Vec& v) {
  const double len = metric_norm(m, p, v);
  if (len == 0.0) return wrap_point(m, p);
  // Roughly 0.01 arclength per substep, floor of 8 for short steps.
  int n = static_cast<int>(std::ceil(len / 0.01));
  if (n < 8) n = 8;
  GeodesicStepper stepper(m, PhasePoint{wrap_point(m, p), v}, 1.0 / n);
  for (int i = 0; i < n; ++i) stepper.advance();
  return stepper.state().point;
}

Vec parallel_transport(const ChartManifold& m, const GeodesicPath& path, const Vec& w0) {
  if (path.states.empty()) throw std::invalid_argument("empty path");
  const double h = path.step;
  const int nsteps = static_cast<int>(path.states.size()) - 1;
  Vec x = path.states.front().point;
  Vec v = path.states.front().vector;
  Vec w = w0;
  const int n = m.dim;

  // Transport equation w' = -Gamma(x)(v, w) integrated together with the
  // geodesic itself so Christoffel evaluations land on the RK4 stage points.
  auto stage = [&](const Vec& xs, const Vec& vs, const Vec& ws, Vec& dx, Vec& dv, Vec& dw) {
    const Christoffel3 gamma = christoffel(m, xs);
    dx = vs;
    dv.assign(n, 0.0);
    dw.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
      double sv = 0.0, sw = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          sv += gamma.at(k, i, j) * vs[i] * vs[j];
          sw += gamma.at(k, i, j) * vs[i] * ws[j];
        }
      dv[k] = -sv;
      dw[k] = -sw;
    }
  };

  Vec dx1, dv1, dw1, dx2, dv2, dw2, dx3, dv3, dw3, dx4, dv4, dw4;
  for (int s = 0; s < nsteps; ++s) {
    stage(x, v, w, dx1, dv1, dw1);
    stage(axpy(h / 2, dx1, x), axpy(h / 2, dv1, v), axpy(h / 2, dw1, w), dx2, dv2, dw2);
    stage(axpy(h / 2, dx2, x), axpy(h / 2, dv2, v), axpy(h / 2, dw2, w), dx3, dv3, dw3);
    stage(axpy(h, dx3, x), axpy(h, dv3, v), axpy(h, dw3, w), dx4, dv4, dw4);
    for (int i = 0; i < n; ++i) {
      x[i] += h / 6.0 * (dx1[i] + 2.0 * dx2[i] + 2.0 * dx3[i] + dx4[i]);
      v[i] += h / 6.0 * (dv1[i] + 2.0 * dv2[i] + 2.0 * dv3[i] + dv4[i]);
      w[i] += h / 6.0 * (dw1[i] + 2.0 * dw2[i] + 2.0 * dw3[i] + dw4[i]);
    }
    x = wrap_point(m, std::move(x));
  }
  return w;
}

}  // namespace geoconvex
