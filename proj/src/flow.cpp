#include "geoconvex/flow.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "geoconvex/parallel.hpp"

namespace geoconvex {

namespace {

int substeps_per_check(double check_dt, double step) {
  int n = static_cast<int>(std::lround(check_dt / step));
  return n < 1 ? 1 : n;
}

Vec random_euclidean_direction(int dim, std::mt19937_64& rng) {
  if (dim == 2) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    const double a = angle(rng);
    return {std::cos(a), std::sin(a)};
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Vec v(dim);
    for (double& c : v) c = gauss(rng);
    const double n = euclidean_norm(v);
    if (n > 1e-6) return scaled(v, 1.0 / n);
  }
}

}  // namespace

PhasePoint geodesic_flow(const ChartManifold& m, const PhasePoint& theta, double t,
                         double step) {
  Vec p = wrap_point(m, theta.point);
  Vec v = metric_normalized(m, p, theta.vector);
  if (t == 0.0) return {std::move(p), std::move(v)};

  const double span = std::abs(t);
  int n = static_cast<int>(std::ceil(span / step - 1e-9));
  if (n < 1) n = 1;
  const double h = (t > 0 ? span : -span) / n;
  GeodesicStepper stepper(m, {std::move(p), std::move(v)}, h);
  for (int i = 0; i < n; ++i) stepper.advance();
  if (stepper.exited()) throw std::runtime_error("flow trajectory left the chart");
  return stepper.state();
}

PhasePoint flip(const PhasePoint& theta) {
  return {theta.point, scaled(theta.vector, -1.0)};
}

double phase_distance(const ChartManifold& m, const PhasePoint& a, const PhasePoint& b) {
  const Vec dp = chart_displacement(m, a.point, b.point);
  double s = dot(dp, dp);
  for (std::size_t i = 0; i < a.vector.size(); ++i) {
    const double d = b.vector[i] - a.vector[i];
    s += d * d;
  }
  return std::sqrt(s);
}

RecurrenceStats recurrence_experiment(const ChartManifold& m, const DomainBox& box,
                                      const RecurrenceOptions& opt) {
  if (opt.n_samples < 1) throw std::invalid_argument("recurrence needs at least one sample");
  if (!(opt.epsilon > 0.0) || !(opt.horizon > 0.0))
    throw std::invalid_argument("epsilon and horizon must be positive");
  if (box.dim() != m.dim) throw std::invalid_argument("domain box dimension mismatch");

  RecurrenceStats stats;
  stats.manifold_key = m.key;
  stats.epsilon = opt.epsilon;
  stats.horizon = opt.horizon;
  stats.t_min = 10.0 * opt.epsilon;
  stats.seed = opt.seed;

  // Liouville-style product sampling, drawn sequentially so the sample list
  // is independent of the worker count.
  std::mt19937_64 rng = seeded_rng(opt.seed, 7);
  stats.samples.resize(opt.n_samples);
  for (RecurrenceSample& s : stats.samples) {
    Vec p(m.dim);
    for (int i = 0; i < m.dim; ++i) {
      std::uniform_real_distribution<double> coord(box.lo[i], box.hi[i]);
      p[i] = coord(rng);
    }
    Vec d = random_euclidean_direction(m.dim, rng);
    s.theta.vector = metric_normalized(m, p, d);
    s.theta.point = std::move(p);
  }

  const int nsub = substeps_per_check(opt.check_dt, opt.step);
  const double h = opt.check_dt / nsub;
  std::vector<double> drift(stats.samples.size(), 0.0);
  parallel_for(stats.samples.size(), opt.threads, [&](std::size_t i) {
    RecurrenceSample& s = stats.samples[i];
    GeodesicStepper stepper(m, s.theta, h);
    const long checks = std::lround(opt.horizon / opt.check_dt);
    for (long c = 1; c <= checks; ++c) {
      for (int k = 0; k < nsub; ++k) stepper.advance();
      if (stepper.exited()) return;  // escaped a bounded chart: counts as no return
      const PhasePoint& cur = stepper.state();
      drift[i] = std::max(drift[i],
                          std::abs(metric_norm(m, cur.point, cur.vector) - 1.0));
      const double t = stepper.time();
      if (t + 1e-12 < stats.t_min) continue;
      if (phase_distance(m, cur, s.theta) < opt.epsilon) {
        s.first_return = t;
        return;  // first return is all the statistic needs
      }
    }
  });

  int returned = 0;
  for (std::size_t i = 0; i < stats.samples.size(); ++i) {
    if (stats.samples[i].first_return) ++returned;
    stats.max_unit_drift = std::max(stats.max_unit_drift, drift[i]);
  }
  stats.recurrent_fraction = static_cast<double>(returned) / stats.samples.size();
  if (stats.recurrent_fraction >= 0.5) {
    stats.verdict = "consistent-with-conservative";
  } else if (stats.recurrent_fraction <= 0.05) {
    stats.verdict = "consistent-with-dissipative";
  } else {
    stats.verdict = "mixed";
  }
  return stats;
}

double flip_conjugacy_residual(const ChartManifold& m, const PhasePoint& theta,
                               double t_max, double check_dt, double step) {
  if (!(t_max > 0.0) || !(check_dt > 0.0))
    throw std::invalid_argument("flip conjugacy needs positive times");
  Vec p = wrap_point(m, theta.point);
  Vec v = metric_normalized(m, p, theta.vector);

  const int nsub = substeps_per_check(check_dt, step);
  const double h = check_dt / nsub;
  GeodesicStepper forward_of_flip(m, {p, scaled(v, -1.0)}, h);
  GeodesicStepper backward(m, {p, v}, -h);

  double worst = 0.0;
  const long checks = std::lround(t_max / check_dt);
  for (long c = 1; c <= checks; ++c) {
    for (int k = 0; k < nsub; ++k) {
      forward_of_flip.advance();
      backward.advance();
    }
    if (forward_of_flip.exited() || backward.exited()) break;
    worst = std::max(worst,
                     phase_distance(m, flip(forward_of_flip.state()), backward.state()));
  }
  return worst;
}

}  // namespace geoconvex
