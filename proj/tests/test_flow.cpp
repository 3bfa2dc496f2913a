#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "geoconvex/builtins.hpp"
#include "geoconvex/flow.hpp"
#include "geoconvex/geodesic.hpp"
#include "geoconvex/registry.hpp"
#include "geoconvex/sampling.hpp"

using namespace geoconvex;

namespace {

PhasePoint random_torus_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::acos(-1.0));
  const double a = ang(rng);
  return {{coord(rng), coord(rng)}, {std::cos(a), std::sin(a)}};
}

}  // namespace

TEST_CASE("zero-time flow is the identity up to wrapping and normalization") {
  const ChartManifold torus = make_flat_torus();
  const PhasePoint theta{{1.2, -0.3}, {2.0, 0.0}};
  const PhasePoint out = geodesic_flow(torus, theta, 0.0);
  CHECK(out.point[0] == doctest::Approx(0.2));
  CHECK(out.point[1] == doctest::Approx(0.7));
  CHECK(out.vector[0] == doctest::Approx(1.0));
  CHECK(out.vector[1] == doctest::Approx(0.0));
}

TEST_CASE("flow along a torus period returns to the start") {
  const ChartManifold torus = make_flat_torus();
  const PhasePoint theta{{0.2, 0.3}, {1.0, 0.0}};

  // Distance to the start first drops under 0.05 just before the full period.
  GeodesicStepper st(torus, theta, 1e-3);
  double first = -1.0;
  while (st.time() < 2.0) {
    for (int i = 0; i < 10; ++i) st.advance();
    if (st.time() > 0.5 && phase_distance(torus, st.state(), theta) < 0.05) {
      first = st.time();
      break;
    }
  }
  CHECK(first >= 0.95);
  CHECK(first <= 0.97);

  const PhasePoint back = geodesic_flow(torus, theta, 1.0);
  CHECK(phase_distance(torus, back, theta) <= 1e-9);
}

TEST_CASE("flowing for t then s matches flowing for t + s") {
  const ChartManifold torus = make_flat_torus();
  std::mt19937_64 rng(31);
  const double legs[] = {0.5, 1.0, 2.0};
  for (int trial = 0; trial < 10; ++trial) {
    const PhasePoint theta = random_torus_state(rng);
    for (double s : legs) {
      for (double t : legs) {
        const PhasePoint split = geodesic_flow(torus, geodesic_flow(torus, theta, s), t);
        const PhasePoint joint = geodesic_flow(torus, theta, s + t);
        CHECK(phase_distance(torus, split, joint) <= 1e-7);
      }
    }
  }

  const ChartManifold pb = make_paraboloid();
  const PhasePoint theta{{1.0, 0.0}, metric_normalized(pb, {1.0, 0.0}, {0.3, 1.0})};
  const PhasePoint split = geodesic_flow(pb, geodesic_flow(pb, theta, 1.5), 0.5);
  const PhasePoint joint = geodesic_flow(pb, theta, 2.0);
  CHECK(phase_distance(pb, split, joint) <= 1e-7);
}

TEST_CASE("backward flow undoes forward flow") {
  const ChartManifold pb = make_paraboloid();
  const PhasePoint theta{{0.8, -0.2}, metric_normalized(pb, {0.8, -0.2}, {0.4, 0.9})};
  const PhasePoint there = geodesic_flow(pb, theta, 2.0);
  const PhasePoint home = geodesic_flow(pb, there, -2.0);
  CHECK(phase_distance(pb, home, theta) <= 1e-9);
}

TEST_CASE("flip is an exact involution") {
  const PhasePoint theta{{0.1, 0.2}, {0.3, -0.4}};
  const PhasePoint twice = flip(flip(theta));
  CHECK(twice.point == theta.point);
  CHECK(twice.vector == theta.vector);
  CHECK(flip(theta).vector[0] == -0.3);
}

TEST_CASE("time reversal conjugates the flow through the flip") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::acos(-1.0));

  const ChartManifold charts[] = {make_plane(), make_flat_torus(), make_paraboloid()};
  for (const ChartManifold& m : charts) {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Vec p = {coord(rng), coord(rng)};
      if (m.period[0] > 0.0) p = wrap_point(m, p);
      const double a = ang(rng);
      const PhasePoint theta{p, metric_normalized(m, p, {std::cos(a), std::sin(a)})};
      worst = std::max(worst, flip_conjugacy_residual(m, theta, 5.0));
    }
    CAPTURE(m.key);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("torus flow lines come back, plane flow lines leave for good") {
  const ChartManifold torus = make_flat_torus();
  RecurrenceOptions opt;
  opt.n_samples = 120;
  const RecurrenceStats ts = recurrence_experiment(torus, default_domain_box("torus"), opt);
  CHECK(ts.t_min == doctest::Approx(0.5));
  CHECK(ts.recurrent_fraction >= 0.95);
  CHECK(ts.max_unit_drift <= 1e-8);
  CHECK(ts.verdict == "consistent-with-conservative");

  std::vector<double> returns;
  for (const RecurrenceSample& s : ts.samples)
    if (s.first_return) returns.push_back(*s.first_return);
  REQUIRE(returns.size() >= 114u);
  std::sort(returns.begin(), returns.end());
  const double median = returns[returns.size() / 2];
  // Lattice geometry puts typical first returns below a couple of dozen
  // time units at this radius; far smaller than the horizon.
  CHECK(median >= 2.0);
  CHECK(median <= 15.0);
  for (double r : returns) CHECK(r >= ts.t_min - 1e-12);

  const ChartManifold plane = make_plane();
  RecurrenceOptions popt;
  popt.n_samples = 60;
  popt.horizon = 50.0;
  const RecurrenceStats ps = recurrence_experiment(plane, default_domain_box("plane"), popt);
  CHECK(ps.recurrent_fraction == 0.0);
  CHECK(ps.verdict == "consistent-with-dissipative");
}

TEST_CASE("recurrence runs are reproducible and thread-count independent") {
  const ChartManifold torus = make_flat_torus();
  RecurrenceOptions a;
  a.n_samples = 40;
  a.horizon = 60.0;
  a.threads = 1;
  RecurrenceOptions b = a;
  b.threads = 4;
  const RecurrenceStats ra = recurrence_experiment(torus, default_domain_box("torus"), a);
  const RecurrenceStats rb = recurrence_experiment(torus, default_domain_box("torus"), b);
  REQUIRE(ra.samples.size() == rb.samples.size());
  CHECK(ra.recurrent_fraction == rb.recurrent_fraction);
  for (std::size_t i = 0; i < ra.samples.size(); ++i) {
    CHECK(ra.samples[i].theta.point == rb.samples[i].theta.point);
    CHECK(ra.samples[i].first_return.has_value() == rb.samples[i].first_return.has_value());
    if (ra.samples[i].first_return)
      CHECK(*ra.samples[i].first_return == *rb.samples[i].first_return);
  }

  RecurrenceOptions c = a;
  c.seed = 99;
  const RecurrenceStats rc = recurrence_experiment(torus, default_domain_box("torus"), c);
  bool same_start = true;
  for (std::size_t i = 0; i < rc.samples.size() && same_start; ++i)
    same_start = rc.samples[i].theta.point == ra.samples[i].theta.point;
  CHECK_FALSE(same_start);
}

TEST_CASE("flow refuses to silently leave a bounded chart") {
  ChartManifold strip = make_plane();
  strip.key = "strip";
  strip.upper = {0.5, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(geodesic_flow(strip, {{0.0, 0.0}, {1.0, 0.0}}, 2.0), std::runtime_error);
}
