#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "geoconvex/builtins.hpp"
#include "geoconvex/curvature.hpp"
#include "geoconvex/geodesic.hpp"
#include "geoconvex/warped.hpp"

using namespace geoconvex;

namespace {

Vec sample_point(std::mt19937_64& rng, double t_half, double xy_half) {
  std::uniform_real_distribution<double> ut(-t_half, t_half);
  std::uniform_real_distribution<double> uxy(-xy_half, xy_half);
  return {ut(rng), uxy(rng), uxy(rng)};
}

Vec fd_gradient(const ConvexFunction& f, const Vec& x, double h) {
  Vec g(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f.evaluate(xp) - f.evaluate(xm)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("warp function library") {
  const WarpFunction e = make_warp("exp");
  CHECK(e.value(0.7) == doctest::Approx(std::exp(0.7)));
  CHECK(e.deriv(0.7) == doctest::Approx(std::exp(0.7)));
  CHECK(e.second(0.7) == doctest::Approx(std::exp(0.7)));

  const WarpFunction c = make_warp("cosh");
  CHECK(c.value(0.4) == doctest::Approx(std::cosh(0.4)));
  CHECK(c.deriv(0.4) == doctest::Approx(std::sinh(0.4)));
  CHECK(c.second(0.4) == doctest::Approx(std::cosh(0.4)));

  const WarpFunction one = make_warp("one");
  CHECK(one.value(-2.0) == 1.0);
  CHECK(one.deriv(3.0) == 0.0);
  CHECK(one.second(0.0) == 0.0);

  CHECK_THROWS_AS(make_warp("sqrt"), std::invalid_argument);
}

TEST_CASE("product assembly validates its inputs") {
  CHECK_THROWS_AS(assemble_warped({-1.0, 1.0}, make_warp("exp"), make_plane(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_warped({2.0, -2.0}, make_warp("exp"), make_plane(2)),
                  std::invalid_argument);

  WarpFunction linear;
  linear.key = "linear";
  linear.value = [](double t) { return t; };
  linear.deriv = [](double) { return 1.0; };
  linear.second = [](double) { return 0.0; };
  // t crosses zero inside the base interval, so the probe grid rejects it.
  CHECK_THROWS_AS(assemble_warped({-1.0, 1.0}, linear, make_plane(2)), std::invalid_argument);
}

TEST_CASE("warped metric has the expected block structure") {
  const WarpedProduct w = make_m3();
  CHECK(w.total.key == "m3");
  CHECK(w.total.dim == 3);

  const Vec p = {1.0, 0.5, -0.2};
  const SquareMatrix g = metric_at(w.total, p);
  const double s = std::exp(2.0);  // warp squared at t = 1
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(0, 1) == doctest::Approx(0.0));
  CHECK(g(0, 2) == doctest::Approx(0.0));
  CHECK(g(1, 1) == doctest::Approx(s * (1.0 + 4.0 * 0.25)));
  CHECK(g(1, 2) == doctest::Approx(s * 4.0 * 0.5 * -0.2));
  CHECK(g(2, 2) == doctest::Approx(s * (1.0 + 4.0 * 0.04)));
}

TEST_CASE("analytic product Christoffel symbols match finite differences") {
  const WarpedProduct w = make_m3();
  REQUIRE(static_cast<bool>(w.total.christoffel));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec p = sample_point(rng, 1.5, 1.5);
    const Christoffel3 an = christoffel(w.total, p);
    const Christoffel3 fd = christoffel_fd(w.total, p);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          worst = std::max(worst, std::abs(an.at(k, i, j) - fd.at(k, i, j)));
    CAPTURE(p[0]);
    CAPTURE(p[1]);
    CAPTURE(p[2]);
    CHECK(worst <= 1e-5 * std::max(1.0, std::exp(2.0 * p[0])));
  }
}

TEST_CASE("vertical curvature is 3 at the origin and follows the closed form") {
  const WarpedProduct w = make_m3();
  CHECK(m3_vertical_curvature_formula(0.0, 0.0, 0.0) == doctest::Approx(3.0));
  CHECK(vertical_curvature(w, {0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}) ==
        doctest::Approx(3.0).epsilon(1e-10));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec p = sample_point(rng, 2.0, 1.5);
    const double via_route = vertical_curvature(w, p, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0});
    const double via_formula = m3_vertical_curvature_formula(p[0], p[1], p[2]);
    CHECK(via_route == doctest::Approx(via_formula).epsilon(1e-10));
  }
}

TEST_CASE("vertical curvature rejects non-vertical or degenerate planes") {
  const WarpedProduct w = make_m3();
  const Vec p = {0.0, 0.3, 0.1};
  CHECK_THROWS_AS(vertical_curvature(w, p, {1.0, 1.0, 0.0}, {0.0, 0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(vertical_curvature(w, p, {0.0, 1.0, 0.5}, {0.0, 2.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("quotient formula agrees with finite-difference curvature of the product") {
  const WarpedProduct w = make_m3();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  int used = 0;
  for (int trial = 0; used < 100 && trial < 200; ++trial) {
    const Vec p = sample_point(rng, 1.0, 1.0);
    const Vec u = {0.0, comp(rng), comp(rng)};
    const Vec v = {0.0, comp(rng), comp(rng)};
    const double cross = u[1] * v[2] - u[2] * v[1];
    if (std::abs(cross) < 0.05) continue;  // keep the spans well conditioned
    ++used;
    const double formula = vertical_curvature(w, p, u, v);
    const double fd = sectional_curvature(w.total, p, u, v);
    const double rel = std::abs(formula - fd) / std::max(1.0, std::abs(formula));
    CAPTURE(p[0]);
    CAPTURE(p[1]);
    CAPTURE(p[2]);
    CHECK(rel <= 1e-4);
  }
  CHECK(used == 100);
}

TEST_CASE("radial planes all have curvature -1 under the exponential warp") {
  // Incidental to the vertical-plane statements, so reported rather than
  // gating: mixed planes spanned by d/dt and a fiber direction come out at
  // -g''/g = -1 everywhere.
  const WarpedProduct w = make_m3();
  const double k = sectional_curvature(w.total, {0.3, 0.4, -0.2}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
  WARN(std::abs(k + 1.0) <= 1e-3);
}

TEST_CASE("curvature grid stays above -1 and climbs past 100") {
  const WarpedProduct w = make_m3();
  const auto rows = vertical_curvature_grid(w, 13, -3.0, 3.0, 7, 0.0, 3.0);
  REQUIRE(rows.size() == 13u * 7u);

  double k_max = rows.front().analytic;
  for (const CurvatureGridRow& r : rows) {
    CHECK(r.analytic > -1.0);
    k_max = std::max(k_max, r.analytic);
    CHECK(r.abs_err / std::max(1.0, std::abs(r.analytic)) <= 1e-4);
  }
  CHECK(k_max > 100.0);

  // Along the axis the curvature decays monotonically toward -1 as t grows.
  double prev = 1e300;
  for (const CurvatureGridRow& r : rows) {
    if (r.x != 0.0 || r.y != 0.0) continue;
    CHECK(r.analytic < prev);
    prev = r.analytic;
  }
  CHECK(prev == doctest::Approx(4.0 * std::exp(-6.0) - 1.0));
}

TEST_CASE("conformal field scales the base direction") {
  const WarpedProduct w = make_m3();
  const Vec p = {0.8, 0.2, -0.5};
  const Vec V = conformal_field(w, p);
  CHECK(V[0] == doctest::Approx(std::exp(0.8)));
  CHECK(V[1] == 0.0);
  CHECK(V[2] == 0.0);
  CHECK(conformal_factor(w, p) == doctest::Approx(std::exp(0.8)));
  const Vec gp = conformal_factor_gradient(w, p);
  CHECK(gp[0] == doctest::Approx(std::exp(0.8)));
  CHECK(gp[1] == 0.0);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec q = sample_point(rng, 3.0, 2.0);
    CHECK(conformal_identity_residual(w, q) <= 1e-12);
  }
}

TEST_CASE("energy of the conformal field and its derivatives") {
  const WarpedProduct w = make_m3();
  const ConvexFunction f = conformal_energy(w);
  CHECK(f.manifold_key == "m3");
  CHECK(f.evaluate({0.0, 0.7, -0.3}) == doctest::Approx(0.5));
  CHECK(f.evaluate({1.0, 0.0, 0.0}) == doctest::Approx(0.5 * std::exp(2.0)));

  REQUIRE(static_cast<bool>(f.gradient));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec p = sample_point(rng, 1.5, 1.5);
    const Vec an = f.gradient(p);
    const Vec fd = fd_gradient(f, p, 1e-5);
    for (int c = 0; c < 3; ++c) {
      const double rel = std::abs(an[c] - fd[c]) / std::max(1.0, std::abs(an[c]));
      CHECK(rel <= 1e-5);
    }
  }

  REQUIRE(static_cast<bool>(f.hessian_form));
  // At the origin with X = d/dt: g''g + g'^2 = 2, matching (e^{2t}/2)'' there.
  CHECK(f.hessian_form({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}) == doctest::Approx(2.0));
}

TEST_CASE("second derivative along geodesics matches the conformal identity") {
  const WarpedProduct w = make_m3();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec p = sample_point(rng, 1.0, 1.0);
    Vec x = {comp(rng), comp(rng), comp(rng)};
    if (metric_norm(w.total, p, x) < 0.1) x = {1.0, 0.2, 0.1};
    x = metric_normalized(w.total, p, x);
    const HessianProbe probe = hessian_probe(w, p, x);
    CAPTURE(p[0]);
    CAPTURE(probe.identity_value);
    CHECK(probe.residual <= 1e-4);
  }
}

TEST_CASE("vertical directions realize the uniform positivity floor") {
  // With no base component the first identity term drops and the second
  // difference sits right at phi^2 |X|^2.
  const WarpedProduct w = make_m3();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec p = sample_point(rng, 1.0, 1.0);
    Vec x = {0.0, comp(rng), comp(rng)};
    if (std::abs(x[1]) + std::abs(x[2]) < 0.1) x[1] = 1.0;
    x = metric_normalized(w.total, p, x);
    const double phi = conformal_factor(w, p);
    const HessianProbe probe = hessian_probe(w, p, x);
    CHECK(probe.identity_value == doctest::Approx(phi * phi).epsilon(1e-10));
    CHECK(probe.fd_second >= 0.999 * phi * phi);
  }
}

TEST_CASE("trivial warp has flat energy") {
  const WarpedProduct flat = assemble_warped({-5.0, 5.0}, make_warp("one"), make_paraboloid());
  const ConvexFunction f = conformal_energy(flat);
  CHECK(f.evaluate({0.3, 0.1, 0.2}) == doctest::Approx(0.5));
  const HessianProbe probe = hessian_probe(flat, {0.2, 0.4, -0.1}, {0.5, 0.5, 0.5});
  CHECK(probe.identity_value == 0.0);
  CHECK(std::abs(probe.fd_second) <= 1e-9);
}

TEST_CASE("kinetic energy is flat along the flow and useless as a potential") {
  const ChartManifold plane = make_plane();
  CHECK(kinetic_energy_witness(plane, {{0.1, 0.2}, {0.7, -0.4}}, 10.0) == 0.0);

  const ChartManifold pb = make_paraboloid();
  const Vec v0 = metric_normalized(pb, {1.0, 0.0}, {0.3, 1.0});
  CHECK(kinetic_energy_witness(pb, {{1.0, 0.0}, v0}, 10.0) <= 1e-8);

  const WarpedProduct w = make_m3();
  const Vec p = {0.0, 0.5, 0.2};
  const Vec u = metric_normalized(w.total, p, {0.4, 1.0, -0.3});
  CHECK(kinetic_energy_witness(w.total, {p, u}, 10.0) <= 1e-8);

  // The witness inherits the integrator's fourth-order step scaling.
  const double coarse = kinetic_energy_witness(pb, {{1.0, 0.0}, v0}, 2.0, 0.04);
  const double fine = kinetic_energy_witness(pb, {{1.0, 0.0}, v0}, 2.0, 0.02);
  REQUIRE(fine > 1e-13);
  CHECK(coarse / fine >= 8.0);
  CHECK(coarse / fine <= 32.0);
}
