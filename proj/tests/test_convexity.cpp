#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "geoconvex/builtins.hpp"
#include "geoconvex/convexity.hpp"
#include "geoconvex/registry.hpp"
#include "geoconvex/warped.hpp"

using namespace geoconvex;

namespace {

ConvexFunction plane_quadratic(double ax, double ay) {
  ConvexFunction f;
  f.key = "quadratic";
  f.manifold_key = "plane";
  f.evaluate = [ax, ay](const Vec& x) { return ax * x[0] * x[0] + ay * x[1] * x[1]; };
  f.gradient = [ax, ay](const Vec& x) { return Vec{2.0 * ax * x[0], 2.0 * ay * x[1]}; };
  return f;
}

}  // namespace

TEST_CASE("margin bands map to verdicts") {
  CHECK(verdict_for_margin(1e-6, 1e-7) == ConvexityVerdict::kStrictlyConvex);
  CHECK(verdict_for_margin(5e-8, 1e-7) == ConvexityVerdict::kConvex);
  CHECK(verdict_for_margin(-5e-8, 1e-7) == ConvexityVerdict::kConvex);
  CHECK(verdict_for_margin(-1e-6, 1e-7) == ConvexityVerdict::kNonConvex);
  CHECK(to_string(ConvexityVerdict::kStrictlyConvex) == "strictly-convex");
  CHECK(to_string(ConvexityVerdict::kInconclusive) == "inconclusive");
}

TEST_CASE("squared norm on the plane is strictly convex with margin 2") {
  const ChartManifold plane = make_plane();
  const ConvexFunction f = make_convex_function("sqnorm", plane);
  const ConvexityReport rep = certify(plane, f, default_domain_box("plane"), {});
  CHECK(rep.verdict == ConvexityVerdict::kStrictlyConvex);
  CHECK(rep.margin == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.truncated == 0);
  CHECK(rep.geodesics_used == 100);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->second_difference == doctest::Approx(rep.margin));
}

TEST_CASE("anisotropic quadratic margin approaches twice the smallest eigenvalue") {
  // Second derivative along a unit direction (c, s) is 2c^2 + 3s^2, minimized
  // at 2; a dense direction fan gets within the squared angular gap of it.
  const ChartManifold plane = make_plane();
  const ConvexFunction f = plane_quadratic(1.0, 1.5);
  CertifyOptions opt;
  opt.n_geodesics = 4096;
  const ConvexityReport rep = certify(plane, f, default_domain_box("plane"), opt);
  CHECK(rep.verdict == ConvexityVerdict::kStrictlyConvex);
  CHECK(rep.margin >= 2.0 - 1e-9);
  CHECK(rep.margin <= 2.0 + 1e-4);
}

TEST_CASE("sine along the first torus coordinate is flagged non-convex") {
  const ChartManifold torus = make_flat_torus();
  const ConvexFunction f = make_convex_function("sin2pix", torus);
  const ConvexityReport rep = certify(torus, f, default_domain_box("torus"), {});
  CHECK(rep.verdict == ConvexityVerdict::kNonConvex);
  CHECK(rep.margin < -1.0);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->second_difference < -1.0);
  // The witness is reproducible: the flagged node really has that value.
  const SecondDifferenceProfile prof = second_difference_profile(
      torus, f, {rep.witness->base_point, rep.witness->direction}, {});
  double lowest = 1e300;
  for (double d : prof.second_diffs) lowest = std::min(lowest, d);
  CHECK(lowest == doctest::Approx(rep.witness->second_difference).epsilon(1e-9));
}

TEST_CASE("energy on the warped space certifies strictly convex") {
  const WarpedProduct w = make_m3();
  const ConvexFunction f = conformal_energy(w);
  CertifyOptions opt;
  opt.n_geodesics = 60;
  const ConvexityReport rep = certify(w.total, f, default_domain_box("m3"), opt);
  CHECK(rep.verdict == ConvexityVerdict::kStrictlyConvex);
  CHECK(rep.margin > 0.0);
  CHECK(rep.truncated == 0);
}

TEST_CASE("energy second differences clear the pointwise positivity floor") {
  // Along unit-speed geodesics the second derivative is at least phi^2 at
  // each node; the discrete profile should stay within a whisker of that.
  const WarpedProduct w = make_m3();
  const ConvexFunction f = conformal_energy(w);
  const CertifyOptions opt;
  const PhasePoint starts[] = {
      {{0.0, 0.0, 0.0}, metric_normalized(w.total, {0.0, 0.0, 0.0}, {0.3, 1.0, -0.4})},
      {{-0.5, 0.6, 0.2}, metric_normalized(w.total, {-0.5, 0.6, 0.2}, {-1.0, 0.2, 0.5})},
  };
  for (const PhasePoint& start : starts) {
    const SecondDifferenceProfile prof = second_difference_profile(w.total, f, start, opt);
    REQUIRE_FALSE(prof.truncated);
    REQUIRE(prof.second_diffs.size() + 2 == prof.points.size());
    for (std::size_t i = 0; i < prof.second_diffs.size(); ++i) {
      const double phi = conformal_factor(w, prof.points[i + 1]);
      CHECK(prof.second_diffs[i] >= 0.999 * phi * phi);
    }
  }
}

TEST_CASE("certification is deterministic in the seed and thread count") {
  const ChartManifold torus = make_flat_torus();
  const ConvexFunction f = make_convex_function("sin2pix", torus);
  CertifyOptions a;
  a.n_geodesics = 40;
  a.threads = 1;
  CertifyOptions b = a;
  b.threads = 4;
  const ConvexityReport ra = certify(torus, f, default_domain_box("torus"), a);
  const ConvexityReport rb = certify(torus, f, default_domain_box("torus"), b);
  CHECK(ra.margin == rb.margin);
  REQUIRE(ra.witness.has_value());
  REQUIRE(rb.witness.has_value());
  CHECK(ra.witness->arclength == rb.witness->arclength);
  CHECK(ra.witness->base_point == rb.witness->base_point);
  CHECK(ra.witness->direction == rb.witness->direction);
}

TEST_CASE("chart exits truncate profiles and can exhaust the sample budget") {
  // A thin base interval cuts nearly every geodesic short.
  const WarpedProduct thin = assemble_warped({-0.2, 0.2}, make_warp("one"), make_paraboloid());
  const ConvexFunction f = conformal_energy(thin);
  const DomainBox box{{-0.1, -0.5, -0.5}, {0.1, 0.5, 0.5}};

  CertifyOptions opt;
  opt.n_geodesics = 50;
  const ConvexityReport rep = certify(thin.total, f, box, opt);
  CHECK(rep.truncated > 10);
  CHECK(rep.verdict == ConvexityVerdict::kInconclusive);
  CHECK(rep.note.find("truncated") != std::string::npos);

  const PhasePoint start{{0.0, 0.0, 0.0},
                         metric_normalized(thin.total, {0.0, 0.0, 0.0}, {1.0, 0.1, 0.0})};
  const SecondDifferenceProfile prof = second_difference_profile(thin.total, f, start, opt);
  CHECK(prof.truncated);
}

TEST_CASE("constancy probe separates constants from genuinely varying functions") {
  const ChartManifold torus = make_flat_torus();
  const DomainBox box = default_domain_box("torus");

  const ConvexFunction zero = make_convex_function("zero", torus);
  const ConstancyProbeResult rc = constancy_probe(torus, zero, box, true, {});
  CHECK(rc.applicable);
  CHECK(rc.constant);
  CHECK(rc.max_oscillation <= 1e-12);

  const ConvexFunction wave = make_convex_function("sin2pix", torus);
  const ConstancyProbeResult rw = constancy_probe(torus, wave, box, true, {});
  CHECK(rw.applicable);
  CHECK_FALSE(rw.constant);
  CHECK(rw.max_oscillation > 1.0);

  // Without a recurrence finding the probe declines to conclude anything.
  const ChartManifold plane = make_plane();
  const ConvexFunction sq = make_convex_function("sqnorm", plane);
  const ConstancyProbeResult rp =
      constancy_probe(plane, sq, default_domain_box("plane"), false, {});
  CHECK_FALSE(rp.applicable);
}

TEST_CASE("registry wires functions to their charts") {
  const ChartManifold pb = make_paraboloid();
  const ConvexFunction h = make_convex_function("height", pb);
  CHECK(h.evaluate({1.0, 2.0}) == doctest::Approx(5.0));

  const ConvexFunction hinge = make_convex_function("height-hinge", pb);
  CHECK(hinge.evaluate({0.5, 0.0}) == 0.0);
  CHECK(hinge.evaluate({1.5, 0.0}) == doctest::Approx(1.25));

  const ConvexFunction s2 = make_convex_function("radial-arclength-squared", pb);
  const double s = paraboloid_radial_arclength(2.0);
  CHECK(s2.evaluate({2.0, 0.0}) == doctest::Approx(s * s));

  CHECK_THROWS_AS(make_convex_function("sqnorm", pb), std::invalid_argument);
  CHECK_THROWS_AS(make_convex_function("no-such-key", pb), std::invalid_argument);
  CHECK_THROWS_AS(make_manifold("no-such-chart"), std::invalid_argument);
}

TEST_CASE("height stays strictly convex and the hinge lands exactly on convex") {
  const ChartManifold pb = make_paraboloid();
  const DomainBox box = default_domain_box("paraboloid");

  const ConvexityReport h = certify(pb, make_convex_function("height", pb), box, {});
  CHECK(h.verdict == ConvexityVerdict::kStrictlyConvex);
  CHECK(h.margin > 1e-3);

  // max(z - 1, 0) is convex but flat on the inner region, so the margin sits
  // at zero within tolerance rather than above it.
  const ConvexityReport hinge = certify(pb, make_convex_function("height-hinge", pb), box, {});
  CHECK(hinge.verdict == ConvexityVerdict::kConvex);
  CHECK(std::abs(hinge.margin) <= 1e-7);
}

TEST_CASE("radial arclength squared is convex along meridians through the vertex") {
  // Along a unit-speed meridian s is the arclength itself, so f = s^2 has
  // second derivative exactly 2 there; off-meridian directions stay positive.
  const ChartManifold pb = make_paraboloid();
  const ConvexFunction f = make_convex_function("radial-arclength-squared", pb);
  const PhasePoint meridian{{0.5, 0.0}, metric_normalized(pb, {0.5, 0.0}, {1.0, 0.0})};
  const SecondDifferenceProfile prof = second_difference_profile(pb, f, meridian, {});
  for (double d : prof.second_diffs) CHECK(d == doctest::Approx(2.0).epsilon(1e-6));

  const ConvexityReport rep = certify(pb, f, default_domain_box("paraboloid"), {});
  CHECK(rep.margin > 1.0);
  CHECK(rep.verdict == ConvexityVerdict::kStrictlyConvex);
}
