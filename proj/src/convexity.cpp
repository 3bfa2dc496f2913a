#include "geoconvex/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geoconvex/geodesic.hpp"
#include "geoconvex/parallel.hpp"

namespace geoconvex {

std::string to_string(ConvexityVerdict v) {
  switch (v) {
    case ConvexityVerdict::kStrictlyConvex: return "strictly-convex";
    case ConvexityVerdict::kConvex: return "convex";
    case ConvexityVerdict::kNonConvex: return "non-convex";
    case ConvexityVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ConvexityVerdict verdict_for_margin(double margin, double tol) {
  if (margin > tol) return ConvexityVerdict::kStrictlyConvex;
  if (margin >= -tol) return ConvexityVerdict::kConvex;
  return ConvexityVerdict::kNonConvex;
}

namespace {

struct SideNodes {
  std::vector<Vec> points;  // nodes 1..complete, base point excluded
  int complete = 0;
};

SideNodes side_nodes(const ChartManifold& m, const PhasePoint& start, double span,
                     int cells, int substeps, double step) {
  SideNodes out;
  const GeodesicPath path = geodesic_integrate(m, start, span, step);
  int last_ok = static_cast<int>(path.states.size()) - 1;
  // On a chart exit the final recorded state is the offending one.
  if (path.status == PathStatus::kChartExit) last_ok -= 1;
  out.complete = std::min(cells, last_ok / substeps);
  out.points.reserve(out.complete);
  for (int j = 1; j <= out.complete; ++j)
    out.points.push_back(path.states[static_cast<std::size_t>(j) * substeps].point);
  return out;
}

std::vector<PhasePoint> sample_starts(const ChartManifold& m, const DomainBox& box,
                                      const CertifyOptions& opt) {
  if (box.dim() != m.dim) throw std::invalid_argument("domain box dimension mismatch");
  std::vector<PhasePoint> starts;
  starts.reserve(opt.n_geodesics);
  KroneckerSequence seq(m.dim, opt.seed);
  for (int k = 0; k < opt.n_geodesics; ++k) {
    Vec p = sample_in_box(box, seq);
    Vec d = spread_direction(m.dim, k, opt.n_geodesics, opt.seed);
    starts.push_back({std::move(p), std::move(d)});
  }
  return starts;
}

}  // namespace

SecondDifferenceProfile second_difference_profile(const ChartManifold& m,
                                                  const ConvexFunction& f,
                                                  const PhasePoint& start,
                                                  const CertifyOptions& opt) {
  if (opt.grid_cells < 1 || opt.steps_per_cell < 1 || !(opt.span > 0.0))
    throw std::invalid_argument("profile needs a positive span and grid sizes");
  if (!f.evaluate) throw std::invalid_argument("function has no evaluate callback");
  const int cells = opt.grid_cells;
  const double h = opt.span / cells;
  const double step = h / opt.steps_per_cell;

  const Vec p0 = wrap_point(m, start.point);
  const Vec v = metric_normalized(m, p0, start.vector);

  const SideNodes fwd = side_nodes(m, {p0, v}, opt.span, cells, opt.steps_per_cell, step);
  const SideNodes bwd =
      side_nodes(m, {p0, scaled(v, -1.0)}, opt.span, cells, opt.steps_per_cell, step);

  SecondDifferenceProfile prof;
  prof.h = h;
  prof.truncated = fwd.complete < cells || bwd.complete < cells;
  const int total = fwd.complete + bwd.complete + 1;
  prof.arclengths.reserve(total);
  prof.points.reserve(total);
  prof.values.reserve(total);
  for (int j = bwd.complete; j >= 1; --j) {
    prof.arclengths.push_back(-j * h);
    prof.points.push_back(bwd.points[j - 1]);
  }
  prof.arclengths.push_back(0.0);
  prof.points.push_back(p0);
  for (int j = 1; j <= fwd.complete; ++j) {
    prof.arclengths.push_back(j * h);
    prof.points.push_back(fwd.points[j - 1]);
  }
  for (const Vec& p : prof.points) prof.values.push_back(f.evaluate(p));
  if (total >= 3) {
    prof.second_diffs.reserve(total - 2);
    for (int i = 1; i + 1 < total; ++i)
      prof.second_diffs.push_back(
          (prof.values[i - 1] - 2.0 * prof.values[i] + prof.values[i + 1]) / (h * h));
  }
  return prof;
}

ConvexityReport certify(const ChartManifold& m, const ConvexFunction& f,
                        const DomainBox& box, const CertifyOptions& opt) {
  if (opt.n_geodesics < 1) throw std::invalid_argument("certify needs at least one geodesic");
  const std::vector<PhasePoint> starts = sample_starts(m, box, opt);

  struct Slot {
    double min = std::numeric_limits<double>::infinity();
    double at_s = 0.0;
    bool truncated = false;
    bool has = false;
  };
  std::vector<Slot> slots(starts.size());
  parallel_for(starts.size(), opt.threads, [&](std::size_t i) {
    const SecondDifferenceProfile prof = second_difference_profile(m, f, starts[i], opt);
    Slot s;
    s.truncated = prof.truncated;
    for (std::size_t j = 0; j < prof.second_diffs.size(); ++j) {
      if (prof.second_diffs[j] < s.min) {
        s.min = prof.second_diffs[j];
        s.at_s = prof.arclengths[j + 1];
        s.has = true;
      }
    }
    slots[i] = s;
  });

  // Sequential reduction in sample order; strict < keeps the first achiever,
  // so the witness does not depend on the thread count.
  ConvexityReport rep;
  rep.seed = opt.seed;
  rep.tol = opt.tol;
  double margin = std::numeric_limits<double>::infinity();
  std::size_t arg = starts.size();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].truncated) ++rep.truncated;
    if (!slots[i].has) continue;
    ++rep.geodesics_used;
    if (slots[i].min < margin) {
      margin = slots[i].min;
      arg = i;
    }
  }

  rep.note = "verdict from sampled geodesics: evidence, not a proof";
  const double trunc_frac =
      static_cast<double>(rep.truncated) / static_cast<double>(starts.size());
  if (arg < starts.size()) {
    rep.margin = margin;
    ConvexityWitness w;
    w.base_point = wrap_point(m, starts[arg].point);
    w.direction = metric_normalized(m, w.base_point, starts[arg].vector);
    w.arclength = slots[arg].at_s;
    w.second_difference = margin;
    rep.witness = std::move(w);
  }
  if (arg == starts.size()) {
    rep.verdict = ConvexityVerdict::kInconclusive;
    rep.note += "; no geodesic stayed in the chart long enough to difference";
  } else if (trunc_frac > opt.max_truncated_fraction) {
    rep.verdict = ConvexityVerdict::kInconclusive;
    rep.note += "; truncated fraction " + std::to_string(trunc_frac) +
                " exceeds the configured maximum";
  } else {
    rep.verdict = verdict_for_margin(margin, opt.tol);
  }
  return rep;
}

ConstancyProbeResult constancy_probe(const ChartManifold& m, const ConvexFunction& f,
                                     const DomainBox& box, bool flow_recurrent,
                                     const CertifyOptions& opt) {
  ConstancyProbeResult out;
  if (!flow_recurrent) return out;  // only meaningful where the flow recurs
  out.applicable = true;

  const std::vector<PhasePoint> starts = sample_starts(m, box, opt);
  std::vector<double> osc(starts.size(), 0.0);
  parallel_for(starts.size(), opt.threads, [&](std::size_t i) {
    const SecondDifferenceProfile prof = second_difference_profile(m, f, starts[i], opt);
    const auto [lo, hi] = std::minmax_element(prof.values.begin(), prof.values.end());
    osc[i] = *hi - *lo;
  });
  for (double o : osc) out.max_oscillation = std::max(out.max_oscillation, o);
  out.constant = out.max_oscillation <= opt.tol;
  return out;
}

}  // namespace geoconvex
