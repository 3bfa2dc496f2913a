#include "geoconvex/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "geoconvex/builtins.hpp"
#include "geoconvex/geodesic.hpp"
#include "geoconvex/parallel.hpp"

namespace geoconvex {

std::string to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::kConverged: return "converged";
    case TraceStatus::kNotStabilized: return "not-stabilized";
    case TraceStatus::kPartial: return "partial";
    case TraceStatus::kAbortedCertification: return "aborted-certification";
  }
  return "partial";
}

std::string to_string(LoopVerdict v) {
  switch (v) {
    case LoopVerdict::kSimple: return "simple";
    case LoopVerdict::kNonSimple: return "non-simple";
    case LoopVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Vec riemannian_gradient(const ChartManifold& m, const ConvexFunction& f, const Vec& x,
                        double fd_step) {
  Vec partials(m.dim);
  if (f.gradient) {
    partials = f.gradient(x);
  } else {
    Vec xp = x, xm = x;
    for (int i = 0; i < m.dim; ++i) {
      xp[i] = x[i] + fd_step;
      xm[i] = x[i] - fd_step;
      partials[i] = (f.evaluate(xp) - f.evaluate(xm)) / (2.0 * fd_step);
      xp[i] = x[i];
      xm[i] = x[i];
    }
  }
  return matvec(metric_inverse_at(m, x), partials);
}

DescentResult gradient_descent(const ChartManifold& m, const ConvexFunction& f,
                               const Vec& x0, const DescentOptions& opt) {
  if (!f.evaluate) throw std::invalid_argument("function has no evaluate callback");
  DescentResult res;
  Vec x = wrap_point(m, x0);
  double fx = f.evaluate(x);
  double gn = 0.0;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    const Vec grad = riemannian_gradient(m, f, x, opt.fd_step);
    const double gn2 = std::max(inner_product(m, x, grad, grad), 0.0);
    gn = std::sqrt(gn2);
    if (gn < opt.grad_tol) {
      res.converged = true;
      break;
    }
    double alpha = opt.initial_step;
    bool moved = false;
    while (alpha > opt.min_step) {
      const Vec cand = exp_map(m, x, scaled(grad, -alpha));
      const double fc = f.evaluate(cand);
      if (fc <= fx - opt.armijo * alpha * gn2) {
        x = cand;
        fx = fc;
        moved = true;
        break;
      }
      alpha *= opt.backtrack;
    }
    if (!moved) break;  // no acceptable step left at this scale
  }
  res.x = std::move(x);
  res.value = fx;
  res.grad_norm = gn;
  res.iterations = it;
  return res;
}

MinimizeTrace regularized_minimize(const ChartManifold& m, const ConvexFunction& u,
                                   const ConvexFunction& g, const DomainBox& box,
                                   const Vec& p0, const RegularizedOptions& opt) {
  if (opt.schedule.empty()) throw std::invalid_argument("empty k schedule");
  for (int k : opt.schedule)
    if (k < 1) throw std::invalid_argument("schedule entries must be positive");

  MinimizeTrace tr;
  tr.p0 = wrap_point(m, p0);

  // Certification gate. The scheme needs a strictly convex g and a u that at
  // least fails to disprove convexity; anything else aborts here, with the
  // reports kept as the explanation.
  tr.g_certification = certify(m, g, box, opt.certify);
  tr.u_certification = certify(m, u, box, opt.certify);
  if (tr.g_certification.verdict != ConvexityVerdict::kStrictlyConvex ||
      tr.u_certification.verdict == ConvexityVerdict::kNonConvex) {
    tr.status = TraceStatus::kAbortedCertification;
    tr.limit = tr.p0;
    return tr;
  }

  tr.u_offset = u.evaluate(tr.p0);
  tr.g_at_p0 = g.evaluate(tr.p0);

  Vec x = tr.p0;
  bool partial = false;
  for (int k : opt.schedule) {
    ConvexFunction hk;
    hk.key = "h";
    hk.manifold_key = m.key;
    const double off = tr.u_offset;
    hk.evaluate = [&u, &g, k, off](const Vec& p) {
      return k * (u.evaluate(p) - off) + g.evaluate(p);
    };
    if (u.gradient && g.gradient) {
      hk.gradient = [&u, &g, k](const Vec& p) {
        Vec gu = u.gradient(p);
        const Vec gg = g.gradient(p);
        for (std::size_t i = 0; i < gu.size(); ++i) gu[i] = k * gu[i] + gg[i];
        return gu;
      };
    }

    const DescentResult r = gradient_descent(m, hk, x, opt.inner);
    x = r.x;
    TraceEntry e;
    e.k = k;
    e.x = x;
    e.u_value = u.evaluate(x) - tr.u_offset;
    e.g_value = g.evaluate(x);
    e.h_value = k * e.u_value + e.g_value;
    e.inner_iterations = r.iterations;
    e.inner_converged = r.converged;
    tr.entries.push_back(std::move(e));
    if (!r.converged) {
      partial = true;
      break;
    }
  }

  tr.limit = tr.entries.back().x;
  if (partial) {
    tr.status = TraceStatus::kPartial;
  } else if (tr.entries.size() >= 2) {
    const Vec& a = tr.entries[tr.entries.size() - 2].x;
    tr.limit_stabilized = chart_distance(m, a, tr.limit) < opt.limit_tol;
    tr.status = tr.limit_stabilized ? TraceStatus::kConverged : TraceStatus::kNotStabilized;
  } else {
    tr.status = TraceStatus::kNotStabilized;
  }
  return tr;
}

double solve_mu1(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const auto resid = [](double mu) { return mu - std::atan(mu) - std::numbers::pi / 2.0; };
  double lo = 2.0, hi = 4.0;
  const double width_target = std::min(tol, 1e-15);
  for (int i = 0; i < 200 && (hi - lo) > width_target; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (resid(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double soul_bound_beta() {
  const double mu1 = solve_mu1();
  return std::sqrt(0.75 * (1.0 + mu1 * mu1));
}

namespace {

struct DipScan {
  bool has = false;
  double distance = std::numeric_limits<double>::infinity();
  double length = 0.0;
  bool escaped = false;
};

// Follows one unit-speed geodesic and returns its closest parabolically
// interpolated approach to p among local minima of the chart distance.
DipScan scan_direction(const ChartManifold& m, const Vec& p, double angle,
                       const LoopSearchOptions& opt) {
  DipScan out;
  const Vec dir = {std::cos(angle), std::sin(angle)};
  const Vec v = metric_normalized(m, p, dir);
  GeodesicStepper stepper(m, {p, v}, opt.scan_step);

  const double t_floor = 10.0 * opt.closure_tol;
  const long nsteps = std::lround(opt.max_length / opt.scan_step);
  double d2_a = 0.0, d2_b = 0.0;  // squared distances two steps and one step back
  for (long i = 1; i <= nsteps; ++i) {
    stepper.advance();
    if (stepper.exited()) {
      out.escaped = true;
      return out;
    }
    const Vec dp = chart_displacement(m, p, stepper.state().point);
    const double d2_c = dot(dp, dp);
    const double t_mid = stepper.time() - opt.scan_step;
    if (i >= 2 && t_mid > t_floor && d2_b < d2_a && d2_b <= d2_c &&
        d2_b < opt.capture_radius * opt.capture_radius) {
      // Vertex of the parabola through the three squared distances.
      const double denom = d2_a - 2.0 * d2_b + d2_c;
      double shift = 0.0;
      double d2_min = d2_b;
      if (denom > 0.0) {
        shift = 0.5 * (d2_a - d2_c) / denom;
        shift = std::clamp(shift, -1.0, 1.0);
        d2_min = d2_b - 0.25 * (d2_a - d2_c) * shift;
      }
      const double d_min = std::sqrt(std::max(d2_min, 0.0));
      if (d_min < out.distance) {
        out.has = true;
        out.distance = d_min;
        out.length = t_mid + shift * opt.scan_step;
      }
    }
    d2_a = d2_b;
    d2_b = d2_c;
  }
  return out;
}

}  // namespace

LoopSearchResult loop_search(const ChartManifold& m, const Vec& p,
                             const LoopSearchOptions& opt) {
  if (opt.n_directions < 8) throw std::invalid_argument("need at least 8 scan directions");
  if (m.dim != 2) throw std::invalid_argument("loop search runs on surface charts");

  LoopSearchResult res;
  res.base_point = wrap_point(m, p);
  res.directions_scanned = opt.n_directions;

  const int n = opt.n_directions;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<DipScan> scans(n);
  parallel_for(n, opt.threads, [&](std::size_t j) {
    scans[j] = scan_direction(m, res.base_point, two_pi * j / n, opt);
  });
  for (const DipScan& s : scans)
    if (s.escaped) ++res.escaped_directions;

  // Candidate clusters: maximal circular runs of directions whose dip got
  // inside the capture radius.
  std::vector<bool> hot(n);
  for (int j = 0; j < n; ++j) hot[j] = scans[j].has && scans[j].distance < opt.capture_radius;
  std::vector<std::pair<int, int>> clusters;  // [start, end] inclusive, circular
  {
    int j = 0;
    while (j < n && hot[j]) ++j;  // rotate to a cold start so runs do not split
    if (j == n) {
      clusters.push_back({0, n - 1});  // every direction dips; one big cluster
    } else {
      const int origin = j;
      int run_start = -1;
      for (int s2 = 0; s2 < n; ++s2) {
        const int idx = (origin + s2) % n;
        if (hot[idx] && run_start < 0) run_start = s2;
        if (!hot[idx] && run_start >= 0) {
          clusters.push_back({(origin + run_start) % n, (origin + s2 - 1) % n});
          run_start = -1;
        }
      }
      if (run_start >= 0) clusters.push_back({(origin + run_start) % n, (origin + n - 1) % n});
    }
  }

  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  int ambiguous = 0;
  for (const auto& [c_lo, c_hi] : clusters) {
    // Best scanned direction of the cluster, walking the circular run.
    int len = (c_hi - c_lo + n) % n + 1;
    int best = c_lo;
    for (int s2 = 0; s2 < len; ++s2) {
      const int idx = (c_lo + s2) % n;
      if (scans[idx].distance < scans[best].distance) best = idx;
    }
    double a = two_pi * (best - 1) / n;
    double b = two_pi * (best + 1) / n;
    const auto objective = [&](double ang) {
      const DipScan s = scan_direction(m, res.base_point, ang, opt);
      return s;
    };
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    DipScan fc = objective(c), fd = objective(d);
    for (int it = 0; it < opt.refine_iters; ++it) {
      if (fc.distance < fd.distance) {
        b = d;
        d = c;
        fd = fc;
        c = b - golden * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + golden * (b - a);
        fd = objective(d);
      }
    }
    const double ang = fc.distance < fd.distance ? c : d;
    const DipScan fin = fc.distance < fd.distance ? fc : fd;
    if (!fin.has) continue;
    if (fin.distance <= opt.closure_tol) {
      GeodesicLoop loop;
      loop.angle = ang;
      loop.direction = {std::cos(ang), std::sin(ang)};
      loop.length = fin.length;
      loop.closure_error = fin.distance;
      res.loops.push_back(std::move(loop));
    } else if (fin.distance <= 10.0 * opt.closure_tol) {
      ++ambiguous;  // too close to call either way at this resolution
    }
  }

  if (ambiguous > 0) {
    res.verdict = LoopVerdict::kInconclusive;
    res.note = std::to_string(ambiguous) +
               " candidate(s) refined into the ambiguous closure band";
  } else if (!res.loops.empty()) {
    res.verdict = LoopVerdict::kNonSimple;
    res.note = "refined closures below tolerance";
  } else {
    res.verdict = LoopVerdict::kSimple;
    res.note = "no dip below the capture radius survived refinement";
  }
  return res;
}

SoulRegionResult soul_region_check(const MinimizeTrace& trace, double slack) {
  SoulRegionResult out;
  out.beta = soul_bound_beta();
  if (trace.status != TraceStatus::kConverged || trace.entries.empty() ||
      trace.limit.size() != 2)
    return out;  // inapplicable without a converged surface trace
  out.applicable = true;
  out.limit_height = paraboloid_height(trace.limit);
  out.worst_trace_height = 0.0;
  for (const TraceEntry& e : trace.entries)
    out.worst_trace_height = std::max(out.worst_trace_height, paraboloid_height(e.x));
  out.limit_within_bound = out.limit_height <= out.beta + slack;
  out.trace_within_bound = out.worst_trace_height < out.beta;
  out.passed = out.limit_within_bound && out.trace_within_bound;
  return out;
}

}  // namespace geoconvex
