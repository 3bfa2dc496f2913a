#include "geoconvex/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace geoconvex {

RiemannTensor riemann_fd(const ChartManifold& m, const Vec& x) {
  const int n = m.dim;
  const double h = kChristoffelFdStep;

  const Christoffel3 gamma = christoffel_fd(m, x);
  // dgamma[a].at(k,i,j) = d Gamma^k_ij / d x_a
  std::vector<Christoffel3> dgamma;
  dgamma.reserve(n);
  Vec xp = x, xm = x;
  for (int a = 0; a < n; ++a) {
    xp[a] = x[a] + h;
    xm[a] = x[a] - h;
    const Christoffel3 gp = christoffel_fd(m, xp);
    const Christoffel3 gm = christoffel_fd(m, xm);
    Christoffel3 d(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          d.at(k, i, j) = (gp.at(k, i, j) - gm.at(k, i, j)) / (2.0 * h);
    dgamma.push_back(std::move(d));
    xp[a] = x[a];
    xm[a] = x[a];
  }

  RiemannTensor r(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dgamma[j].at(l, k, i) - dgamma[k].at(l, j, i);
          for (int mm = 0; mm < n; ++mm)
            s += gamma.at(mm, k, i) * gamma.at(l, j, mm) -
                 gamma.at(mm, j, i) * gamma.at(l, k, mm);
          r.at(l, i, j, k) = s;
        }
  return r;
}

double sectional_curvature(const ChartManifold& m, const Vec& x, const Vec& u, const Vec& w,
                           const RiemannTensor& r) {
  const int n = m.dim;
  const SquareMatrix g = metric_at(m, x);
  const double uu = quadratic_form(g, u, u);
  const double ww = quadratic_form(g, w, w);
  const double uw = quadratic_form(g, u, w);
  const double gram = uu * ww - uw * uw;
  // Scale-aware degeneracy guard: gram shrinks like the fourth power of the
  // vector scale, so compare against |u|^2 |w|^2.
  if (gram <= 1e-12 * std::max(uu * ww, 1e-300))
    throw std::invalid_argument("sectional curvature needs two independent directions");

  // <R(u, w) w, u>
  double num = 0.0;
  for (int l = 0; l < n; ++l) {
    double rl = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          rl += r.at(l, i, j, k) * w[i] * u[j] * w[k];
    double gl = 0.0;
    for (int mm = 0; mm < n; ++mm) gl += g(l, mm) * u[mm];
    num += rl * gl;
  }
  return num / gram;
}

double sectional_curvature(const ChartManifold& m, const Vec& x, const Vec& u, const Vec& w) {
  return sectional_curvature(m, x, u, w, riemann_fd(m, x));
}

double bianchi_residual(const RiemannTensor& r) {
  const int n = r.size();
  double worst = 0.0;
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double s = r.at(l, i, j, k) + r.at(l, j, k, i) + r.at(l, k, i, j);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double antisymmetry_residual(const RiemannTensor& r) {
  const int n = r.size();
  double worst = 0.0;
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          worst = std::max(worst, std::abs(r.at(l, i, j, k) + r.at(l, i, k, j)));
  return worst;
}

}  // namespace geoconvex
