// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "hyperdiss/parallel.hpp"

namespace hyperdiss {

std::vector<Cplx> eigenvalues_at(const HyperbolicSystem& sys, const Frequency& f,
                                 const ConstraintBlock* cb, double tol) {
  const CMat G = sys.generator(f);
  CMat M;
  if (cb) {
    const SubspaceBasis N = constraint_subspace(*cb, f, tol);
    if (N.dim() == 0) return {};
    const CMat GB = G * N.basis;
    const CMat resid = GB - N.basis * (N.basis.adjoint() * GB);
    if (op_norm(resid) / (1.0 + op_norm(G)) > 1e-8)
      throw std::runtime_error("constraint subspace not invariant: check condition (C)");
    M = N.basis.adjoint() * GB;
  } else {
    M = G;
  }
  Eigen::ComplexEigenSolver<CMat> es(M, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalues_at: eigensolver failed to converge");
  const CVec& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectrumSweep sweep(const HyperbolicSystem& sys, const std::vector<double>& s_grid,
                    const SphereSampling& sph, const ConstraintBlock* cb) {
  for (std::size_t i = 1; i < s_grid.size(); ++i)
    if (!(s_grid[i] > s_grid[i - 1]))
      throw std::invalid_argument("sweep: s_grid must be strictly increasing");

  SpectrumSweep sw;
  sw.s_grid = s_grid;
  sw.omegas = sph;
  sw.restricted = cb != nullptr;
  const int ns = static_cast<int>(s_grid.size());
  const int nw = sph.count();
  sw.abscissa = Mat::Zero(ns, nw);

  parallel_for(static_cast<std::size_t>(ns) * nw, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(nw));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(nw));
    const double s = s_grid[static_cast<std::size_t>(i)];
    // s = 0 is omega-independent; compute the j = 0 column and copy later.
    if (s == 0.0 && j > 0) return;
    const Frequency f = s == 0.0 ? Frequency::zero(sys.n())
                                 : Frequency::polar(s, sph.points[static_cast<std::size_t>(j)]);
    const auto ev = eigenvalues_at(sys, f, cb);
    double a = -std::numeric_limits<double>::infinity();
    for (const Cplx& lam : ev) a = std::max(a, lam.real());
    sw.abscissa(i, j) = a;
  });
  for (int i = 0; i < ns; ++i)
    if (s_grid[static_cast<std::size_t>(i)] == 0.0)
      sw.abscissa.row(i).setConstant(sw.abscissa(i, 0));
  return sw;
}

namespace {

struct BandFit {
  double slope = 0.0;
  double resid = 0.0;  // max deviation of sub-band slopes from the band slope
  int count = 0;
};

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

BandFit fit_band(const SpectrumSweep& sw, double lo, double hi) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < sw.s_grid.size(); ++i) {
    const double s = sw.s_grid[i];
    if (s < lo || s > hi || s == 0.0) continue;
    const double y = -sw.worst_abscissa(static_cast<int>(i));
    if (!(y > 0.0)) continue;  // nondissipative sample: band fit impossible
    xs.push_back(std::log(s));
    ys.push_back(std::log(y));
  }
  BandFit out;
  out.count = static_cast<int>(xs.size());
  if (out.count < 4) return out;
  out.slope = ls_slope(xs, ys);

  // Sub-band slopes over the two log-halves of the band.
  const double mid = 0.5 * (std::log(lo) + std::log(hi));
  std::vector<double> xl, yl, xh, yh;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= mid) {
      xl.push_back(xs[i]);
      yl.push_back(ys[i]);
    } else {
      xh.push_back(xs[i]);
      yh.push_back(ys[i]);
    }
  }
  if (xl.size() >= 2 && xh.size() >= 2) {
    const double sl = ls_slope(xl, yl);
    const double sh = ls_slope(xh, yh);
    out.resid = std::max(std::abs(sl - out.slope), std::abs(sh - out.slope));
  }
  return out;
}

}  // namespace

DissipativityType classify(const SpectrumSweep& sw, ClassifyOptions opts) {
  DissipativityType ty;
  if (sw.s_grid.empty()) {
    ty.note = "empty sweep";
    return ty;
  }
  if (sw.s_grid.front() > opts.low_lo || sw.s_grid.back() < opts.high_hi) {
    std::ostringstream os;
    os << "sweep must span at least [" << opts.low_lo << ", " << opts.high_hi << "]";
    throw std::invalid_argument(os.str());
  }

  // A sample with abscissa >= 0 at s > 0 means no uniform dissipativity.
  for (std::size_t i = 0; i < sw.s_grid.size(); ++i) {
    if (sw.s_grid[i] == 0.0) continue;
    if (sw.worst_abscissa(static_cast<int>(i)) >= 0.0) {
      ty.note = "abscissa >= 0 at s > 0: not uniformly dissipative";
      return ty;
    }
  }

  const BandFit low = fit_band(sw, opts.low_lo, opts.low_hi);
  const BandFit high = fit_band(sw, opts.high_lo, opts.high_hi);
  ty.low_slope = low.slope;
  ty.high_slope = high.slope;
  ty.low_resid = low.resid;
  ty.high_resid = high.resid;
  if (low.count < 4 || high.count < 4) {
    ty.note = "too few usable samples in a fit band";
    return ty;
  }
  if (low.resid >= opts.residual_tol || high.resid >= opts.residual_tol) {
    ty.note = "ambiguous fit: sub-decade slope residual exceeds tolerance";
    return ty;
  }

  const int p = static_cast<int>(std::lround(low.slope / 2.0));
  const int r = static_cast<int>(std::lround(-high.slope / 2.0));
  if (std::abs(low.slope - 2.0 * p) > opts.integer_tol ||
      std::abs(high.slope + 2.0 * r) > opts.integer_tol) {
    ty.note = "ambiguous fit: slope not near an even integer";
    return ty;
  }
  if (p < 1 || p + r < 1) {
    ty.note = "fitted exponents outside the admissible (p, q) range";
    return ty;
  }

  ty.p = p;
  ty.q = p + r;
  if (p != 1) ty.note = "p != 1: outside the paper's examples";

  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sw.s_grid.size(); ++i) {
    const double s = sw.s_grid[i];
    if (s == 0.0) continue;
    const double y = -sw.worst_abscissa(static_cast<int>(i));
    c = std::min(c, y * std::pow(1.0 + s * s, ty.q) / std::pow(s, 2.0 * ty.p));
  }
  ty.c = c;
  ty.classified = true;

  // Defensive re-check of the certified bound over the sweep.
  for (std::size_t i = 0; i < sw.s_grid.size(); ++i) {
    const double s = sw.s_grid[i];
    if (s == 0.0) continue;
    const double bound = -ty.c * std::pow(s, 2.0 * ty.p) / std::pow(1.0 + s * s, ty.q);
    if (sw.worst_abscissa(static_cast<int>(i)) > bound + 1e-12)
      throw std::logic_error("classify: certified bound violated by a swept sample");
  }
  return ty;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("log_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace hyperdiss
