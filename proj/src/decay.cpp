// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/decay.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperdiss/conditions.hpp"
#include "hyperdiss/parallel.hpp"
#include "hyperdiss/spectrum.hpp"

namespace hyperdiss {

CVec propagate_mode(const HyperbolicSystem& sys, const Frequency& f, const CVec& u0hat,
                    double t) {
  if (t < 0.0) throw std::invalid_argument("propagate_mode: t must be >= 0");
  if (u0hat.size() != sys.m()) throw std::invalid_argument("propagate_mode: bad vector size");
  if (t == 0.0) return u0hat;
  const CMat E = CMat(t * sys.generator(f)).exp();
  return E * u0hat;
}

namespace {

void lyapunov_weights(const LyapunovParams& p, double s, double& w1, double& w2) {
  const double d = 1.0 + s * s;
  if (p.envelope == Envelope::eta) {
    w1 = p.alpha1 / d;
    w2 = p.alpha1 * p.alpha2 * p.alpha * s / (d * d);
  } else {
    w1 = p.alpha1;
    w2 = p.alpha1 * p.alpha2 * p.alpha * s / d;
  }
}

CMat lyapunov_matrix_unchecked(const HyperbolicSystem& sys, const Mat& S,
                               const CompensatorSpec& K, const Frequency& f,
                               const LyapunovParams& p) {
  double w1 = 0.0, w2 = 0.0;
  lyapunov_weights(p, f.s, w1, w2);
  const Mat SA0 = S * sys.A0();
  const Mat SA0s = 0.5 * (SA0 + SA0.transpose());
  CMat E = sys.A0().cast<Cplx>() + w1 * SA0s.cast<Cplx>();
  if (f.s > 0.0 && w2 != 0.0) {
    const Mat KA0 = K.evaluate(sys, f.omega) * sys.A0();
    E += double(p.sign2) * w2 * (Cplx(0.0, 1.0) * KA0.cast<Cplx>());
  }
  return hermitian_part(E);
}

}  // namespace

CMat lyapunov_matrix(const HyperbolicSystem& sys, const Mat& S, const CompensatorSpec& K,
                     const Frequency& f, const LyapunovParams& p) {
  const CMat E = lyapunov_matrix_unchecked(sys, S, K, f, p);
  if (min_eig_hermitian(E) <= 0.0)
    throw std::runtime_error("lyapunov_matrix: E not positive definite, alpha1/alpha2 too large");
  return E;
}

namespace {

// Everything certify/tune need per grid point, with the constraint projection
// already applied.
struct LyapSample {
  double s = 0.0;
  int omega_index = -1;
  CMat A0r, SA0r, iKA0r, Gr;
};

std::vector<LyapSample> collect_samples(const HyperbolicSystem& sys, const Mat& S,
                                        const CompensatorSpec& K,
                                        const std::vector<double>& s_grid,
                                        const SphereSampling& sph, const ConstraintBlock* cb) {
  const Mat SA0 = S * sys.A0();
  const Mat SA0s = 0.5 * (SA0 + SA0.transpose());
  const int nw = sph.count();
  std::vector<LyapSample> samples(s_grid.size() * static_cast<std::size_t>(nw));
  parallel_for(samples.size(), [&](std::size_t idx) {
    const std::size_t i = idx / static_cast<std::size_t>(nw);
    const int j = static_cast<int>(idx % static_cast<std::size_t>(nw));
    const double s = s_grid[i];
    const Vec& w = sph.points[static_cast<std::size_t>(j)];
    LyapSample smp;
    smp.s = s;
    smp.omega_index = j;
    const Frequency f = s == 0.0 ? Frequency::zero(sys.n()) : Frequency::polar(s, w);
    CMat G = sys.generator(f);
    CMat A0c = sys.A0().cast<Cplx>();
    CMat SA0c = SA0s.cast<Cplx>();
    CMat iKA0 = CMat::Zero(sys.m(), sys.m());
    if (s > 0.0) {
      const Mat KA0 = K.evaluate(sys, w) * sys.A0();
      iKA0 = Cplx(0.0, 1.0) * KA0.cast<Cplx>();
    }
    if (cb) {
      const SubspaceBasis N = constraint_subspace(*cb, f);
      const CMat B = N.basis;
      smp.Gr = B.adjoint() * G * B;
      smp.A0r = B.adjoint() * A0c * B;
      smp.SA0r = B.adjoint() * SA0c * B;
      smp.iKA0r = B.adjoint() * iKA0 * B;
    } else {
      smp.Gr = std::move(G);
      smp.A0r = std::move(A0c);
      smp.SA0r = std::move(SA0c);
      smp.iKA0r = std::move(iKA0);
    }
    samples[idx] = std::move(smp);
  });
  return samples;
}

struct SampleCert {
  double c_max = 0.0;   // largest c with D >= 2 c env E (inf when env = 0)
  double emin = 0.0, emax = 0.0;
  bool valid = false;   // E positive definite and, at env = 0, D >= 0
};

SampleCert certify_sample(const LyapSample& smp, const LyapunovParams& p) {
  SampleCert out;
  double w1 = 0.0, w2 = 0.0;
  lyapunov_weights(p, smp.s, w1, w2);
  const CMat E =
      hermitian_part(smp.A0r + w1 * smp.SA0r + double(p.sign2) * w2 * smp.iKA0r);
  Eigen::SelfAdjointEigenSolver<CMat> esE(E);
  out.emin = esE.eigenvalues()(0);
  out.emax = esE.eigenvalues()(E.rows() - 1);
  if (out.emin <= 0.0) return out;

  const CMat D = hermitian_part(-(E * smp.Gr + smp.Gr.adjoint() * E));
  const CMat Einvs = esE.operatorInverseSqrt();
  const double lam = min_eig_hermitian(CMat(Einvs * D * Einvs));
  const double env = envelope_value(p.envelope, smp.s);
  if (env == 0.0) {
    // Only monotonicity is required where the envelope vanishes.
    out.valid = lam >= -1e-12 * (1.0 + op_norm(D));
    out.c_max = std::numeric_limits<double>::infinity();
    return out;
  }
  out.valid = true;
  out.c_max = lam / (2.0 * env);
  return out;
}

}  // namespace

CertifyResult certify_decay(const HyperbolicSystem& sys, const Mat& S, const CompensatorSpec& K,
                            const LyapunovParams& p, double c, const std::vector<double>& s_grid,
                            const SphereSampling& sph, const ConstraintBlock* cb) {
  const auto samples = collect_samples(sys, S, K, s_grid, sph, cb);
  CertifyResult out;
  out.c0 = std::numeric_limits<double>::infinity();
  out.C0 = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();

  std::vector<double> margins(samples.size());
  std::vector<double> emins(samples.size()), emaxs(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const LyapSample& smp = samples[i];
    double w1 = 0.0, w2 = 0.0;
    lyapunov_weights(p, smp.s, w1, w2);
    const CMat E =
        hermitian_part(smp.A0r + w1 * smp.SA0r + double(p.sign2) * w2 * smp.iKA0r);
    Eigen::SelfAdjointEigenSolver<CMat> esE(E, Eigen::EigenvaluesOnly);
    emins[i] = esE.eigenvalues()(0);
    emaxs[i] = esE.eigenvalues()(E.rows() - 1);
    const CMat D = hermitian_part(-(E * smp.Gr + smp.Gr.adjoint() * E));
    const double env = envelope_value(p.envelope, smp.s);
    margins[i] = min_eig_hermitian(CMat(D - 2.0 * c * env * E));
  });
  std::size_t worst = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out.c0 = std::min(out.c0, emins[i]);
    out.C0 = std::max(out.C0, emaxs[i]);
    if (margins[i] < min_margin) {
      min_margin = margins[i];
      worst = i;
    }
  }
  out.min_margin = min_margin;
  out.worst_s = samples[worst].s;
  out.worst_omega = samples[worst].omega_index;
  const double scale = 1.0 + sys.A0().norm();
  out.certified = out.c0 > 0.0 && min_margin >= -1e-10 * scale;
  std::ostringstream det;
  det << "min margin " << min_margin << " at s = " << out.worst_s << ", omega #"
      << out.worst_omega << "; c0 = " << out.c0 << ", C0 = " << out.C0;
  out.details = det.str();
  return out;
}

LyapunovTuneResult tune_lyapunov(const HyperbolicSystem& sys, const Mat& S,
                                 const CompensatorSpec& K, Envelope envelope,
                                 const std::vector<double>& s_grid, const SphereSampling& sph,
                                 const ConstraintBlock* cb, std::optional<double> alpha) {
  LyapunovTuneResult out;
  double alpha_val = 0.0;
  if (alpha) {
    alpha_val = *alpha;
  } else {
    const AlphaResult ar = find_alpha(sys, &S, K, sph, cb);
    if (!ar.ok) {
      out.details = "find_alpha failed: " + ar.details;
      return out;
    }
    alpha_val = ar.alpha_best;
  }

  const auto samples = collect_samples(sys, S, K, s_grid, sph, cb);

  struct Combo {
    LyapunovParams p;
    double c = -std::numeric_limits<double>::infinity();
    double c0 = 0.0, C0 = 0.0;
  };
  std::vector<Combo> combos;
  for (int sgn : {-1, +1})
    for (int e1 = 1; e1 <= 20; ++e1)
      for (int e2 = 1; e2 <= 20; ++e2) {
        Combo cmb;
        cmb.p.alpha = alpha_val;
        cmb.p.alpha1 = std::ldexp(1.0, -e1);
        cmb.p.alpha2 = std::ldexp(1.0, -e2);
        cmb.p.sign2 = sgn;
        cmb.p.envelope = envelope;
        combos.push_back(cmb);
      }

  // Combos whose running minimum falls below the best fully-evaluated c so
  // far cannot win; they abandon early and record -inf. A combo tied with the
  // best never abandons (its running min stays >= best), so the maximum and
  // the index-order tie-break are schedule-independent.
  std::atomic<double> best_c{-std::numeric_limits<double>::infinity()};
  parallel_for(combos.size(), [&](std::size_t ci) {
    Combo& cmb = combos[ci];
    double c = std::numeric_limits<double>::infinity();
    double c0 = std::numeric_limits<double>::infinity(), C0 = 0.0;
    bool complete = true;
    for (const LyapSample& smp : samples) {
      const SampleCert sc = certify_sample(smp, cmb.p);
      if (!sc.valid) {
        c = -std::numeric_limits<double>::infinity();
        complete = false;
        break;
      }
      c = std::min(c, sc.c_max);
      c0 = std::min(c0, sc.emin);
      C0 = std::max(C0, sc.emax);
      if (c < best_c.load(std::memory_order_relaxed)) {
        complete = false;
        break;
      }
    }
    if (!complete) {
      cmb.c = -std::numeric_limits<double>::infinity();
      return;
    }
    cmb.c = c;
    cmb.c0 = c0;
    cmb.C0 = C0;
    double prev = best_c.load(std::memory_order_relaxed);
    while (c > prev && !best_c.compare_exchange_weak(prev, c, std::memory_order_relaxed)) {
    }
  });

  const Combo* best = nullptr;
  for (const Combo& cmb : combos)
    if (!best || cmb.c > best->c) best = &cmb;
  if (!best || !(best->c > 0.0)) {
    std::ostringstream det;
    det << "no (alpha1, alpha2, sign2) certifies a positive c with alpha = " << alpha_val;
    if (best) {
      // Rerun the best combo to report the binding sample.
      double worst_c = std::numeric_limits<double>::infinity();
      const LyapSample* worst = nullptr;
      for (const LyapSample& smp : samples) {
        const SampleCert sc = certify_sample(smp, best->p);
        const double cc = sc.valid ? sc.c_max : -std::numeric_limits<double>::infinity();
        if (cc < worst_c) {
          worst_c = cc;
          worst = &smp;
        }
      }
      if (worst) det << "; worst sample s = " << worst->s << ", omega #" << worst->omega_index;
    }
    out.details = det.str();
    return out;
  }

  out.ok = true;
  out.params = best->p;
  out.c = best->c;
  out.c0 = best->c0;
  out.C0 = best->C0;
  std::ostringstream det;
  det << "alpha = " << best->p.alpha << ", alpha1 = " << best->p.alpha1
      << ", alpha2 = " << best->p.alpha2 << ", sign2 = " << best->p.sign2
      << ", certified c = " << best->c;
  out.details = det.str();
  return out;
}

PointwiseFit pointwise_check(const HyperbolicSystem& sys, const std::vector<double>& s_grid,
                             const SphereSampling& sph, Envelope envelope,
                             const std::vector<double>& t_grid, const ConstraintBlock* cb,
                             double C_cap, double c_min) {
  struct Entry {
    double s;
    int omega_index;
    double t;
    double norm;
  };
  const int nw = sph.count();
  const std::size_t ngrid = s_grid.size() * static_cast<std::size_t>(nw);
  std::vector<std::vector<Entry>> per_grid(ngrid);
  parallel_for(ngrid, [&](std::size_t idx) {
    const std::size_t i = idx / static_cast<std::size_t>(nw);
    const int j = static_cast<int>(idx % static_cast<std::size_t>(nw));
    const double s = s_grid[i];
    const Frequency f = s == 0.0 ? Frequency::zero(sys.n())
                                 : Frequency::polar(s, sph.points[static_cast<std::size_t>(j)]);
    CMat G = sys.generator(f);
    if (cb) {
      const SubspaceBasis N = constraint_subspace(*cb, f);
      G = CMat(N.basis.adjoint() * G * N.basis);
    }
    auto& rows = per_grid[idx];
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
      const double nrm = t == 0.0 ? 1.0 : op_norm(CMat((t * G).exp()));
      rows.push_back({s, j, t, nrm});
    }
  });

  // C(c) = max over samples of norm * e^{c env t}; increasing in c, so the
  // largest admissible c is found by bisection.
  auto C_of = [&](double c) {
    double C = 0.0;
    for (const auto& rows : per_grid)
      for (const Entry& e : rows)
        C = std::max(C, e.norm * std::exp(c * envelope_value(envelope, e.s) * e.t));
    return C;
  };

  PointwiseFit out;
  if (C_of(c_min) > C_cap) {
    out.ok = false;
    for (const auto& rows : per_grid)
      for (const Entry& e : rows) {
        const double bound = C_cap * std::exp(-c_min * envelope_value(envelope, e.s) * e.t);
        if (e.norm > bound)
          out.violations.push_back({e.s, e.omega_index, e.t, e.norm, bound});
      }
    return out;
  }
  double lo = c_min, hi = 1.0;
  while (C_of(hi) <= C_cap && hi < 1e6) hi *= 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (C_of(mid) <= C_cap ? lo : hi) = mid;
  }
  out.ok = true;
  out.c = lo;
  out.C = C_of(lo);
  return out;
}

double constraint_drift(const HyperbolicSystem& sys, const ConstraintBlock& cb,
                        const Frequency& f, const CVec& u0hat,
                        const std::vector<double>& t_grid) {
  const Cplx i(0.0, 1.0);
  const CMat Cxi = i * f.s * cb.Q_omega(f.s > 0.0 ? f.omega : Vec(Vec::Zero(sys.n()))).cast<Cplx>() +
                   cb.R.cast<Cplx>();
  const double init = (Cxi * u0hat).norm();
  if (init > 1e-10 * (1.0 + u0hat.norm()))
    throw std::invalid_argument("constraint_drift: initial residual " + std::to_string(init) +
                                " violates the constraint");
  double drift = 0.0;
  for (double t : t_grid) {
    const CVec u = propagate_mode(sys, f, u0hat, t);
    drift = std::max(drift, (Cxi * u).norm());
  }
  return drift;
}

double RadialProfile::operator()(double s) const {
  switch (kind) {
    case Kind::gaussian:
      return std::exp(-s * s / (2.0 * p1 * p1));
    case Kind::ring:
      return (s >= p1 && s <= p2) ? 1.0 : 0.0;
    case Kind::powerlaw:
      return s >= 1.0 ? std::pow(1.0 + s * s, -0.5 * p1) : 0.0;
  }
  return 0.0;
}

RadialProfile RadialProfile::parse(const std::string& text) {
  RadialProfile p;
  std::string name = text, args;
  if (const std::size_t colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    args = text.substr(colon + 1);
  }
  auto split = [&](int expected) {
    std::vector<double> vals;
    std::istringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (static_cast<int>(vals.size()) != expected)
      throw std::invalid_argument("profile " + name + ": expected " + std::to_string(expected) +
                                  " parameter(s)");
    return vals;
  };
  if (name == "gaussian") {
    p.kind = Kind::gaussian;
    p.p1 = args.empty() ? 1.0 : split(1)[0];
    if (!(p.p1 > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    return p;
  }
  if (name == "ring") {
    const auto v = split(2);
    p.kind = Kind::ring;
    p.p1 = v[0];
    p.p2 = v[1];
    if (!(0.0 <= p.p1 && p.p1 < p.p2)) throw std::invalid_argument("ring needs 0 <= s0 < s1");
    return p;
  }
  if (name == "powerlaw") {
    p.kind = Kind::powerlaw;
    p.p1 = args.empty() ? 0.0 : split(1)[0];
    if (!(p.p1 > 0.0)) throw std::invalid_argument("powerlaw sigma must be positive");
    return p;
  }
  throw std::invalid_argument("unknown profile: " + name);
}

namespace {

double sphere_area(int n) {
  if (n == 1) return 2.0;
  if (n == 2) return 2.0 * std::numbers::pi;
  if (n == 3) return 4.0 * std::numbers::pi;
  throw std::invalid_argument("sphere_area: n > 3 unsupported");
}

double ls_slope_window(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  const std::size_t n = x.size();
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

}  // namespace

DecayFit l2_decay_fit(const HyperbolicSystem& sys, const RadialProfile& profile, int k, int ell,
                      const std::vector<double>& t_grid, QuadratureSpec quad,
                      const SphereSampling* sph_in, const ConstraintBlock* cb,
                      std::optional<std::pair<double, double>> fit_window) {
  if (quad.nodes < 2) throw std::invalid_argument("l2_decay_fit: need >= 2 quadrature nodes");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("l2_decay_fit: t_grid must be increasing");

  const SphereSampling sph =
      sph_in ? *sph_in : SphereSampling::standard(sys.n(), sys.n() == 3 ? 64 : 0);
  const std::vector<double> s = log_grid(quad.s_min, quad.s_max, quad.nodes);
  const int ns = quad.nodes;
  const int nw = sph.count();
  const int m = sys.m();

  // Trapezoid weights in s over the log-spaced nodes.
  std::vector<double> w(static_cast<std::size_t>(ns), 0.0);
  for (int i = 0; i + 1 < ns; ++i) {
    const double h = 0.5 * (s[static_cast<std::size_t>(i) + 1] - s[static_cast<std::size_t>(i)]);
    w[static_cast<std::size_t>(i)] += h;
    w[static_cast<std::size_t>(i) + 1] += h;
  }

  // Generic real direction; projected per frequency when constrained.
  const Vec v = Vec::Ones(m) / std::sqrt(double(m));

  struct ModeCtx {
    CMat G;
    CVec u0;
  };
  std::vector<ModeCtx> ctx(static_cast<std::size_t>(ns) * nw);
  parallel_for(ctx.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(nw));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(nw));
    const Frequency f = Frequency::polar(s[static_cast<std::size_t>(i)],
                                         sph.points[static_cast<std::size_t>(j)]);
    ModeCtx mc;
    mc.G = sys.generator(f);
    CVec u0 = v.cast<Cplx>();
    if (cb) {
      const SubspaceBasis N = constraint_subspace(*cb, f);
      u0 = N.basis * (N.basis.adjoint() * u0);
    }
    mc.u0 = profile(s[static_cast<std::size_t>(i)]) * u0;
    ctx[idx] = std::move(mc);
  });

  DecayFit fit;
  fit.k = k;
  fit.ell = ell;
  fit.t = t_grid;
  fit.norms.resize(t_grid.size());
  const double area = sphere_area(sys.n());

  std::vector<double> cell(static_cast<std::size_t>(ns), 0.0);
  std::vector<double> mode_sq(ctx.size());
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    const double t = t_grid[ti];
    parallel_for(ctx.size(), [&](std::size_t idx) {
      const ModeCtx& mc = ctx[idx];
      if (mc.u0.squaredNorm() == 0.0) {
        mode_sq[idx] = 0.0;
        return;
      }
      const CVec u = t == 0.0 ? mc.u0 : CVec(CMat((t * mc.G).exp()) * mc.u0);
      mode_sq[idx] = u.squaredNorm();
    });
    // Deterministic reduction in grid order.
    double total = 0.0;
    for (int i = 0; i < ns; ++i) {
      double avg = 0.0;
      for (int j = 0; j < nw; ++j)
        avg += mode_sq[static_cast<std::size_t>(i) * nw + static_cast<std::size_t>(j)];
      avg /= double(nw);
      const double si = s[static_cast<std::size_t>(i)];
      cell[static_cast<std::size_t>(i)] =
          w[static_cast<std::size_t>(i)] * std::pow(si, 2.0 * k + sys.n() - 1.0) * avg;
      total += cell[static_cast<std::size_t>(i)];
    }
    if (total > 0.0 && cell[static_cast<std::size_t>(ns) - 1] > 1e-6 * total)
      throw std::runtime_error("l2_decay_fit: quadrature not converged, widen s range");
    fit.norms[ti] = std::sqrt(area * total);
  }

  // Local slope d log norm / d log(1+t) by central differences.
  fit.local_slope.assign(t_grid.size(), 0.0);
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    const std::size_t a = ti == 0 ? 0 : ti - 1;
    const std::size_t b = ti + 1 == t_grid.size() ? ti : ti + 1;
    if (a == b || fit.norms[a] <= 0.0 || fit.norms[b] <= 0.0) continue;
    fit.local_slope[ti] = (std::log(fit.norms[b]) - std::log(fit.norms[a])) /
                          (std::log1p(t_grid[b]) - std::log1p(t_grid[a]));
  }

  const double t_hi = fit_window ? fit_window->second : t_grid.back();
  const double t_lo = fit_window ? fit_window->first : t_hi / 10.0;
  std::vector<double> xs, ys;
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    if (t_grid[ti] < t_lo || t_grid[ti] > t_hi || fit.norms[ti] <= 0.0) continue;
    xs.push_back(std::log1p(t_grid[ti]));
    ys.push_back(std::log(fit.norms[ti]));
  }
  if (xs.size() < 2) throw std::runtime_error("l2_decay_fit: too few points in the fit window");
  fit.fitted_slope = ls_slope_window(xs, ys);
  fit.target_slope = profile.kind == RadialProfile::Kind::powerlaw
                         ? -0.5 * ell
                         : -(0.25 * sys.n() + 0.5 * k);
  return fit;
}

}  // namespace hyperdiss
