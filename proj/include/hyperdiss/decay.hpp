// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_DECAY_HPP
#define HYPERDISS_DECAY_HPP

#include <optional>
#include <string>
#include <vector>

#include "hyperdiss/compensator.hpp"
#include "hyperdiss/constraint.hpp"
#include "hyperdiss/sampling.hpp"
#include "hyperdiss/system.hpp"

namespace hyperdiss {

// exp(t G(xi)) u0hat by scaling-and-squaring; G is nonnormal, so no
// eigendecomposition is attempted.
CVec propagate_mode(const HyperbolicSystem& sys, const Frequency& f, const CVec& u0hat, double t);

// Parameters of the frequency-weighted quadratic form
//   E = <A0 u, u> + w1 <(S A0)_1 u, u> + sign2 * w2 <i K(w) A0 u, u>
// with w1 = a1/(1+s^2), w2 = a1 a2 alpha s/(1+s^2)^2 for the eta envelope and
// w1 = a1, w2 = a1 a2 alpha s/(1+s^2) for rho.
struct LyapunovParams {
  double alpha = 0.0;   // from find_alpha
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  int sign2 = -1;
  Envelope envelope = Envelope::eta;
};

// The Hermitian matrix of the form above. Throws "alpha1/alpha2 too large"
// when the result is not positive definite.
CMat lyapunov_matrix(const HyperbolicSystem& sys, const Mat& S, const CompensatorSpec& K,
                     const Frequency& f, const LyapunovParams& p);

struct CertifyResult {
  bool certified = false;
  double min_margin = 0.0;  // min over the grid of lambda_min(D - 2c env E)
  double c0 = 0.0, C0 = 0.0;  // extreme eigenvalues of E over the grid
  double worst_s = 0.0;
  int worst_omega = -1;
  std::string details;
};

// Checks lambda_min(D - 2 c env(s) E) >= 0 at every (s, omega) with
// D = -(E G + G^H E). A nonnegative margin certifies
// |u(t,xi)| <= sqrt(C0/c0) e^{-c env(xi) t} |u0(xi)| on the sampled set.
// With a constraint block, the forms are projected onto N(xi) first.
CertifyResult certify_decay(const HyperbolicSystem& sys, const Mat& S, const CompensatorSpec& K,
                            const LyapunovParams& p, double c, const std::vector<double>& s_grid,
                            const SphereSampling& sph, const ConstraintBlock* cb = nullptr);

struct LyapunovTuneResult {
  bool ok = false;
  LyapunovParams params;
  double c = 0.0;
  double c0 = 0.0, C0 = 0.0;
  std::string details;
};

// Coordinate search over alpha1, alpha2 in {2^-1..2^-20} and sign2 = +-1 for
// the largest certified c; alpha comes from find_alpha (restricted to X_omega
// when constrained) unless supplied.
LyapunovTuneResult tune_lyapunov(const HyperbolicSystem& sys, const Mat& S,
                                 const CompensatorSpec& K, Envelope envelope,
                                 const std::vector<double>& s_grid, const SphereSampling& sph,
                                 const ConstraintBlock* cb = nullptr,
                                 std::optional<double> alpha = std::nullopt);

struct PointwiseViolation {
  double s = 0.0;
  int omega_index = -1;
  double t = 0.0;
  double norm = 0.0;
  double bound = 0.0;
};

struct PointwiseFit {
  bool ok = false;
  double C = 0.0;  // smallest prefactor at the fitted c
  double c = 0.0;  // largest rate with C <= C_cap
  std::vector<PointwiseViolation> violations;
};

// Measures ||exp(t G)|| over the grid (restricted norm when constrained) and
// fits ||exp(t G)|| <= C e^{-c env(s) t}. Fails, listing violations, when no
// (C <= C_cap, c >= c_min) fits.
PointwiseFit pointwise_check(const HyperbolicSystem& sys, const std::vector<double>& s_grid,
                             const SphereSampling& sph, Envelope envelope,
                             const std::vector<double>& t_grid, const ConstraintBlock* cb = nullptr,
                             double C_cap = 100.0, double c_min = 1e-4);

// Max over t_grid of |i|xi| Q(w) u(t) + R u(t)| along the propagated mode.
// The initial datum must satisfy the constraint to 1e-10.
double constraint_drift(const HyperbolicSystem& sys, const ConstraintBlock& cb,
                        const Frequency& f, const CVec& u0hat, const std::vector<double>& t_grid);

// Radial initial-data profiles for the decay-rate experiments.
//   gaussian:w      |u0|(s) = exp(-s^2 / (2 w^2))
//   ring:s0,s1      indicator of [s0, s1]
//   powerlaw:sigma  (1+s^2)^{-sigma/2} supported on s >= 1; the low-frequency
//                   cutoff removes the L^1-driven heat rate (and makes the
//                   L^1 norm infinite), isolating the regularity-limited term.
struct RadialProfile {
  enum class Kind { gaussian, ring, powerlaw };
  Kind kind = Kind::gaussian;
  double p1 = 1.0, p2 = 0.0;

  double operator()(double s) const;
  static RadialProfile parse(const std::string& text);
  // sigma giving data exactly in H^{k+ell} (and not better).
  static double powerlaw_sigma(int k, int ell, int n) { return k + ell + 0.5 * n + 0.25; }
};

struct QuadratureSpec {
  double s_min = 1e-4, s_max = 1e4;
  int nodes = 512;
};

struct DecayFit {
  int k = 0, ell = 0;
  std::vector<double> t;
  std::vector<double> norms;        // ||d_x^k u(t)||
  std::vector<double> local_slope;  // d log norm / d log(1+t)
  double fitted_slope = 0.0;        // least squares over the fit window
  double target_slope = 0.0;
};

// ||d_x^k u(t)||^2 as the n-dimensional radial integral of
// s^{2k} (sphere average of |exp(tG) u0|^2) s^{n-1} ds. The fit window
// defaults to the last decade of t_grid.
DecayFit l2_decay_fit(const HyperbolicSystem& sys, const RadialProfile& profile, int k, int ell,
                      const std::vector<double>& t_grid, QuadratureSpec quad = {},
                      const SphereSampling* sph = nullptr, const ConstraintBlock* cb = nullptr,
                      std::optional<std::pair<double, double>> fit_window = std::nullopt);

}  // namespace hyperdiss

#endif  // HYPERDISS_DECAY_HPP
