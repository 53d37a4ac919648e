// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_COMPENSATOR_HPP
#define HYPERDISS_COMPENSATOR_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperdiss/constraint.hpp"
#include "hyperdiss/sampling.hpp"
#include "hyperdiss/system.hpp"

namespace hyperdiss {

// K(omega) = omega * K0 for one-dimensional systems.
struct ConstantK {
  Mat K0;
};

// Controllability-stack construction of K(omega) from powers of
// Atilde(omega): mu^{kappa_k} weighted commutator brackets.
struct KalmanK {
  double mu = 0.0;
  std::vector<double> kappa;  // m + 1 entries, kappa[0] = 0
};

// Closed-form K(omega) shipped with a catalog model, identified by name plus
// the scalar parameters it needs.
struct BuiltinK {
  std::string name;
  std::map<std::string, double> params;
};

struct CompensatorSpec {
  std::variant<ConstantK, KalmanK, BuiltinK> variant;

  bool is_constant() const { return std::holds_alternative<ConstantK>(variant); }
  bool is_kalman() const { return std::holds_alternative<KalmanK>(variant); }
  bool is_builtin() const { return std::holds_alternative<BuiltinK>(variant); }

  // Evaluate K(omega). Oddness and (K A0)-skewness hold by construction of
  // every variant; they are asserted by check_K and the unit tests.
  Mat evaluate(const HyperbolicSystem& sys, const Vec& omega) const;
};

// kappa_k = k(2m - k): strictly increasing with constant second difference
// -2, so the concavity gap nu equals 1.
std::vector<double> kappa_sequence(int m);

// Validates the (4.3)-type constraints on a kappa sequence and returns nu.
double kappa_gap(const std::vector<double>& kappa);

// The explicit compensating matrix
//   K(w) = sum_{k=1}^{m-1} mu^{kappa_k} {(L At^k)^T L At^{k-1}
//                                         - (L At^{k-1})^T L At^k} A0^{-1}.
Mat build_K(const HyperbolicSystem& sys, const KalmanK& spec, const Direction& d);

// Characteristic polynomial coefficients a_0..a_{m-1} of Atilde(omega)
// (monic: lambda^m + sum a_k lambda^k), via the Faddeev-LeVerrier recursion.
std::vector<double> char_poly_coeffs(const Mat& M);

// Conservative admissible-mu bound from the proof constant C1 =
// max_k,omega |a_k(omega)|^2; diagnostic only, the search certifies directly.
double mu_upper_bound_from_C1(const HyperbolicSystem& sys, const SphereSampling& sph);

struct MuTuneResult {
  CompensatorSpec spec;
  double mu = 0.0;
  double margin = 0.0;          // accepted relative margin
  std::string certified_under;  // "K" or "Kstar"
  std::vector<std::pair<double, double>> trajectory;  // (mu, relative margin)
};

// Halving search mu in {2^-1 .. 2^-40}; accepts the first mu whose check_K
// margin (or check_Kstar margin when a constraint block is supplied) reaches
// target_margin relative to the scale of (K A)_1. Requires condition (R).
MuTuneResult tune_mu(const HyperbolicSystem& sys, const SphereSampling& sph,
                     double target_margin = 1e-6, const ConstraintBlock* cb = nullptr);

}  // namespace hyperdiss

#endif  // HYPERDISS_COMPENSATOR_HPP
