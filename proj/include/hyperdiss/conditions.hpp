// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_CONDITIONS_HPP
#define HYPERDISS_CONDITIONS_HPP

#include <optional>
#include <string>

#include "hyperdiss/compensator.hpp"
#include "hyperdiss/constraint.hpp"
#include "hyperdiss/reports.hpp"
#include "hyperdiss/sampling.hpp"
#include "hyperdiss/system.hpp"

namespace hyperdiss {

// Shared thresholds. A definiteness check passes when its margin exceeds
// pos_def_rel * (scale of the form); a nonnegativity check passes when the
// margin is above -pos_def_rel * scale, so exact semidefiniteness (margin 0,
// e.g. (S)_1 for the Timoshenko system) still passes.
struct CheckTols {
  double pos_def_rel = 1e-9;
  double identity_abs = 1e-10;   // residuals of matrix identities
  double kernel_rel = 1e-10;     // kernel rank threshold
  double subspace_gap = 1e-8;    // max principal-angle sine for Ker equality
};

// lambda_min of B^H H B: exact positivity test of the Hermitian form H
// restricted to span(B). Throws on an empty basis.
double min_eig_on_subspace(const CMat& H, const SubspaceBasis& B);

// Condition (S): (S A0)^T = S A0, (SL)_1 + L1 >= 0, Ker((SL)_1 + L1) = Ker(L).
// Margin: lambda_min of (SL)_1 + L1 restricted to Ker(L)^perp.
ConditionEntry check_S(const HyperbolicSystem& sys, const Mat& S, CheckTols tols = {});

// Condition (S)_1 / (S)_2: i(S A(omega))_2 >= 0 on Ker(L1) / on C^m.
ConditionEntry check_S1(const HyperbolicSystem& sys, const Mat& S, const SphereSampling& sph,
                        CheckTols tols = {});
ConditionEntry check_S2(const HyperbolicSystem& sys, const Mat& S, const SphereSampling& sph,
                        CheckTols tols = {});

// Condition (K): K odd, K(omega) A0 skew, (K(omega) A(omega))_1 > 0 on Ker(L).
ConditionEntry check_K(const HyperbolicSystem& sys, const CompensatorSpec& K,
                       const SphereSampling& sph, CheckTols tols = {});

// Condition (R): the stacked matrix [L; L At(omega); ...; L At(omega)^{m-1}]
// has full column rank m for each sampled omega. Margin: min sigma_min.
ConditionEntry check_R(const HyperbolicSystem& sys, const SphereSampling& sph,
                       CheckTols tols = {});

// Condition (C): Q(w) A0^{-1} A(w) = 0, R A0^{-1} L = 0,
// Q(w) A0^{-1} L + R A0^{-1} A(w) = 0 at each sampled omega.
ConditionEntry check_C(const HyperbolicSystem& sys, const ConstraintBlock& cb,
                       const SphereSampling& sph, CheckTols tols = {});

// Condition (K*): as check_K but positivity on X_omega ∩ Ker(L). An empty
// intersection at some omega passes vacuously with a warning in details.
ConditionEntry check_Kstar(const HyperbolicSystem& sys, const ConstraintBlock& cb,
                           const CompensatorSpec& K, const SphereSampling& sph,
                           CheckTols tols = {});

// Conditions (S*)_1 / (S*)_2: i(S A(omega) - T(omega))_2 >= 0 on Ker(L1) /
// C^m, with T(omega) = (Pi1 Q(omega))^T S_tilde R. Also verifies the
// (S*)-side condition S_tilde_1 >= 0 on Image(R).
ConditionEntry check_Sstar(const HyperbolicSystem& sys, const ConstraintBlock& cb, const Mat& S,
                           const Mat& S_tilde, const SphereSampling& sph, int variant,
                           CheckTols tols = {});

struct AlphaResult {
  bool ok = false;
  double alpha = 0.0;        // largest certifying alpha found by bisection
  double margin = 0.0;       // certified margin at `alpha`
  double alpha_best = 0.0;   // interior alpha maximizing the margin
  double margin_best = 0.0;  // margin at alpha_best
  std::string details;
};

// Largest alpha in (0, 1] with
//   min_omega lambda_min(alpha (K(w)A(w))_1 + (SL)_1 + L1) > 0
// ((SL)_1 omitted when S is null, giving the Remark-1 form). When a
// constraint block is supplied the form is restricted to X_omega (Remark 4).
// The margin is concave in alpha with a zero at alpha = 0, so the positive
// set is an interval; alpha_best is located by golden-section inside it.
AlphaResult find_alpha(const HyperbolicSystem& sys, const Mat* S, const CompensatorSpec& K,
                       const SphereSampling& sph, const ConstraintBlock* cb = nullptr,
                       CheckTols tols = {});

}  // namespace hyperdiss

#endif  // HYPERDISS_CONDITIONS_HPP
