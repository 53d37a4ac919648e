// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/conditions.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "hyperdiss/parallel.hpp"

namespace hyperdiss {

namespace {

constexpr const char* kSampledNote = "sampled-certified";

// i X_2 for a real matrix X: Hermitian whenever X_2 is the skew part.
CMat i_skew_part(const Mat& X) {
  const Mat X2 = 0.5 * (X - X.transpose());
  return Cplx(0.0, 1.0) * X2.cast<Cplx>();
}

struct OmegaScan {
  double min_margin = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  int worst = -1;
};

// Evaluates margin(omega) over the sampling in parallel, reducing to the
// minimum with deterministic tie-breaking by index.
OmegaScan scan_omegas(const SphereSampling& sph,
                      const std::function<std::pair<double, double>(const Vec&)>& eval) {
  const std::size_t N = sph.points.size();
  std::vector<double> margins(N), scales(N);
  parallel_for(N, [&](std::size_t i) {
    auto [mg, sc] = eval(sph.points[i]);
    margins[i] = mg;
    scales[i] = sc;
  });
  OmegaScan out;
  for (std::size_t i = 0; i < N; ++i) {
    out.scale = std::max(out.scale, scales[i]);
    if (margins[i] < out.min_margin) {
      out.min_margin = margins[i];
      out.worst = static_cast<int>(i);
    }
  }
  return out;
}

ConditionEntry semidefinite_entry(const SphereSampling& sph, const OmegaScan& scan,
                                  double pos_def_rel, bool strict, const char* what) {
  ConditionEntry e;
  e.tolerance = pos_def_rel * std::max(1e-300, scan.scale);
  e.margin = scan.min_margin;
  e.passed = strict ? (scan.min_margin > e.tolerance) : (scan.min_margin >= -e.tolerance);
  if (scan.worst >= 0) e.worst_omega = sph.points[static_cast<std::size_t>(scan.worst)];
  std::ostringstream det;
  det << what << (strict ? " > 0" : " >= 0") << " over " << sph.count() << " sampled omega ("
      << kSampledNote << "); scale = " << scan.scale;
  e.details = det.str();
  return e;
}

}  // namespace

double min_eig_on_subspace(const CMat& H, const SubspaceBasis& B) {
  if (B.dim() == 0) throw std::invalid_argument("min_eig_on_subspace: vacuous subspace");
  const CMat Hr = B.basis.adjoint() * H * B.basis;
  return min_eig_hermitian(Hr);
}

ConditionEntry check_S(const HyperbolicSystem& sys, const Mat& S, CheckTols tols) {
  ConditionEntry e;
  e.tolerance = tols.pos_def_rel;
  std::ostringstream det;

  const Mat SA0 = S * sys.A0();
  const double sym_resid = (SA0 - SA0.transpose()).norm() / (1.0 + SA0.norm());
  const bool sym_ok = sym_resid <= tols.identity_abs;
  det << "||SA0 - (SA0)^T||/(1+||SA0||) = " << sym_resid;

  const Mat M = 0.5 * (S * sys.L() + (S * sys.L()).transpose()) + sys.L1();
  const double scale = 1.0 + M.norm();
  Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
  const bool psd_ok = es.eigenvalues()(0) >= -tols.pos_def_rel * scale;
  det << "; lambda_min((SL)_1 + L1) = " << es.eigenvalues()(0);

  const SubspaceBasis kerM = kernel_basis(M, tols.kernel_rel);
  const SubspaceBasis kerL = kernel_basis(sys.L(), tols.kernel_rel);
  const double gap = std::max(subspace_gap(kerM, kerL), subspace_gap(kerL, kerM));
  const bool ker_ok = (kerM.dim() == kerL.dim()) && gap < tols.subspace_gap;
  det << "; dim Ker((SL)_1+L1) = " << kerM.dim() << ", dim Ker(L) = " << kerL.dim()
      << ", principal-angle gap = " << gap;

  // Margin: the dissipation strength on the complement of Ker(L).
  const SubspaceBasis coker = cokernel_basis(CMat(sys.L().cast<Cplx>()), tols.kernel_rel);
  double margin = 0.0;
  if (coker.dim() > 0) margin = min_eig_on_subspace(M.cast<Cplx>(), coker);
  det << "; lambda_min on Ker(L)^perp = " << margin;

  e.margin = margin;
  e.passed = sym_ok && psd_ok && ker_ok && margin > tols.pos_def_rel * scale;
  e.details = det.str();
  return e;
}

ConditionEntry check_S1(const HyperbolicSystem& sys, const Mat& S, const SphereSampling& sph,
                        CheckTols tols) {
  const SubspaceBasis kerL1 = kernel_basis(sys.L1(), tols.kernel_rel);
  auto scan = scan_omegas(sph, [&](const Vec& w) -> std::pair<double, double> {
    const CMat H = i_skew_part(S * sys.A_omega(w));
    if (kerL1.dim() == 0) return {0.0, op_norm(H)};
    return {min_eig_on_subspace(H, kerL1), op_norm(H)};
  });
  auto e = semidefinite_entry(sph, scan, tols.pos_def_rel, /*strict=*/false,
                              "i(SA(w))_2 on Ker(L1)");
  return e;
}

ConditionEntry check_S2(const HyperbolicSystem& sys, const Mat& S, const SphereSampling& sph,
                        CheckTols tols) {
  auto scan = scan_omegas(sph, [&](const Vec& w) -> std::pair<double, double> {
    const CMat H = i_skew_part(S * sys.A_omega(w));
    return {min_eig_hermitian(H), op_norm(H)};
  });
  return semidefinite_entry(sph, scan, tols.pos_def_rel, /*strict=*/false, "i(SA(w))_2 on C^m");
}

namespace {

// Oddness and A0-skewness residuals of an evaluated compensator, relative.
double k_structural_residual(const HyperbolicSystem& sys, const CompensatorSpec& K,
                             const Vec& w) {
  const Mat Kw = K.evaluate(sys, w);
  const Mat Kmw = K.evaluate(sys, Vec(-w));
  const double scale = 1.0 + Kw.norm();
  const double odd = (Kmw + Kw).norm() / scale;
  const Mat KA0 = Kw * sys.A0();
  const double skew = (KA0.transpose() + KA0).norm() / (1.0 + KA0.norm());
  return std::max(odd, skew);
}

}  // namespace

ConditionEntry check_K(const HyperbolicSystem& sys, const CompensatorSpec& K,
                       const SphereSampling& sph, CheckTols tols) {
  const SubspaceBasis kerL = kernel_basis(sys.L(), tols.kernel_rel);
  double struct_resid = 0.0;
  auto scan = scan_omegas(sph, [&](const Vec& w) -> std::pair<double, double> {
    const Mat KA = K.evaluate(sys, w) * sys.A_omega(w);
    const CMat H = (0.5 * (KA + KA.transpose())).cast<Cplx>();
    if (kerL.dim() == 0) return {0.0, op_norm(H)};
    return {min_eig_on_subspace(H, kerL), op_norm(H)};
  });
  for (const Vec& w : sph.points)
    struct_resid = std::max(struct_resid, k_structural_residual(sys, K, w));

  auto e = semidefinite_entry(sph, scan, tols.pos_def_rel, /*strict=*/true,
                              "(K(w)A(w))_1 on Ker(L)");
  std::ostringstream det;
  det << e.details << "; oddness/skewness residual = " << struct_resid;
  if (struct_resid >= 1e-10) {
    e.passed = false;
    det << " FAIL";
  }
  e.details = det.str();
  return e;
}

ConditionEntry check_R(const HyperbolicSystem& sys, const SphereSampling& sph, CheckTols tols) {
  const int m = sys.m();
  auto scan = scan_omegas(sph, [&](const Vec& w) -> std::pair<double, double> {
    const Mat At = sys.Atilde_omega(w);
    Mat stack(m * m, m);
    Mat P = sys.L();
    for (int k = 0; k < m; ++k) {
      stack.middleRows(k * m, m) = P;
      if (k + 1 < m) P = P * At;
    }
    Eigen::JacobiSVD<Mat> svd(stack);
    const auto& sv = svd.singularValues();
    return {sv(sv.size() - 1), sv(0)};
  });
  ConditionEntry e;
  e.tolerance = tols.kernel_rel * std::max(1e-300, scan.scale);
  e.margin = scan.min_margin;
  e.passed = scan.min_margin > e.tolerance;
  if (scan.worst >= 0) e.worst_omega = sph.points[static_cast<std::size_t>(scan.worst)];
  std::ostringstream det;
  det << "sigma_min of the rank stack [L; L At; ...; L At^{m-1}] over " << sph.count()
      << " sampled omega (" << kSampledNote << "); sigma_max = " << scan.scale;
  e.details = det.str();
  return e;
}

ConditionEntry check_C(const HyperbolicSystem& sys, const ConstraintBlock& cb,
                       const SphereSampling& sph, CheckTols tols) {
  const Mat A0iL = sys.A0_inv() * sys.L();
  auto scan = scan_omegas(sph, [&](const Vec& w) -> std::pair<double, double> {
    const Mat Qw = cb.Q_omega(w);
    const Mat At = sys.Atilde_omega(w);
    const double r1 = (Qw * At).norm();
    const double r2 = (cb.R * A0iL).norm();
    const double r3 = (Qw * A0iL + cb.R * At).norm();
    const double resid = std::max({r1, r2, r3});
    return {-resid, 1.0};
  });
  ConditionEntry e;
  e.tolerance = tols.identity_abs;
  const double resid = -scan.min_margin;
  e.margin = tols.identity_abs - resid;
  e.passed = resid < tols.identity_abs;
  if (scan.worst >= 0) e.worst_omega = sph.points[static_cast<std::size_t>(scan.worst)];
  std::ostringstream det;
  det << "max residual of the three constraint identities = " << resid << " over " << sph.count()
      << " sampled omega (" << kSampledNote << ")";
  if (e.passed)
    det << "; implies d/dt(i|xi| Q(w) u + R u) = 0 along solutions at arbitrary time";
  e.details = det.str();
  return e;
}

namespace {

// Orthonormal basis of span(B1) ∩ span(B2) via the kernel of the sum of the
// complementary projectors; stable here because the spectra are well
// separated.
SubspaceBasis intersect(const SubspaceBasis& B1, const SubspaceBasis& B2, double tol) {
  const int m = B1.ambient_dim();
  const CMat M = (CMat::Identity(m, m) - B1.projector()) + (CMat::Identity(m, m) - B2.projector());
  return kernel_basis(M, tol);
}

}  // namespace

ConditionEntry check_Kstar(const HyperbolicSystem& sys, const ConstraintBlock& cb,
                           const CompensatorSpec& K, const SphereSampling& sph, CheckTols tols) {
  const SubspaceBasis kerL = kernel_basis(sys.L(), tols.kernel_rel);
  bool vacuous_somewhere = false;
  double struct_resid = 0.0;
  auto scan = scan_omegas(sph, [&](const Vec& w) -> std::pair<double, double> {
    const SubspaceBasis Xw = subspace_X(cb, Direction(w), tols.kernel_rel);
    const SubspaceBasis both = intersect(Xw, kerL, tols.kernel_rel);
    const Mat KA = K.evaluate(sys, w) * sys.A_omega(w);
    const CMat H = (0.5 * (KA + KA.transpose())).cast<Cplx>();
    if (both.dim() == 0) return {std::numeric_limits<double>::infinity(), op_norm(H)};
    return {min_eig_on_subspace(H, both), op_norm(H)};
  });
  for (const Vec& w : sph.points)
    struct_resid = std::max(struct_resid, k_structural_residual(sys, K, w));

  ConditionEntry e;
  const double tol = tols.pos_def_rel * std::max(1e-300, scan.scale);
  e.tolerance = tol;
  if (std::isinf(scan.min_margin)) {
    vacuous_somewhere = true;
    e.margin = 0.0;
    e.passed = true;
  } else {
    e.margin = scan.min_margin;
    e.passed = scan.min_margin > tol;
    if (scan.worst >= 0) e.worst_omega = sph.points[static_cast<std::size_t>(scan.worst)];
  }
  std::ostringstream det;
  det << "(K(w)A(w))_1 > 0 on X_w ∩ Ker(L) over " << sph.count() << " sampled omega ("
      << kSampledNote << "); scale = " << scan.scale
      << "; oddness/skewness residual = " << struct_resid;
  if (vacuous_somewhere) det << "; warning: empty intersection at some omega, vacuous pass";
  if (struct_resid >= 1e-10) {
    e.passed = false;
    det << "; structural residual FAIL";
  }
  e.details = det.str();
  return e;
}

ConditionEntry check_Sstar(const HyperbolicSystem& sys, const ConstraintBlock& cb, const Mat& S,
                           const Mat& S_tilde, const SphereSampling& sph, int variant,
                           CheckTols tols) {
  if (variant != 1 && variant != 2)
    throw std::invalid_argument("check_Sstar: variant must be 1 or 2");
  if (S_tilde.rows() != cb.m1 || S_tilde.cols() != cb.m1)
    throw std::invalid_argument("check_Sstar: S_tilde must be m1 x m1");

  // Side condition: S_tilde_1 >= 0 on Image(R).
  const Mat St1 = 0.5 * (S_tilde + S_tilde.transpose());
  const SubspaceBasis imR = cokernel_basis(CMat(cb.R.transpose().cast<Cplx>()), tols.kernel_rel);
  double st_margin = 0.0;
  if (imR.dim() > 0) st_margin = min_eig_on_subspace(St1.cast<Cplx>(), imR);
  const bool st_ok = st_margin >= -tols.pos_def_rel * (1.0 + St1.norm());

  const SubspaceBasis kerL1 = kernel_basis(sys.L1(), tols.kernel_rel);
  auto scan = scan_omegas(sph, [&](const Vec& w) -> std::pair<double, double> {
    const Mat T = (cb.Pi1 * cb.Q_omega(w)).transpose() * S_tilde * cb.R;
    const CMat H = i_skew_part(S * sys.A_omega(w) - T);
    if (variant == 1) {
      if (kerL1.dim() == 0) return {0.0, op_norm(H)};
      return {min_eig_on_subspace(H, kerL1), op_norm(H)};
    }
    return {min_eig_hermitian(H), op_norm(H)};
  });
  auto e = semidefinite_entry(sph, scan, tols.pos_def_rel, /*strict=*/false,
                              variant == 1 ? "i(SA(w) - T(w))_2 on Ker(L1)"
                                           : "i(SA(w) - T(w))_2 on C^m");
  std::ostringstream det;
  det << e.details << "; S_tilde_1 margin on Image(R) = " << st_margin;
  if (!st_ok) {
    e.passed = false;
    det << " FAIL";
  }
  e.details = det.str();
  return e;
}

AlphaResult find_alpha(const HyperbolicSystem& sys, const Mat* S, const CompensatorSpec& K,
                       const SphereSampling& sph, const ConstraintBlock* cb, CheckTols tols) {
  Mat M0 = sys.L1();
  if (S) M0 += 0.5 * ((*S) * sys.L() + ((*S) * sys.L()).transpose());

  // Per-omega Hermitian pieces, restricted to X_omega when constrained.
  struct Piece {
    CMat HK, HS;
  };
  std::vector<Piece> pieces(sph.points.size());
  parallel_for(sph.points.size(), [&](std::size_t i) {
    const Vec& w = sph.points[i];
    const Mat KA = K.evaluate(sys, w) * sys.A_omega(w);
    CMat HK = (0.5 * (KA + KA.transpose())).cast<Cplx>();
    CMat HS = M0.cast<Cplx>();
    if (cb) {
      const SubspaceBasis Xw = subspace_X(*cb, Direction(w), tols.kernel_rel);
      HK = Xw.basis.adjoint() * HK * Xw.basis;
      HS = Xw.basis.adjoint() * HS * Xw.basis;
    }
    pieces[i] = {std::move(HK), std::move(HS)};
  });

  auto margin_at = [&](double alpha) {
    double mn = std::numeric_limits<double>::infinity();
    std::vector<double> vals(pieces.size());
    parallel_for(pieces.size(), [&](std::size_t i) {
      if (pieces[i].HK.rows() == 0) {
        vals[i] = std::numeric_limits<double>::infinity();
        return;
      }
      vals[i] = min_eig_hermitian(CMat(alpha * pieces[i].HK + pieces[i].HS));
    });
    for (double v : vals) mn = std::min(mn, v);
    return mn;
  };

  double scale = 0.0;
  for (const auto& p : pieces) scale = std::max(scale, op_norm(p.HK) + op_norm(p.HS));
  const double thresh = tols.pos_def_rel * std::max(1e-300, scale);

  AlphaResult out;

  // The margin is concave in alpha (vanishing at 0), so it is unimodal on
  // [0, 1]: golden-section locates its maximum, which decides existence.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = 1.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = margin_at(x1), f2 = margin_at(x2);
  for (int it = 0; it < 48; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = margin_at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = margin_at(x1);
    }
  }
  out.alpha_best = 0.5 * (a + b);
  out.margin_best = margin_at(out.alpha_best);
  if (out.margin_best <= std::max(thresh, 1e-8 * scale) || out.alpha_best <= 1e-8) {
    out.ok = false;
    out.details =
        "no alpha in (1e-8, 1] certifies: check (K)/(S) preconditions or refine the sphere "
        "sampling";
    return out;
  }

  // Bisect the right edge of {alpha : margin > thresh} starting at the peak.
  double lo = out.alpha_best, hi = 1.0;
  if (margin_at(1.0) > thresh) {
    lo = 1.0;
  } else {
    for (int it = 0; it < 60 && (hi - lo) > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      (margin_at(mid) > thresh ? lo : hi) = mid;
    }
  }
  out.ok = true;
  out.alpha = lo;
  out.margin = margin_at(lo);
  std::ostringstream det;
  det << "alpha = " << out.alpha << " (margin " << out.margin << "), alpha_best = "
      << out.alpha_best << " (margin " << out.margin_best << ")";
  out.details = det.str();
  return out;
}

}  // namespace hyperdiss
