// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/system.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace hyperdiss {

HyperbolicSystem::HyperbolicSystem(int n, int m, Mat A0, std::vector<Mat> A, Mat L)
    : n_(n), m_(m), A0_(std::move(A0)), A_(std::move(A)), L_(std::move(L)) {
  if (n_ < 1 || m_ < 1) throw std::invalid_argument("HyperbolicSystem: n, m must be positive");
  if (A0_.rows() != m_ || A0_.cols() != m_)
    throw std::invalid_argument("HyperbolicSystem: A0 must be m x m");
  if (static_cast<int>(A_.size()) != n_)
    throw std::invalid_argument("HyperbolicSystem: A must have exactly n entries");
  for (const Mat& Aj : A_)
    if (Aj.rows() != m_ || Aj.cols() != m_)
      throw std::invalid_argument("HyperbolicSystem: every A[j] must be m x m");
  if (L_.rows() != m_ || L_.cols() != m_)
    throw std::invalid_argument("HyperbolicSystem: L must be m x m");

  std::tie(L1_, L2_) = sym_skew_split(L_);

  Eigen::LLT<Mat> llt(0.5 * (A0_ + A0_.transpose()));
  A0_ok_ = (llt.info() == Eigen::Success);
  if (A0_ok_) A0_inv_ = llt.solve(Mat::Identity(m_, m_));
}

const Mat& HyperbolicSystem::A0_inv() const {
  if (!A0_ok_)
    throw std::runtime_error("A0 is numerically singular or indefinite (condition (A) fails)");
  return A0_inv_;
}

Mat HyperbolicSystem::A_omega(const Vec& omega) const {
  if (omega.size() != n_) throw std::invalid_argument("A_omega: omega has wrong dimension");
  Mat M = Mat::Zero(m_, m_);
  for (int j = 0; j < n_; ++j) M += omega(j) * A_[static_cast<std::size_t>(j)];
  return M;
}

Mat HyperbolicSystem::Atilde_omega(const Vec& omega) const { return A0_inv() * A_omega(omega); }

CMat HyperbolicSystem::generator(const Frequency& f) const {
  const Cplx i(0.0, 1.0);
  if (f.s == 0.0) return (-A0_inv() * L_).cast<Cplx>();
  const CMat M = i * f.s * A_omega(f.omega).cast<Cplx>() + L_.cast<Cplx>();
  return -(A0_inv().cast<Cplx>() * M);
}

std::pair<Mat, Mat> sym_skew_split(const Mat& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("sym_skew_split: matrix must be square");
  Mat M1 = 0.5 * (M + M.transpose());
  Mat M2 = M - M1;  // exact complement, so M1 + M2 == M bit-for-bit
  return {std::move(M1), std::move(M2)};
}

SubspaceBasis kernel_basis(const CMat& M, double tol) {
  if (tol <= 0.0 || tol > 1e-4)
    throw std::invalid_argument("kernel_basis: tol must lie in (0, 1e-4]");
  const int m = static_cast<int>(M.cols());
  SubspaceBasis out;
  out.tol = tol;
  if (M.rows() == 0 || M.squaredNorm() == 0.0) {
    out.basis = CMat::Identity(m, m);
    return out;
  }
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++rank;
  const int d = m - rank;
  out.basis = svd.matrixV().rightCols(d);
  return out;
}

SubspaceBasis kernel_basis(const Mat& M, double tol) { return kernel_basis(CMat(M.cast<Cplx>()), tol); }

SubspaceBasis cokernel_basis(const CMat& M, double tol) {
  if (tol <= 0.0 || tol > 1e-4)
    throw std::invalid_argument("cokernel_basis: tol must lie in (0, 1e-4]");
  const int m = static_cast<int>(M.cols());
  SubspaceBasis out;
  out.tol = tol;
  if (M.rows() == 0 || M.squaredNorm() == 0.0) {
    out.basis = CMat::Zero(m, 0);
    return out;
  }
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++rank;
  out.basis = svd.matrixV().leftCols(rank);
  return out;
}

double subspace_gap(const SubspaceBasis& from, const SubspaceBasis& to) {
  if (to.dim() == 0) return 0.0;
  const CMat R = to.basis - from.basis * (from.basis.adjoint() * to.basis);
  return op_norm(R);
}

ConditionEntry validate_condition_A(const HyperbolicSystem& sys, double tol) {
  ConditionEntry e;
  e.tolerance = tol;
  std::ostringstream det;

  double sym_resid = 0.0;
  for (int j = 0; j <= sys.n(); ++j) {
    const Mat& X = (j == 0) ? sys.A0() : sys.Aj(j - 1);
    sym_resid = std::max(sym_resid, (X - X.transpose()).norm() / (1.0 + X.norm()));
  }
  det << "max symmetry residual ||Aj - Aj^T||/(1+||Aj||) = " << sym_resid;

  Eigen::SelfAdjointEigenSolver<Mat> esA0(0.5 * (sys.A0() + sys.A0().transpose()),
                                          Eigen::EigenvaluesOnly);
  const double a0_min = esA0.eigenvalues()(0);
  det << "; lambda_min(A0) = " << a0_min;

  Eigen::SelfAdjointEigenSolver<Mat> esL1(sys.L1(), Eigen::EigenvaluesOnly);
  const double l1_min = esL1.eigenvalues()(0);
  const double l1_scale = 1.0 + sys.L1().norm();
  det << "; lambda_min(L1) = " << l1_min;

  const SubspaceBasis kerL = kernel_basis(sys.L(), tol);
  det << "; dim Ker(L) = " << kerL.dim();

  const bool sym_ok = sym_resid <= tol;
  const bool a0_ok = a0_min > tol * (1.0 + sys.A0().norm());
  const bool l1_ok = l1_min >= -tol * l1_scale;  // Re<Lz,z> = <L1 z, z>
  const bool ker_ok = kerL.dim() > 0;
  e.passed = sym_ok && a0_ok && l1_ok && ker_ok;

  if (sys.L().norm() == 0.0) det << "; warning: L = 0: no dissipation";
  if (!sym_ok) det << "; FAIL: a coefficient matrix is not symmetric";
  if (!l1_ok) det << "; FAIL: L is not nonnegative definite";
  if (!ker_ok) det << "; FAIL: Ker(L) is trivial";

  // Margin: the binding definiteness quantity. Symmetry/kernel failures are
  // reported through `details` and a nonpositive margin.
  double margin = a0_min;
  if (!l1_ok) margin = std::min(margin, l1_min);
  if (!sym_ok) margin = std::min(margin, -sym_resid);
  if (!ker_ok) margin = std::min(margin, 0.0);
  e.margin = margin;
  e.details = det.str();
  return e;
}

Mat assemble_A(const HyperbolicSystem& sys, const Direction& d) { return sys.A_omega(d.omega); }

CMat generator(const HyperbolicSystem& sys, const Frequency& f) { return sys.generator(f); }

}  // namespace hyperdiss
