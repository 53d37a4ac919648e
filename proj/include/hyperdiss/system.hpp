// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_SYSTEM_HPP
#define HYPERDISS_SYSTEM_HPP

#include <utility>
#include <vector>

#include "hyperdiss/reports.hpp"
#include "hyperdiss/types.hpp"

namespace hyperdiss {

// Orthonormal basis of a subspace of C^m, produced by kernel_basis and the
// subspace helpers. An empty basis (d = 0) is valid.
struct SubspaceBasis {
  CMat basis;  // m x d, orthonormal columns
  double tol = 0.0;

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  CMat projector() const { return basis * basis.adjoint(); }
};

// Constant-coefficient symmetric hyperbolic system
//   A0 u_t + sum_j A[j] u_{x_j} + L u = 0
// with all matrices m x m and A having n entries. Immutable after
// construction; the A0 factorization is computed once and shared by every
// sweep evaluation.
class HyperbolicSystem {
 public:
  HyperbolicSystem(int n, int m, Mat A0, std::vector<Mat> A, Mat L);

  int n() const { return n_; }
  int m() const { return m_; }
  const Mat& A0() const { return A0_; }
  const std::vector<Mat>& A() const { return A_; }
  const Mat& Aj(int j) const { return A_.at(static_cast<std::size_t>(j)); }
  const Mat& L() const { return L_; }
  const Mat& L1() const { return L1_; }
  const Mat& L2() const { return L2_; }

  bool A0_factorizable() const { return A0_ok_; }
  const Mat& A0_inv() const;

  // A(omega) = sum_j A[j] omega_j.
  Mat A_omega(const Vec& omega) const;
  // Atilde(omega) = A0^{-1} A(omega).
  Mat Atilde_omega(const Vec& omega) const;

  // G(xi) = -A0^{-1} (i|xi| A(omega) + L); at xi = 0 this is -A0^{-1} L.
  CMat generator(const Frequency& f) const;

 private:
  int n_ = 0;
  int m_ = 0;
  Mat A0_;
  std::vector<Mat> A_;
  Mat L_;
  Mat L1_, L2_;
  Mat A0_inv_;
  bool A0_ok_ = false;
};

// X1 = (X + X^T)/2, X2 = (X - X^T)/2; X1 + X2 == X exactly.
std::pair<Mat, Mat> sym_skew_split(const Mat& M);

// Orthonormal kernel basis of M, rank decided by singular values below
// tol * sigma_max. Deterministic for a given (M, tol).
SubspaceBasis kernel_basis(const CMat& M, double tol = 1e-10);
SubspaceBasis kernel_basis(const Mat& M, double tol = 1e-10);

// Orthonormal basis of Ker(M)^perp = Range(M^H), the complement of the kernel.
SubspaceBasis cokernel_basis(const CMat& M, double tol = 1e-10);

// sigma_max((I - P1) B2): sine of the maximal principal angle between the two
// subspaces, 0 when span(B2) is contained in span(B1).
double subspace_gap(const SubspaceBasis& from, const SubspaceBasis& to);

// Condition (A): A0 symmetric positive definite, every A[j] symmetric,
// Re<Lz,z> >= 0 on C^m, Ker(L) nontrivial. Margin is the minimum of the
// definiteness quantities (lambda_min(A0), symmetry slack, lambda_min(L1)
// offset); structural problems (dimension mismatch) throw instead.
ConditionEntry validate_condition_A(const HyperbolicSystem& sys, double tol = 1e-10);

// A(omega) for a validated unit direction.
Mat assemble_A(const HyperbolicSystem& sys, const Direction& d);

// G(xi); throws when A0 is numerically singular.
CMat generator(const HyperbolicSystem& sys, const Frequency& f);

}  // namespace hyperdiss

#endif  // HYPERDISS_SYSTEM_HPP
