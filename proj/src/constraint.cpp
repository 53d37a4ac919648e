// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/constraint.hpp"

#include <Eigen/SVD>

namespace hyperdiss {

ConstraintBlock ConstraintBlock::make(std::vector<Mat> Q, Mat R, double tol) {
  if (Q.empty()) throw std::invalid_argument("ConstraintBlock: Q must have n >= 1 entries");
  ConstraintBlock cb;
  cb.m1 = static_cast<int>(R.rows());
  const int m = static_cast<int>(R.cols());
  for (const Mat& Qj : Q)
    if (Qj.rows() != cb.m1 || Qj.cols() != m)
      throw std::invalid_argument("ConstraintBlock: Q[j] must match R's shape");
  if (cb.m1 >= m) throw std::invalid_argument("ConstraintBlock: m1 must be < m");
  cb.Q = std::move(Q);
  cb.R = std::move(R);

  // Pi1 = U U^T over the left singular vectors spanning Image(R).
  if (cb.R.norm() == 0.0) {
    cb.Pi1 = Mat::Zero(cb.m1, cb.m1);
  } else {
    Eigen::JacobiSVD<Mat> svd(cb.R, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * sv(0)) ++rank;
    const Mat U = svd.matrixU().leftCols(rank);
    cb.Pi1 = U * U.transpose();
  }
  cb.Pi2 = Mat::Identity(cb.m1, cb.m1) - cb.Pi1;
  return cb;
}

Mat ConstraintBlock::Q_omega(const Vec& omega) const {
  if (omega.size() != n()) throw std::invalid_argument("Q_omega: omega has wrong dimension");
  Mat M = Mat::Zero(m1, R.cols());
  for (int j = 0; j < n(); ++j) M += omega(j) * Q[static_cast<std::size_t>(j)];
  return M;
}

SubspaceBasis subspace_X(const ConstraintBlock& cb, const Direction& d, double tol) {
  return kernel_basis(Mat(cb.Pi2 * cb.Q_omega(d.omega)), tol);
}

SubspaceBasis constraint_subspace(const ConstraintBlock& cb, const Frequency& f, double tol) {
  const Cplx i(0.0, 1.0);
  if (f.s == 0.0) return kernel_basis(CMat(cb.R.cast<Cplx>()), tol);
  const CMat M = i * f.s * cb.Q_omega(f.omega).cast<Cplx>() + cb.R.cast<Cplx>();
  return kernel_basis(M, tol);
}

}  // namespace hyperdiss
