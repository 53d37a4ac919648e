// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_CONSTRAINT_HPP
#define HYPERDISS_CONSTRAINT_HPP

#include <vector>

#include "hyperdiss/system.hpp"
#include "hyperdiss/types.hpp"

namespace hyperdiss {

// Side condition sum_j Q[j] u_{x_j} + R u = 0 with Q[j], R of size m1 x m,
// m1 < m. Pi1 projects C^{m1} onto Image(R); Pi2 = I - Pi1.
struct ConstraintBlock {
  int m1 = 0;
  std::vector<Mat> Q;
  Mat R;
  Mat Pi1, Pi2;  // m1 x m1 real symmetric projectors

  static ConstraintBlock make(std::vector<Mat> Q, Mat R, double tol = 1e-10);

  int n() const { return static_cast<int>(Q.size()); }
  Mat Q_omega(const Vec& omega) const;
};

// X_omega = Ker(Pi2 Q(omega)), the subspace compatible with the
// divergence-type part of the constraint.
SubspaceBasis subspace_X(const ConstraintBlock& cb, const Direction& d, double tol = 1e-10);

// N(xi) = Ker(i|xi| Q(omega) + R): the Fourier-space constraint set, invariant
// under the generator when condition (C) holds.
SubspaceBasis constraint_subspace(const ConstraintBlock& cb, const Frequency& f,
                                  double tol = 1e-10);

}  // namespace hyperdiss

#endif  // HYPERDISS_CONSTRAINT_HPP
