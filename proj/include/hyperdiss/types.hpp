// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_TYPES_HPP
#define HYPERDISS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace hyperdiss {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Cplx = std::complex<double>;

// Unit direction on the sphere S^{n-1}.
struct Direction {
  Vec omega;

  explicit Direction(Vec w) : omega(std::move(w)) {
    if (std::abs(omega.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("Direction: |omega| must be 1 within 1e-12");
  }
  int n() const { return static_cast<int>(omega.size()); }
};

// Fourier variable xi, kept in polar form (s, omega). s = 0 is a valid
// sample with no direction attached.
struct Frequency {
  double s = 0.0;
  Vec omega;  // unit vector; empty when s == 0

  static Frequency zero(int n) {
    Frequency f;
    f.s = 0.0;
    f.omega = Vec::Zero(n);
    return f;
  }
  static Frequency polar(double s, const Vec& omega) {
    if (s < 0.0) throw std::invalid_argument("Frequency: s must be >= 0");
    Frequency f;
    f.s = s;
    f.omega = omega;
    if (s > 0.0 && std::abs(omega.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("Frequency: |omega| must be 1");
    return f;
  }
  static Frequency cartesian(const Vec& xi) {
    Frequency f;
    f.s = xi.norm();
    f.omega = f.s > 0.0 ? Vec(xi / f.s) : Vec(Vec::Zero(xi.size()));
    return f;
  }

  Vec xi() const { return s * omega; }
  // rho(xi) = |xi|^2/(1+|xi|^2): standard-decay envelope.
  double rho() const { return s * s / (1.0 + s * s); }
  // eta(xi) = |xi|^2/(1+|xi|^2)^2: regularity-loss envelope.
  double eta() const { return s * s / ((1.0 + s * s) * (1.0 + s * s)); }
};

enum class Envelope { eta, rho };

inline double envelope_value(Envelope e, double s) {
  const double s2 = s * s;
  return e == Envelope::eta ? s2 / ((1.0 + s2) * (1.0 + s2)) : s2 / (1.0 + s2);
}

inline const char* envelope_name(Envelope e) { return e == Envelope::eta ? "eta" : "rho"; }

// Hermitize a numerically-almost-Hermitian matrix before an eigensolve.
inline CMat hermitian_part(const CMat& M) { return 0.5 * (M + M.adjoint()); }

inline double min_eig_hermitian(const CMat& H) {
  if (H.rows() == 0) throw std::invalid_argument("min_eig_hermitian: empty matrix");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(H), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double max_eig_hermitian(const CMat& H) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(H), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(H.rows() - 1);
}

// Spectral norm through the Hermitian square; fine at the m <= 64 design point.
inline double op_norm(const CMat& M) {
  if (M.size() == 0) return 0.0;
  const CMat S = M.adjoint() * M;
  const double lam = max_eig_hermitian(S);
  return lam > 0.0 ? std::sqrt(lam) : 0.0;
}

}  // namespace hyperdiss

#endif  // HYPERDISS_TYPES_HPP
