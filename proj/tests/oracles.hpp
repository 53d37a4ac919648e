// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, independent of the library paths they check.

#ifndef HYPERDISS_TESTS_ORACLES_HPP
#define HYPERDISS_TESTS_ORACLES_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>
#include <vector>

#include "hyperdiss/types.hpp"

namespace oracles {

using hyperdiss::CMat;
using hyperdiss::Cplx;
using hyperdiss::CVec;
using hyperdiss::Mat;
using hyperdiss::Vec;

// Fixed-step classical RK4 for u' = G u; step chosen from ||G|| so the local
// error stays far below the comparison tolerances.
inline CVec rk4_integrate(const CMat& G, const CVec& u0, double t, int steps_per_unit = 400) {
  const double scale = std::max(1.0, hyperdiss::op_norm(G));
  const int steps = std::max(16, static_cast<int>(t * scale * steps_per_unit / 4.0));
  const double h = t / steps;
  CVec u = u0;
  for (int i = 0; i < steps; ++i) {
    const CVec k1 = G * u;
    const CVec k2 = G * (u + 0.5 * h * k1);
    const CVec k3 = G * (u + 0.5 * h * k2);
    const CVec k4 = G * (u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

// Monic characteristic coefficients by the Faddeev-LeVerrier recursion over
// complex matrices (independent of the library's real-only version).
inline std::vector<Cplx> char_poly_complex(const CMat& M) {
  const int m = static_cast<int>(M.rows());
  std::vector<Cplx> c(static_cast<std::size_t>(m) + 1, Cplx(0.0, 0.0));
  c[static_cast<std::size_t>(m)] = 1.0;
  CMat N = CMat::Identity(m, m);
  for (int k = 1; k <= m; ++k) {
    const CMat MN = M * N;
    const Cplx ck = -MN.trace() / double(k);
    c[static_cast<std::size_t>(m - k)] = ck;
    N = MN + ck * CMat::Identity(m, m);
  }
  return c;
}

// Roots of a monic polynomial via its companion matrix.
inline std::vector<Cplx> poly_roots(const std::vector<Cplx>& coeffs) {
  const int m = static_cast<int>(coeffs.size()) - 1;
  CMat C = CMat::Zero(m, m);
  for (int i = 1; i < m; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) C(i, m - 1) = -coeffs[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<CMat> es(C, false);
  const CVec& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Multiset distance between two spectra by greedy nearest-neighbor matching
// (exact for spectra separated well beyond the matching tolerance).
inline double spectrum_distance(const std::vector<Cplx>& a, std::vector<Cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (const Cplx& x : a) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < b.size(); ++j)
      if (std::abs(x - b[j]) < std::abs(x - b[best])) best = j;
    d = std::max(d, std::abs(x - b[best]));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return d;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  Mat matrix(int r, int c) {
    Mat M(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) M(i, j) = uniform();
    return M;
  }
  CVec cvector(int m) {
    CVec v(m);
    for (int i = 0; i < m; ++i) v(i) = Cplx(uniform(), uniform());
    return v;
  }
  Vec unit(int n) {
    Vec v(n);
    for (;;) {
      for (int i = 0; i < n; ++i) v(i) = std::normal_distribution<double>()(gen);
      const double nrm = v.norm();
      if (nrm > 1e-3) return v / nrm;
    }
  }
  // Symmetric PSD with a kernel of the requested dimension.
  Mat psd_with_kernel(int m, int kdim) {
    const Mat B = matrix(m, m - kdim);
    return B * B.transpose();
  }
};

}  // namespace oracles

#endif  // HYPERDISS_TESTS_ORACLES_HPP
