// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_SPECTRUM_HPP
#define HYPERDISS_SPECTRUM_HPP

#include <string>
#include <vector>

#include "hyperdiss/constraint.hpp"
#include "hyperdiss/sampling.hpp"
#include "hyperdiss/system.hpp"

namespace hyperdiss {

// Eigenvalues of the characteristic problem (lambda A0 + i|xi| A(omega) + L)
// phi = 0, i.e. of G(xi). With a constraint block, eigenvalues of G restricted
// to the invariant subspace N(xi) = Ker(i|xi| Q(omega) + R); throws when the
// invariance residual exceeds 1e-8 (condition (C) violated).
std::vector<Cplx> eigenvalues_at(const HyperbolicSystem& sys, const Frequency& f,
                                 const ConstraintBlock* cb = nullptr, double tol = 1e-10);

// Spectral-abscissa samples over an (s, omega) grid.
struct SpectrumSweep {
  std::vector<double> s_grid;
  SphereSampling omegas;
  Mat abscissa;  // s index x omega index, max Re lambda
  bool restricted = false;

  double worst_abscissa(int si) const { return abscissa.row(si).maxCoeff(); }
};

SpectrumSweep sweep(const HyperbolicSystem& sys, const std::vector<double>& s_grid,
                    const SphereSampling& sph, const ConstraintBlock* cb = nullptr);

struct ClassifyOptions {
  double low_lo = 1e-3, low_hi = 1e-1;   // decades fitting |xi|^{2p}
  double high_lo = 1e1, high_hi = 1e3;   // decades fitting the (1+|xi|^2)^q loss
  double residual_tol = 0.15;            // max sub-decade slope deviation
  double integer_tol = 0.2;              // distance of a fitted slope to 2Z
};

// Uniform dissipativity type: Re lambda(i xi) <= -c |xi|^{2p} / (1+|xi|^2)^q.
struct DissipativityType {
  bool classified = false;
  int p = 0;
  int q = 0;
  double c = 0.0;
  double low_slope = 0.0, high_slope = 0.0;
  double low_resid = 0.0, high_resid = 0.0;
  std::string note;
};

DissipativityType classify(const SpectrumSweep& sw, ClassifyOptions opts = {});

// Log-spaced grid helper, endpoints included.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace hyperdiss

#endif  // HYPERDISS_SPECTRUM_HPP
