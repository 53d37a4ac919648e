// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/sampling.hpp"

#include <cmath>
#include <numbers>

namespace hyperdiss {

SphereSampling SphereSampling::standard(int n, int count) {
  if (n < 1) throw std::invalid_argument("SphereSampling: n must be >= 1");
  SphereSampling sph;
  sph.n = n;
  if (n == 1) {
    sph.scheme = "exact-pair";
    Vec p(1), q(1);
    p << 1.0;
    q << -1.0;
    sph.points = {p, q};
    return sph;
  }
  if (n == 2) {
    if (count <= 0) count = 256;
    sph.scheme = "uniform-angle";
    sph.points.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      const double th = 2.0 * std::numbers::pi * k / count;
      Vec p(2);
      p << std::cos(th), std::sin(th);
      sph.points.push_back(p);
    }
    return sph;
  }
  if (n == 3) {
    if (count <= 0) count = 512;
    sph.scheme = "fibonacci";
    sph.points.reserve(static_cast<std::size_t>(count));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * k;
      Vec p(3);
      p << r * std::cos(phi), r * std::sin(phi), z;
      p /= p.norm();
      sph.points.push_back(p);
    }
    return sph;
  }
  throw std::invalid_argument("SphereSampling: n > 3 is outside the supported design point");
}

}  // namespace hyperdiss
