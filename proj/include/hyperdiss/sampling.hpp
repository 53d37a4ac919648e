// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_SAMPLING_HPP
#define HYPERDISS_SAMPLING_HPP

#include <string>
#include <vector>

#include "hyperdiss/types.hpp"

namespace hyperdiss {

// Finite sample of the unit sphere S^{n-1} over which the "for each omega"
// conditions are tested. n = 1 is exact; higher dimensions are sampled, so a
// pass is evidence ("sampled-certified") while a fail is conclusive.
struct SphereSampling {
  int n = 1;
  std::string scheme;
  std::vector<Vec> points;

  int count() const { return static_cast<int>(points.size()); }

  // n=1: {+1,-1} exactly. n=2: `count` uniform angles (default 256).
  // n=3: `count` Fibonacci-lattice points (default 512).
  static SphereSampling standard(int n, int count = 0);
};

}  // namespace hyperdiss

#endif  // HYPERDISS_SAMPLING_HPP
