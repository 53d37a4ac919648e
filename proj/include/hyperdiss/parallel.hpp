// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_PARALLEL_HPP
#define HYPERDISS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace hyperdiss {

// Worker count used by parallel_for. Resolution order: explicit set_threads(),
// HYPERDISS_THREADS, hardware concurrency.
int thread_count();
void set_threads(int n);

// Runs fn(i) for i in [0, count). Work items must be independent; callers
// write results into pre-sized slots keyed by i, so the outcome does not
// depend on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace hyperdiss

#endif  // HYPERDISS_PARALLEL_HPP
