// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hyperdiss {

namespace {
int g_threads = 0;  // 0 = unresolved

int resolve_threads() {
  if (g_threads > 0) return g_threads;
  if (const char* env = std::getenv("HYPERDISS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}
}  // namespace

int thread_count() { return resolve_threads(); }

void set_threads(int n) { g_threads = n > 0 ? n : 0; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int nt = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (nt <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hyperdiss
