// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_RUNNER_HPP
#define HYPERDISS_RUNNER_HPP

#include <stdexcept>
#include <string>

namespace hyperdiss {

inline constexpr const char* kVersion = "hyperdiss 0.1.0";

// Everything a run needs, fully serialized into each report so results can be
// reproduced byte-for-byte.
struct RunConfig {
  std::string command;  // check | build-k | spectrum | classify | certify | decay | plot | export
  std::string model;    // builtin:<name>?<params> or a model-file path
  std::string out;
  std::string in;            // input artifact for classify/plot
  int omega_samples = 0;     // 0 = per-dimension default
  double tol = 1e-10;
  double s_min = 1e-3, s_max = 1e3;
  int s_points = 96;
  int restricted = -1;       // -1 auto (use constraint when present), 0 off, 1 on
  std::string envelope;      // "eta" | "rho" | "" (model default)
  std::string profile = "gaussian:1.0";
  int k = 0, ell = 0;
  double t_max = 1e4;
  int t_points = 48;
  double mu = 0.0;           // build-k: fixed mu; 0 = halving search
  double target_margin = 1e-6;
  int threads = 0;
  unsigned long long seed = 12345;
};

std::string config_to_json(const RunConfig& cfg);

// Used for malformed inputs and bad usage (exit code 2); numeric check
// failures exit 1 instead.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dispatches the command, writes the artifacts, and returns the process exit
// status: 0 = all expected checks passed, 1 = an expected check failed,
// 2 = usage or parse error.
int run_report(const RunConfig& cfg);

}  // namespace hyperdiss

#endif  // HYPERDISS_RUNNER_HPP
