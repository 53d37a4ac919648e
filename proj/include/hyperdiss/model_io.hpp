// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_MODEL_IO_HPP
#define HYPERDISS_MODEL_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "hyperdiss/catalog.hpp"
#include "hyperdiss/decay.hpp"
#include "hyperdiss/reports.hpp"
#include "hyperdiss/spectrum.hpp"

namespace hyperdiss {

// Model-definition file. Matrices are arrays of rows of finite doubles:
// { "n": int, "m": int, "A0": [[..]], "A": [[[..]]], "L": [[..]],
//   "constraint": {"m1": int, "Q": [[[..]]], "R": [[..]]}?,
//   "S": [[..]]?, "K": <spec>?, "S_tilde": [[..]]? }
ModelDef load_model_json(const std::string& path);
void save_model_json(const ModelDef& model, const std::string& path);

// Either "builtin:<name>?<params>" (catalog entry with expectations) or a
// path to a model file (no expectations).
struct LoadedModel {
  ModelDef model;
  std::optional<Expected> expected;
};
LoadedModel load_model_source(const std::string& source);

// Compensator spec files written by build-k; parameters only, never baked
// matrices for n > 1.
CompensatorSpec load_kspec_json(const std::string& path);
void save_kspec_json(const CompensatorSpec& spec, const std::string& path);

// Report JSON with the schema
// { "version": .., "config": {..}, "conditions": { name: {"passed": bool,
//   "margin": float, "worst_omega": [..]|null} }, "alpha": float|null }.
std::string report_to_json(const ConditionReport& report, const std::string& config_json);
void save_report_json(const ConditionReport& report, const std::string& config_json,
                      const std::string& path);

// Sweep CSV: s, omega_index, omega components, max_re_lambda.
void save_sweep_csv(const SpectrumSweep& sw, const std::string& path);
SpectrumSweep load_sweep_csv(const std::string& path);

// Decay CSV: t, norm, local_slope (plus header metadata comments).
void save_decay_csv(const DecayFit& fit, const std::string& path);
struct DecayCsv {
  std::vector<double> t, norm, local_slope;
  double target_slope = 0.0;
  double fitted_slope = 0.0;
};
DecayCsv load_decay_csv(const std::string& path);

}  // namespace hyperdiss

#endif  // HYPERDISS_MODEL_IO_HPP
