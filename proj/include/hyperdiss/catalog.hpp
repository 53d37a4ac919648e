// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_CATALOG_HPP
#define HYPERDISS_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperdiss/compensator.hpp"
#include "hyperdiss/constraint.hpp"
#include "hyperdiss/system.hpp"

namespace hyperdiss {

// A complete model: the hyperbolic system plus whatever auxiliary data it
// ships with (constraint block, symmetrizer S, compensator spec, S_tilde).
struct ModelDef {
  std::string name;
  HyperbolicSystem sys;
  std::optional<ConstraintBlock> cb;
  std::optional<Mat> S;
  std::optional<CompensatorSpec> K;
  std::optional<Mat> S_tilde;
};

// What a catalog model is known to satisfy; the acceptance suite re-derives
// every claim, the catalog only predicts.
struct Expected {
  std::vector<std::string> pass;  // condition names that must pass
  std::vector<std::string> fail;  // informational: known to fail
  int p = 0;
  int q = 0;
  Envelope envelope = Envelope::eta;
  bool restricted = false;
};

struct CatalogEntry {
  ModelDef model;
  std::map<std::string, double> params;
  Expected expected;
};

// Beam system in the first-order variables (w_x - psi, w_t, a psi_x, psi_t):
// n = 1, m = 4, with S and K attached and beta at half its sharp bound.
CatalogEntry timoshenko(double a, double gamma);

// Linearized isentropic Euler-Maxwell system around (rho_inf, 0, 0, B_inf):
// n = 3, m = 10, with the divergence constraint block (m1 = 2).
CatalogEntry euler_maxwell(double rho_inf, double p_prime, const Eigen::Vector3d& B_inf);

// Damped-wave p-system with symmetric L: exercises the standard-decay path
// with S = 0 and a tuned Kalman compensator.
CatalogEntry symmetric_toy();

// Evaluate a named closed-form compensator ("euler-maxwell").
Mat catalog_builtin_K(const BuiltinK& spec, const HyperbolicSystem& sys, const Vec& omega);

// Parse "builtin:timoshenko?a=2&gamma=1" style sources.
CatalogEntry catalog_from_uri(const std::string& uri);

}  // namespace hyperdiss

#endif  // HYPERDISS_CATALOG_HPP
