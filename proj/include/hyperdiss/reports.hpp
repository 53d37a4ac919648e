// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_REPORTS_HPP
#define HYPERDISS_REPORTS_HPP

#include <map>
#include <optional>
#include <string>

#include "hyperdiss/types.hpp"

namespace hyperdiss {

// One structural-condition verdict. For eigenvalue-type conditions the margin
// is the smallest relevant eigenvalue (or singular value), so margin > 0 means
// passed; for identity-type conditions (C) the margin is tolerance - residual.
struct ConditionEntry {
  bool passed = false;
  double margin = 0.0;
  double tolerance = 0.0;
  std::optional<Vec> worst_omega;
  std::string details;
};

struct ConditionReport {
  std::map<std::string, ConditionEntry> entries;
  std::optional<double> alpha;  // from find_alpha, when run

  void set(const std::string& name, ConditionEntry e) { entries[name] = std::move(e); }
  bool has(const std::string& name) const { return entries.count(name) > 0; }
  const ConditionEntry& at(const std::string& name) const { return entries.at(name); }
  bool passed(const std::string& name) const {
    auto it = entries.find(name);
    return it != entries.end() && it->second.passed;
  }
};

}  // namespace hyperdiss

#endif  // HYPERDISS_REPORTS_HPP
