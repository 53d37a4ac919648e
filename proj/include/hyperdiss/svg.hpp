// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERDISS_SVG_HPP
#define HYPERDISS_SVG_HPP

#include <string>
#include <vector>

namespace hyperdiss {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;  // strictly positive: log-log axes
};

struct GuideLine {
  double slope = 0.0;  // reference power-law slope in log-log coordinates
  std::string label;
};

// Deterministic log-log SVG: identical input produces byte-identical output.
// Guides are dashed power laws anchored at the first series' midpoint.
// Throws on empty or nonpositive data.
std::string render_svg(const std::vector<PlotSeries>& series, const std::vector<GuideLine>& guides,
                       const std::string& title);

void save_svg(const std::vector<PlotSeries>& series, const std::vector<GuideLine>& guides,
              const std::string& title, const std::string& path);

}  // namespace hyperdiss

#endif  // HYPERDISS_SVG_HPP
