// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hyperdiss {

namespace {

constexpr double kW = 720.0, kH = 480.0;
constexpr double kL = 70.0, kR = 20.0, kT = 36.0, kB = 48.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const std::vector<GuideLine>& guides,
                       const std::string& title) {
  if (series.empty()) throw std::invalid_argument("render_svg: no series");
  double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
  double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
  for (const auto& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size())
      throw std::invalid_argument("render_svg: series must be nonempty and matched");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0))
        throw std::invalid_argument("render_svg: log axes need positive data");
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (xmax <= xmin) xmax = xmin * 10.0;
  if (ymax <= ymin) ymax = ymin * 10.0;
  const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
  const double ly0 = std::log10(ymin) - 0.05 * (std::log10(ymax) - std::log10(ymin) + 1e-9);
  const double ly1 = std::log10(ymax) + 0.05 * (std::log10(ymax) - std::log10(ymin) + 1e-9);

  auto X = [&](double x) { return kL + (std::log10(x) - lx0) / (lx1 - lx0) * (kW - kL - kR); };
  auto Y = [&](double y) { return kH - kB - (std::log10(y) - ly0) / (ly1 - ly0) * (kH - kT - kB); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
  os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kL << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\">" << title
     << "</text>\n";

  // Decade grid.
  for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
    const double px = X(std::pow(10.0, d));
    os << "<line x1=\"" << num(px) << "\" y1=\"" << num(kT) << "\" x2=\"" << num(px) << "\" y2=\""
       << num(kH - kB) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << num(kH - kB + 16)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">1e" << d
       << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
    const double py = Y(std::pow(10.0, d));
    os << "<line x1=\"" << num(kL) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kW - kR)
       << "\" y2=\"" << num(py) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << num(kL - 6) << "\" y=\"" << num(py + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" << d
       << "</text>\n";
  }
  os << "<rect x=\"" << num(kL) << "\" y=\"" << num(kT) << "\" width=\"" << num(kW - kL - kR)
     << "\" height=\"" << num(kH - kT - kB) << "\" fill=\"none\" stroke=\"#444444\"/>\n";

  // Guides anchored at the first series' midpoint.
  const PlotSeries& ref = series.front();
  const std::size_t mid = ref.x.size() / 2;
  for (std::size_t g = 0; g < guides.size(); ++g) {
    const double xr = ref.x[mid], yr = ref.y[mid];
    const double ya = yr * std::pow(xmin / xr, guides[g].slope);
    const double yb = yr * std::pow(xmax / xr, guides[g].slope);
    auto clampy = [&](double y) {
      return std::min(std::pow(10.0, ly1), std::max(std::pow(10.0, ly0), y));
    };
    os << "<line x1=\"" << num(X(xmin)) << "\" y1=\"" << num(Y(clampy(ya))) << "\" x2=\""
       << num(X(xmax)) << "\" y2=\"" << num(Y(clampy(yb)))
       << "\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n";
    os << "<text x=\"" << num(kW - kR - 4) << "\" y=\"" << num(Y(clampy(yb)) - 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << guides[g].label
       << "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    os << "<polyline fill=\"none\" stroke=\"" << kColors[si % 5] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << " ";
      os << num(X(s.x[i])) << "," << num(Y(s.y[i]));
    }
    os << "\"/>\n";
    os << "<text x=\"" << num(kL + 8) << "\" y=\"" << num(kT + 16 + 14.0 * double(si))
       << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << kColors[si % 5] << "\">"
       << s.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void save_svg(const std::vector<PlotSeries>& series, const std::vector<GuideLine>& guides,
              const std::string& title, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << render_svg(series, guides, title);
}

}  // namespace hyperdiss
