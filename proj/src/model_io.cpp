// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hyperdiss {

using json = nlohmann::ordered_json;

namespace {

json mat_to_json(const Mat& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw std::runtime_error(std::string(what) + ": expected rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  Mat M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw std::runtime_error(std::string(what) + ": ragged matrix");
    for (int jj = 0; jj < cols; ++jj) {
      const json& v = row.at(static_cast<std::size_t>(jj));
      if (!v.is_number()) throw std::runtime_error(std::string(what) + ": non-numeric entry");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw std::runtime_error(std::string(what) + ": non-finite entry");
      M(i, jj) = x;
    }
  }
  return M;
}

json kspec_to_json(const CompensatorSpec& spec) {
  json j;
  if (const auto* c = std::get_if<ConstantK>(&spec.variant)) {
    j["variant"] = "constant";
    j["matrix"] = mat_to_json(c->K0);
  } else if (const auto* k = std::get_if<KalmanK>(&spec.variant)) {
    j["variant"] = "kalman";
    j["mu"] = k->mu;
    j["kappa"] = k->kappa;
  } else {
    const auto& b = std::get<BuiltinK>(spec.variant);
    j["variant"] = "builtin";
    j["name"] = b.name;
    json params;
    for (const auto& [key, val] : b.params) params[key] = val;
    j["params"] = std::move(params);
  }
  return j;
}

CompensatorSpec kspec_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "constant") return CompensatorSpec{ConstantK{mat_from_json(j.at("matrix"), "K")}};
  if (variant == "kalman") {
    KalmanK k;
    k.mu = j.at("mu").get<double>();
    k.kappa = j.at("kappa").get<std::vector<double>>();
    return CompensatorSpec{k};
  }
  if (variant == "builtin") {
    BuiltinK b;
    b.name = j.at("name").get<std::string>();
    if (j.contains("params"))
      for (const auto& [key, val] : j.at("params").items()) b.params[key] = val.get<double>();
    return CompensatorSpec{b};
  }
  throw std::runtime_error("unknown compensator variant: " + variant);
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse error in " + path + ": " + e.what());
  }
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

ModelDef load_model_json(const std::string& path) {
  const json j = parse_file(path);
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  Mat A0 = mat_from_json(j.at("A0"), "A0");
  std::vector<Mat> A;
  for (const auto& Aj : j.at("A")) A.push_back(mat_from_json(Aj, "A[j]"));
  Mat L = mat_from_json(j.at("L"), "L");
  ModelDef model{j.value("name", std::string("model")), HyperbolicSystem(n, m, A0, A, L),
                 std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  if (j.contains("constraint")) {
    const json& c = j.at("constraint");
    std::vector<Mat> Q;
    for (const auto& Qj : c.at("Q")) Q.push_back(mat_from_json(Qj, "Q[j]"));
    Mat R = mat_from_json(c.at("R"), "R");
    model.cb = ConstraintBlock::make(Q, R);
    if (c.contains("m1") && c.at("m1").get<int>() != model.cb->m1)
      throw std::runtime_error("constraint: m1 does not match R's row count");
  }
  if (j.contains("S")) model.S = mat_from_json(j.at("S"), "S");
  if (j.contains("K")) model.K = kspec_from_json(j.at("K"));
  if (j.contains("S_tilde")) model.S_tilde = mat_from_json(j.at("S_tilde"), "S_tilde");
  return model;
}

void save_model_json(const ModelDef& model, const std::string& path) {
  json j;
  j["name"] = model.name;
  j["n"] = model.sys.n();
  j["m"] = model.sys.m();
  j["A0"] = mat_to_json(model.sys.A0());
  json A = json::array();
  for (const Mat& Aj : model.sys.A()) A.push_back(mat_to_json(Aj));
  j["A"] = std::move(A);
  j["L"] = mat_to_json(model.sys.L());
  if (model.cb) {
    json c;
    c["m1"] = model.cb->m1;
    json Q = json::array();
    for (const Mat& Qj : model.cb->Q) Q.push_back(mat_to_json(Qj));
    c["Q"] = std::move(Q);
    c["R"] = mat_to_json(model.cb->R);
    j["constraint"] = std::move(c);
  }
  if (model.S) j["S"] = mat_to_json(*model.S);
  if (model.K) j["K"] = kspec_to_json(*model.K);
  if (model.S_tilde) j["S_tilde"] = mat_to_json(*model.S_tilde);
  write_file(path, j.dump(2) + "\n");
}

LoadedModel load_model_source(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) {
    CatalogEntry entry = catalog_from_uri(source);
    return {std::move(entry.model), std::move(entry.expected)};
  }
  return {load_model_json(source), std::nullopt};
}

CompensatorSpec load_kspec_json(const std::string& path) {
  return kspec_from_json(parse_file(path));
}

void save_kspec_json(const CompensatorSpec& spec, const std::string& path) {
  write_file(path, kspec_to_json(spec).dump(2) + "\n");
}

std::string report_to_json(const ConditionReport& report, const std::string& config_json) {
  json j;
  j["version"] = "hyperdiss 0.1.0";
  if (!config_json.empty()) j["config"] = json::parse(config_json);
  json conds;
  for (const auto& [name, e] : report.entries) {
    json je;
    je["passed"] = e.passed;
    je["margin"] = e.margin;
    je["tolerance"] = e.tolerance;
    if (e.worst_omega) {
      json w = json::array();
      for (int i = 0; i < e.worst_omega->size(); ++i) w.push_back((*e.worst_omega)(i));
      je["worst_omega"] = std::move(w);
    } else {
      je["worst_omega"] = nullptr;
    }
    je["details"] = e.details;
    conds[name] = std::move(je);
  }
  j["conditions"] = std::move(conds);
  if (report.alpha)
    j["alpha"] = *report.alpha;
  else
    j["alpha"] = nullptr;
  return j.dump(2) + "\n";
}

void save_report_json(const ConditionReport& report, const std::string& config_json,
                      const std::string& path) {
  write_file(path, report_to_json(report, config_json));
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void save_sweep_csv(const SpectrumSweep& sw, const std::string& path) {
  std::ostringstream os;
  os << "# hyperdiss sweep; restricted=" << (sw.restricted ? 1 : 0) << "; n=" << sw.omegas.n
     << "\n";
  os << "s,omega_index";
  for (int d = 0; d < sw.omegas.n; ++d) os << ",omega" << d + 1;
  os << ",max_re_lambda\n";
  for (std::size_t i = 0; i < sw.s_grid.size(); ++i)
    for (int j = 0; j < sw.omegas.count(); ++j) {
      os << fmt(sw.s_grid[i]) << "," << j;
      const Vec& w = sw.omegas.points[static_cast<std::size_t>(j)];
      for (int d = 0; d < sw.omegas.n; ++d) os << "," << fmt(w(d));
      os << "," << fmt(sw.abscissa(static_cast<int>(i), j)) << "\n";
    }
  write_file(path, os.str());
}

SpectrumSweep load_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# hyperdiss sweep", 0) != 0)
    throw std::runtime_error("not a hyperdiss sweep CSV: " + path);
  bool restricted = line.find("restricted=1") != std::string::npos;
  const std::size_t npos = line.find("n=");
  if (npos == std::string::npos) throw std::runtime_error("sweep CSV missing dimension");
  const int n = std::stoi(line.substr(npos + 2));
  std::getline(in, line);  // column header

  std::vector<double> s_grid;
  std::vector<Vec> omegas;
  std::vector<double> values;
  int nw = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    std::vector<double> nums;
    while (std::getline(ss, tok, ',')) nums.push_back(std::stod(tok));
    if (static_cast<int>(nums.size()) != n + 3)
      throw std::runtime_error("sweep CSV: bad column count");
    const double s = nums[0];
    const int j = static_cast<int>(nums[1]);
    if (s_grid.empty() || s != s_grid.back()) s_grid.push_back(s);
    if (static_cast<int>(s_grid.size()) == 1) {
      Vec w(n);
      for (int d = 0; d < n; ++d) w(d) = nums[static_cast<std::size_t>(2 + d)];
      omegas.push_back(w);
      nw = std::max(nw, j + 1);
    }
    values.push_back(nums.back());
  }
  if (nw == 0 || values.size() != s_grid.size() * static_cast<std::size_t>(nw))
    throw std::runtime_error("sweep CSV: inconsistent grid");

  SpectrumSweep sw;
  sw.restricted = restricted;
  sw.s_grid = std::move(s_grid);
  sw.omegas.n = n;
  sw.omegas.scheme = "from-file";
  sw.omegas.points = std::move(omegas);
  sw.abscissa = Mat(sw.s_grid.size(), nw);
  for (std::size_t i = 0; i < sw.s_grid.size(); ++i)
    for (int j = 0; j < nw; ++j)
      sw.abscissa(static_cast<int>(i), j) = values[i * static_cast<std::size_t>(nw) +
                                                   static_cast<std::size_t>(j)];
  return sw;
}

void save_decay_csv(const DecayFit& fit, const std::string& path) {
  std::ostringstream os;
  os << "# hyperdiss decay; k=" << fit.k << "; ell=" << fit.ell
     << "; target_slope=" << fmt(fit.target_slope) << "; fitted_slope=" << fmt(fit.fitted_slope)
     << "\n";
  os << "t,norm,local_slope\n";
  for (std::size_t i = 0; i < fit.t.size(); ++i)
    os << fmt(fit.t[i]) << "," << fmt(fit.norms[i]) << "," << fmt(fit.local_slope[i]) << "\n";
  write_file(path, os.str());
}

DecayCsv load_decay_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# hyperdiss decay", 0) != 0)
    throw std::runtime_error("not a hyperdiss decay CSV: " + path);
  DecayCsv out;
  auto grab = [&](const char* key) -> double {
    const std::size_t p = line.find(key);
    if (p == std::string::npos) return 0.0;
    return std::stod(line.substr(p + std::string(key).size()));
  };
  out.target_slope = grab("target_slope=");
  out.fitted_slope = grab("fitted_slope=");
  std::getline(in, line);  // column header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    std::vector<double> nums;
    while (std::getline(ss, tok, ',')) nums.push_back(std::stod(tok));
    if (nums.size() != 3) throw std::runtime_error("decay CSV: bad column count");
    out.t.push_back(nums[0]);
    out.norm.push_back(nums[1]);
    out.local_slope.push_back(nums[2]);
  }
  return out;
}

}  // namespace hyperdiss
