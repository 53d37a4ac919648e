// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/catalog.hpp"

#include <cmath>
#include <sstream>

namespace hyperdiss {

namespace {

// skew3(v) x = v cross x.
Mat skew3(const Eigen::Vector3d& v) {
  Mat W = Mat::Zero(3, 3);
  W(0, 1) = -v(2);
  W(0, 2) = v(1);
  W(1, 0) = v(2);
  W(1, 2) = -v(0);
  W(2, 0) = -v(1);
  W(2, 1) = v(0);
  return W;
}

}  // namespace

CatalogEntry timoshenko(double a, double gamma) {
  if (!(a > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("timoshenko: a and gamma must be positive");

  const int m = 4;
  Mat A0 = Mat::Identity(m, m);
  Mat A(m, m);
  A << 0, 1, 0, 0,
       1, 0, 0, 0,
       0, 0, 0, a,
       0, 0, a, 0;
  A = -A;
  Mat L = Mat::Zero(m, m);
  L(0, 3) = 1.0;
  L(3, 0) = -1.0;
  L(3, 3) = gamma;

  // Half the sharp bound beta < 4 gamma / (gamma^2 + 4).
  const double beta = 0.5 * 4.0 * gamma / (gamma * gamma + 4.0);
  Mat S(m, m);
  S << 0, 0, 0, 1,
       0, 0, a, 0,
       0, a, 0, 0,
       1, 0, 0, 0;
  S = -beta * S;

  Mat K0(m, m);
  K0 << 0, 1, 0, 0,
       -1, 0, 0, 0,
        0, 0, 0, -1,
        0, 0, 1, 0;

  CatalogEntry entry{
      ModelDef{"timoshenko", HyperbolicSystem(1, m, A0, {A}, L), std::nullopt, S,
               CompensatorSpec{ConstantK{K0}}, std::nullopt},
      {{"a", a}, {"gamma", gamma}},
      {}};
  entry.expected.pass = {"A", "S", "S1", "K", "R"};
  if (a == 1.0) {
    entry.expected.pass.push_back("S2");
    entry.expected.p = 1;
    entry.expected.q = 1;
    entry.expected.envelope = Envelope::rho;
  } else {
    entry.expected.fail = {"S2"};
    entry.expected.p = 1;
    entry.expected.q = 2;
    entry.expected.envelope = Envelope::eta;
  }
  return entry;
}

CatalogEntry euler_maxwell(double rho_inf, double p_prime, const Eigen::Vector3d& B_inf) {
  if (!(rho_inf > 0.0) || !(p_prime > 0.0))
    throw std::invalid_argument("euler_maxwell: rho_inf and p_prime must be positive");

  const int m = 10;
  const double a_inf = p_prime / rho_inf;
  const double b_inf = p_prime;
  const Mat I3 = Mat::Identity(3, 3);

  Mat A0 = Mat::Identity(m, m);
  A0(0, 0) = a_inf;
  A0.block(1, 1, 3, 3) = rho_inf * I3;

  std::vector<Mat> A;
  for (int j = 0; j < 3; ++j) {
    Mat Aj = Mat::Zero(m, m);
    Eigen::Vector3d ej = Eigen::Vector3d::Zero();
    ej(j) = 1.0;
    Aj.block(0, 1, 1, 3) = b_inf * ej.transpose();
    Aj.block(1, 0, 3, 1) = b_inf * ej;
    Aj.block(4, 7, 3, 3) = -skew3(ej);
    Aj.block(7, 4, 3, 3) = skew3(ej);
    A.push_back(Aj);
  }

  Mat L = Mat::Zero(m, m);
  L.block(1, 1, 3, 3) = rho_inf * (I3 - skew3(B_inf));
  L.block(1, 4, 3, 3) = rho_inf * I3;
  L.block(4, 1, 3, 3) = -rho_inf * I3;

  std::vector<Mat> Q;
  for (int j = 0; j < 3; ++j) {
    Mat Qj = Mat::Zero(2, m);
    Qj(0, 4 + j) = 1.0;
    Qj(1, 7 + j) = 1.0;
    Q.push_back(Qj);
  }
  Mat R = Mat::Zero(2, m);
  R(0, 0) = 1.0;

  // Half the sharp bound beta < 4 rho / (4 rho + (1 + |B|)^2).
  const double Bn = B_inf.norm();
  const double beta = 0.5 * 4.0 * rho_inf / (4.0 * rho_inf + (1.0 + Bn) * (1.0 + Bn));
  Mat S = Mat::Zero(m, m);
  S.block(1, 4, 3, 3) = I3;
  S.block(4, 1, 3, 3) = (1.0 / rho_inf) * I3;
  S *= beta;

  Mat S_tilde = beta * a_inf * Mat::Identity(2, 2);

  CatalogEntry entry{
      ModelDef{"euler-maxwell", HyperbolicSystem(3, m, A0, A, L),
               ConstraintBlock::make(Q, R), S,
               CompensatorSpec{BuiltinK{"euler-maxwell", {{"rho_inf", rho_inf}, {"a_inf", a_inf}}}},
               S_tilde},
      {{"rho_inf", rho_inf},
       {"p_prime", p_prime},
       {"B1", B_inf(0)},
       {"B2", B_inf(1)},
       {"B3", B_inf(2)}},
      {}};
  entry.expected.pass = {"A", "C", "S", "Sstar1", "Kstar"};
  entry.expected.fail = {"K", "Sstar2"};
  entry.expected.p = 1;
  entry.expected.q = 2;
  entry.expected.envelope = Envelope::eta;
  entry.expected.restricted = true;
  return entry;
}

CatalogEntry symmetric_toy() {
  const int m = 2;
  Mat A0 = Mat::Identity(m, m);
  Mat A(m, m);
  A << 0, -1,
      -1, 0;
  Mat L = Mat::Zero(m, m);
  L(1, 1) = 1.0;
  Mat S = Mat::Zero(m, m);

  HyperbolicSystem sys(1, m, A0, {A}, L);
  const auto tuned = tune_mu(sys, SphereSampling::standard(1));

  CatalogEntry entry{ModelDef{"damped-wave", std::move(sys), std::nullopt, S, tuned.spec,
                              std::nullopt},
                     {},
                     {}};
  entry.expected.pass = {"A", "S", "S1", "S2", "K", "R"};
  entry.expected.p = 1;
  entry.expected.q = 1;
  entry.expected.envelope = Envelope::rho;
  return entry;
}

Mat catalog_builtin_K(const BuiltinK& spec, const HyperbolicSystem& sys, const Vec& omega) {
  if (spec.name == "euler-maxwell") {
    if (sys.m() != 10 || sys.n() != 3 || omega.size() != 3)
      throw std::invalid_argument("builtin euler-maxwell K: wrong dimensions");
    const double rho_inf = spec.params.at("rho_inf");
    const double a_inf = spec.params.at("a_inf");
    const Eigen::Vector3d w(omega(0), omega(1), omega(2));
    Mat K = Mat::Zero(10, 10);
    K.block(0, 1, 1, 3) = (1.0 / rho_inf) * w.transpose();
    K.block(1, 0, 3, 1) = -(1.0 / a_inf) * w;
    K.block(4, 7, 3, 3) = skew3(w);
    K.block(7, 4, 3, 3) = skew3(w);
    return K;
  }
  throw std::invalid_argument("unknown builtin compensator: " + spec.name);
}

namespace {

std::map<std::string, std::string> parse_query(const std::string& q) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < q.size()) {
    std::size_t amp = q.find('&', pos);
    if (amp == std::string::npos) amp = q.size();
    const std::string item = q.substr(pos, amp - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad model parameter: " + item);
    kv[item.substr(0, eq)] = item.substr(eq + 1);
    pos = amp + 1;
  }
  return kv;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad numeric value: " + s);
  return v;
}

}  // namespace

CatalogEntry catalog_from_uri(const std::string& uri) {
  const std::string prefix = "builtin:";
  if (uri.rfind(prefix, 0) != 0)
    throw std::invalid_argument("catalog_from_uri: expected builtin:<name>[?params]");
  std::string rest = uri.substr(prefix.size());
  std::string name = rest, query;
  if (const std::size_t qm = rest.find('?'); qm != std::string::npos) {
    name = rest.substr(0, qm);
    query = rest.substr(qm + 1);
  }
  const auto kv = parse_query(query);
  auto get = [&](const char* key, double dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : to_double(it->second);
  };

  if (name == "timoshenko") return timoshenko(get("a", 2.0), get("gamma", 1.0));
  if (name == "euler-maxwell") {
    Eigen::Vector3d B(0.0, 0.0, 1.0);
    if (auto it = kv.find("B"); it != kv.end()) {
      std::istringstream ss(it->second);
      std::string tok;
      for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, tok, ',')) throw std::invalid_argument("B needs 3 components");
        B(i) = to_double(tok);
      }
    }
    return euler_maxwell(get("rho", 1.0), get("pprime", 1.0), B);
  }
  if (name == "damped-wave") return symmetric_toy();
  throw std::invalid_argument("unknown builtin model: " + name);
}

}  // namespace hyperdiss
