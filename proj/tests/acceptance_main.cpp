// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdiss/catalog.hpp"
#include "hyperdiss/conditions.hpp"
#include "hyperdiss/decay.hpp"
#include "hyperdiss/spectrum.hpp"
#include "oracles.hpp"
#include "pinning.hpp"

using namespace hyperdiss;

namespace {

struct Criterion {
  std::ostringstream log;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << (log.str().empty() ? "" : "; ") << what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vec e1d(double v) {
  Vec w(1);
  w << v;
  return w;
}

void check_margins(Criterion& c, const ConditionReport& rep,
                   const std::vector<std::string>& definite, const char* tag) {
  for (const auto& name : definite) {
    c.require(rep.has(name) && rep.at(name).passed,
              std::string(tag) + " (" + name + ") must pass");
    if (rep.has(name))
      c.require(rep.at(name).margin > 1e-8,
                std::string(tag) + " (" + name + ") margin " +
                    std::to_string(rep.at(name).margin) + " <= 1e-8");
  }
}

// --- criterion 1: Timoshenko condition suite ------------------------------
Criterion criterion1() {
  Criterion c;
  const auto t0 = Clock::now();
  const auto sph = SphereSampling::standard(1);

  const auto a2 = timoshenko(2.0, 1.0);
  ConditionReport rep;
  rep.set("A", validate_condition_A(a2.model.sys));
  rep.set("S", check_S(a2.model.sys, *a2.model.S));
  rep.set("S1", check_S1(a2.model.sys, *a2.model.S, sph));
  rep.set("S2", check_S2(a2.model.sys, *a2.model.S, sph));
  rep.set("K", check_K(a2.model.sys, *a2.model.K, sph));
  rep.set("R", check_R(a2.model.sys, sph));
  check_margins(c, rep, {"A", "S", "K", "R"}, "a=2");
  c.require(rep.at("S1").passed, "a=2 (S)_1 must pass (semidefinite)");
  c.require(!rep.at("S2").passed, "a=2 (S)_2 must fail");

  const auto a1 = timoshenko(1.0, 1.0);
  ConditionReport rep1;
  rep1.set("A", validate_condition_A(a1.model.sys));
  rep1.set("S", check_S(a1.model.sys, *a1.model.S));
  rep1.set("S1", check_S1(a1.model.sys, *a1.model.S, sph));
  rep1.set("S2", check_S2(a1.model.sys, *a1.model.S, sph));
  rep1.set("K", check_K(a1.model.sys, *a1.model.K, sph));
  rep1.set("R", check_R(a1.model.sys, sph));
  check_margins(c, rep1, {"A", "S", "K", "R"}, "a=1");
  c.require(rep1.at("S1").passed, "a=1 (S)_1 must pass");
  c.require(rep1.at("S2").passed, "a=1 (S)_2 must pass");

  const double dt = seconds_since(t0);
  c.require(dt < 1.0, "runtime " + std::to_string(dt) + "s exceeds 1s");
  return c;
}

// --- criterion 2: Euler-Maxwell condition suite ---------------------------
Criterion criterion2() {
  Criterion c;
  const auto t0 = Clock::now();
  const auto em = euler_maxwell(1.0, 1.0, Eigen::Vector3d(0, 0, 1));
  const auto sph = SphereSampling::standard(3, 512);

  ConditionReport rep;
  rep.set("A", validate_condition_A(em.model.sys));
  rep.set("C", check_C(em.model.sys, *em.model.cb, sph));
  rep.set("S", check_S(em.model.sys, *em.model.S));
  rep.set("Sstar1",
          check_Sstar(em.model.sys, *em.model.cb, *em.model.S, *em.model.S_tilde, sph, 1));
  rep.set("Kstar", check_Kstar(em.model.sys, *em.model.cb, *em.model.K, sph));
  check_margins(c, rep, {"A", "S", "Kstar"}, "em");
  c.require(rep.at("Sstar1").passed, "em (S*)_1 must pass");
  const double resid = rep.at("C").tolerance - rep.at("C").margin;
  c.require(rep.at("C").passed && resid < 1e-10,
            "em (C) residual " + std::to_string(resid) + " must be < 1e-10");

  const double dt = seconds_since(t0);
  c.require(dt < 10.0, "runtime " + std::to_string(dt) + "s exceeds 10s");
  return c;
}

// --- criterion 3: dissipativity classifications ---------------------------
Criterion criterion3() {
  Criterion c;
  const auto t0 = Clock::now();
  const auto grid = log_grid(1e-3, 1e3, 97);

  struct Case {
    std::string name;
    CatalogEntry cat;
    int p, q;
  };
  std::vector<Case> cases;
  cases.push_back({"timoshenko a=2", timoshenko(2.0, 1.0), 1, 2});
  cases.push_back({"timoshenko a=1", timoshenko(1.0, 1.0), 1, 1});
  cases.push_back({"damped-wave", symmetric_toy(), 1, 1});
  cases.push_back({"euler-maxwell", euler_maxwell(1.0, 1.0, Eigen::Vector3d(0, 0, 1)), 1, 2});

  for (const auto& cs : cases) {
    const auto sph = SphereSampling::standard(cs.cat.model.sys.n(),
                                              cs.cat.model.sys.n() == 3 ? 512 : 0);
    const ConstraintBlock* cb = cs.cat.model.cb ? &*cs.cat.model.cb : nullptr;
    const auto ty = classify(sweep(cs.cat.model.sys, grid, sph, cb));
    c.require(ty.classified, cs.name + " unclassified: " + ty.note);
    if (!ty.classified) continue;
    c.require(ty.p == cs.p && ty.q == cs.q,
              cs.name + " got (" + std::to_string(ty.p) + "," + std::to_string(ty.q) +
                  "), expected (" + std::to_string(cs.p) + "," + std::to_string(cs.q) + ")");
    c.require(ty.low_resid < 0.15 && ty.high_resid < 0.15, cs.name + " slope residual >= 0.15");
    c.require(std::abs(ty.low_slope - 2.0) < 0.2, cs.name + " low slope not within 0.2 of 2");
    const double target_high = cs.q > cs.p ? -2.0 : 0.0;
    c.require(std::abs(ty.high_slope - target_high) < 0.2,
              cs.name + " high slope not within 0.2 of " + std::to_string(target_high));
    c.require(ty.c > 0.0, cs.name + " certified c must be positive");
  }

  const double dt = seconds_since(t0);
  c.require(dt < 60.0, "runtime " + std::to_string(dt) + "s exceeds 60s");
  return c;
}

// --- criterion 4: constructive Kalman compensator -------------------------
Criterion criterion4() {
  Criterion c;
  const auto sph = SphereSampling::standard(1);
  struct Case {
    std::string name;
    HyperbolicSystem sys;
  };
  std::vector<Case> cases;
  cases.push_back({"timoshenko a=2", timoshenko(2.0, 1.0).model.sys});
  cases.push_back({"timoshenko a=1", timoshenko(1.0, 1.0).model.sys});
  cases.push_back({"damped-wave", symmetric_toy().model.sys});

  for (const auto& cs : cases) {
    const auto tuned = tune_mu(cs.sys, sph);
    const auto chk = check_K(cs.sys, tuned.spec, sph);
    c.require(chk.passed, cs.name + " tuned spec must re-pass check_K");
    c.require(chk.margin >= 1e-6,
              cs.name + " re-run margin " + std::to_string(chk.margin) + " < 1e-6");
    for (double w : {1.0, -1.0}) {
      const Mat Kp = tuned.spec.evaluate(cs.sys, e1d(w));
      const Mat Km = tuned.spec.evaluate(cs.sys, e1d(-w));
      c.require((Kp + Km).norm() < 1e-10 * (1.0 + Kp.norm()), cs.name + " oddness residual");
      const Mat KA0 = Kp * cs.sys.A0();
      c.require((KA0.transpose() + KA0).norm() < 1e-10 * (1.0 + KA0.norm()),
                cs.name + " A0-skewness residual");
    }
  }
  return c;
}

// --- criterion 5: Lyapunov certification and pointwise cross-check --------
Criterion criterion5() {
  Criterion c;
  const auto grid = log_grid(1e-3, 1e3, 48);
  const auto sph1 = SphereSampling::standard(1);
  const auto t_grid = log_grid(1.0, 2e5, 20);

  struct Case {
    std::string name;
    CatalogEntry cat;
    Envelope env;
    SphereSampling sph;
  };
  std::vector<Case> cases;
  cases.push_back({"timoshenko a=2 (eta)", timoshenko(2.0, 1.0), Envelope::eta, sph1});
  cases.push_back({"euler-maxwell (eta, restricted)",
                   euler_maxwell(1.0, 1.0, Eigen::Vector3d(0, 0, 1)), Envelope::eta,
                   SphereSampling::standard(3, 32)});
  cases.push_back({"timoshenko a=1 (rho)", timoshenko(1.0, 1.0), Envelope::rho, sph1});
  cases.push_back({"damped-wave (rho)", symmetric_toy(), Envelope::rho, sph1});

  for (const auto& cs : cases) {
    const ConstraintBlock* cb = cs.cat.model.cb ? &*cs.cat.model.cb : nullptr;
    const auto tuned = tune_lyapunov(cs.cat.model.sys, *cs.cat.model.S, *cs.cat.model.K, cs.env,
                                     grid, cs.sph, cb);
    c.require(tuned.ok && tuned.c > 0.0, cs.name + " certification failed: " + tuned.details);
    if (!tuned.ok) continue;
    const auto cert = certify_decay(cs.cat.model.sys, *cs.cat.model.S, *cs.cat.model.K,
                                    tuned.params, tuned.c, grid, cs.sph, cb);
    c.require(cert.certified, cs.name + " re-check at the certified c failed");

    // Pointwise cross-check with the same envelope.
    const SphereSampling psph = cs.cat.model.sys.n() == 3 ? SphereSampling::standard(3, 16)
                                                          : sph1;
    const auto fit = pointwise_check(cs.cat.model.sys, grid, psph, cs.env, t_grid, cb);
    c.require(fit.ok && fit.c >= 1e-4 && fit.C <= 100.0,
              cs.name + " pointwise fit (C <= 100, c >= 1e-4) failed");
  }

  // Regularity loss is real: the rho fit must fail for a = 2 at s >= 100.
  const auto a2 = timoshenko(2.0, 1.0);
  const auto rho_fit = pointwise_check(a2.model.sys, log_grid(1e2, 1e3, 6), sph1, Envelope::rho,
                                       t_grid);
  c.require(!rho_fit.ok, "rho-envelope fit unexpectedly succeeds for a=2 at s >= 1e2");
  c.require(!rho_fit.violations.empty(), "rho-envelope failure must list violations");
  return c;
}

// --- criterion 6: L2 decay-rate reproduction ------------------------------
Criterion criterion6() {
  Criterion c;
  const auto t0 = Clock::now();
  std::vector<double> t_grid = {0.0};
  for (double t : log_grid(1.0, 1e4, 40)) t_grid.push_back(t);
  const auto window = std::make_pair(1e2, 1e4);
  const auto sys2 = timoshenko(2.0, 1.0).model.sys;
  const auto sys1 = timoshenko(1.0, 1.0).model.sys;

  RadialProfile gauss;
  gauss.kind = RadialProfile::Kind::gaussian;
  gauss.p1 = 1.0;

  const auto k0 = l2_decay_fit(sys2, gauss, 0, 0, t_grid, {}, nullptr, nullptr, window);
  c.require(std::abs(k0.fitted_slope + 0.25) <= 0.1,
            "gaussian k=0 slope " + std::to_string(k0.fitted_slope) + " not in -0.25 +- 0.1");

  // k = 1 on the a = 1 beam: the a = 2 variant parks a mid-frequency
  // regularity-loss hump inside the fit window before settling at -0.75.
  const auto k1 = l2_decay_fit(sys1, gauss, 1, 0, t_grid, {}, nullptr, nullptr, window);
  c.require(std::abs(k1.fitted_slope + 0.75) <= 0.1,
            "gaussian k=1 slope " + std::to_string(k1.fitted_slope) + " not in -0.75 +- 0.1");

  RadialProfile pl;
  pl.kind = RadialProfile::Kind::powerlaw;
  pl.p1 = RadialProfile::powerlaw_sigma(0, 2, 1);  // exactly H^{k+ell}
  const auto reg = l2_decay_fit(sys2, pl, 0, 2, t_grid, {}, nullptr, nullptr, window);
  c.require(std::abs(reg.fitted_slope + 1.0) <= 0.15,
            "powerlaw k=0, ell=2 slope " + std::to_string(reg.fitted_slope) +
                " not in -1.0 +- 0.15");

  const double dt = seconds_since(t0);
  c.require(dt < 300.0, "runtime " + std::to_string(dt) + "s exceeds 5min");
  return c;
}

// --- criterion 7: randomized property suites ------------------------------
Criterion criterion7() {
  Criterion c;

  {  // Lemma 4.4: rank oracle vs positivity oracle on 200 stacks.
    oracles::Rng rng(74404);
    int disagreements = 0;
    for (int it = 0; it < 200; ++it) {
      const int m = 2 + it % 5;
      const int k = 1 + it % 3;
      std::vector<Mat> Ms;
      for (int j = 0; j < k; ++j) Ms.push_back(rng.matrix(m, m));
      if (it % 2 == 1) {
        const Vec v = rng.unit(m);
        const Mat P = Mat::Identity(m, m) - v * v.transpose();
        for (Mat& M : Ms) M = M * P;
      }
      Mat stacked(k * m, m);
      for (int j = 0; j < k; ++j) stacked.middleRows(j * m, m) = Ms[std::size_t(j)];
      Eigen::JacobiSVD<Mat> svd(stacked);
      const auto& sv = svd.singularValues();
      // Thresholds bracket the eps*lambda_max floor of the squared route.
      const bool full_rank = sv(sv.size() - 1) > 1e-7 * std::max(1.0, sv(0));
      Mat gram = Mat::Zero(m, m);
      for (const Mat& M : Ms) gram += M.transpose() * M;
      Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
      const bool positive = es.eigenvalues()(0) > 1e-14 * std::max(1.0, es.eigenvalues()(m - 1));
      if (full_rank != positive) ++disagreements;
    }
    c.require(disagreements == 0,
              "Lemma 4.4 oracles disagree " + std::to_string(disagreements) + " times");
  }

  {  // Remark 1 equivalence on 100 decidable symmetric-L instances.
    oracles::Rng rng(74101);
    const auto sph = SphereSampling::standard(1);
    int disagreements = 0, decided = 0, draws = 0;
    while (decided < 100 && draws < 1000) {
      const int it = draws++;
      const int m = 3 + it % 3;
      const Mat L = rng.psd_with_kernel(m, 1 + it % 2);
      Mat A = rng.matrix(m, m);
      A = Mat(0.5 * (A + A.transpose()));
      Mat K0 = rng.matrix(m, m);
      K0 = Mat(0.5 * (K0 - K0.transpose()));
      HyperbolicSystem sys(1, m, Mat::Identity(m, m), {A}, L);
      const CompensatorSpec K{ConstantK{K0}};
      const Mat KA = K0 * A;
      const CMat H = (0.5 * (KA + KA.transpose())).cast<Cplx>();
      const double margin = min_eig_on_subspace(H, kernel_basis(L));
      if (std::abs(margin) < 1e-6 * (1.0 + op_norm(H))) continue;  // sign too close to call
      ++decided;
      if (check_K(sys, K, sph).passed != find_alpha(sys, nullptr, K, sph).ok) ++disagreements;
    }
    c.require(decided == 100, "could not draw 100 decidable Remark-1 instances");
    c.require(disagreements == 0,
              "Remark 1 equivalence broke " + std::to_string(disagreements) + " times");
  }

  {  // Energy identity (3.1) by central differences on 100 trajectories.
    oracles::Rng rng(73001);
    const auto beam = timoshenko(2.0, 1.0).model.sys;
    const auto em = euler_maxwell(1.0, 1.0, Eigen::Vector3d(0, 0, 1)).model.sys;
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
      const bool use_em = it % 2 == 1;
      const HyperbolicSystem& sys = use_em ? em : beam;
      const Frequency f = use_em ? Frequency::polar(std::pow(10.0, rng.uniform(-1, 1)),
                                                    rng.unit(3))
                                 : Frequency::polar(std::pow(10.0, rng.uniform(-1, 1)),
                                                    e1d(it % 4 < 2 ? 1.0 : -1.0));
      const CVec u0 = rng.cvector(sys.m());
      const double t = rng.uniform(0.2, 2.0), h = 1e-5;
      const CVec um = propagate_mode(sys, f, u0, t - h);
      const CVec uc = propagate_mode(sys, f, u0, t);
      const CVec up = propagate_mode(sys, f, u0, t + h);
      const auto energy = [&](const CVec& u) {
        return (u.adjoint() * sys.A0().cast<Cplx>() * u)(0).real();
      };
      const double dE = (energy(up) - energy(um)) / (2.0 * h);
      const double diss = 2.0 * (uc.adjoint() * sys.L1().cast<Cplx>() * uc)(0).real();
      worst = std::max(worst, std::abs(dE + diss) / (1.0 + std::abs(diss)));
    }
    c.require(worst < 1e-6, "energy-identity residual " + std::to_string(worst) + " >= 1e-6");
  }

  {  // Semigroup property on 100 random modes.
    oracles::Rng rng(73002);
    const auto em = euler_maxwell(1.0, 1.0, Eigen::Vector3d(0, 0, 1)).model.sys;
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
      const Frequency f = Frequency::polar(std::pow(10.0, rng.uniform(-1, 1)), rng.unit(3));
      const CVec u0 = rng.cvector(10);
      const double t1 = rng.uniform(0.1, 3.0), t2 = rng.uniform(0.1, 3.0);
      const CVec one = propagate_mode(em, f, u0, t1 + t2);
      const CVec two = propagate_mode(em, f, propagate_mode(em, f, u0, t1), t2);
      worst = std::max(worst, (one - two).norm() / (1.0 + one.norm()));
    }
    c.require(worst < 1e-10, "semigroup residual " + std::to_string(worst) + " >= 1e-10");
  }

  {  // Constraint conservation for 50 admissible Euler-Maxwell modes.
    oracles::Rng rng(73003);
    const auto em = euler_maxwell(1.0, 1.0, Eigen::Vector3d(0, 0, 1));
    const std::vector<double> t_grid = {0.0, 1.0, 5.0, 20.0, 60.0, 100.0};
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
      const Frequency f = Frequency::polar(std::pow(10.0, rng.uniform(-1.5, 1.5)), rng.unit(3));
      const auto N = constraint_subspace(*em.model.cb, f);
      CVec u0 = N.basis * (N.basis.adjoint() * rng.cvector(10));
      if (u0.norm() < 1e-6) continue;
      u0 /= u0.norm();
      worst = std::max(worst, constraint_drift(em.model.sys, *em.model.cb, f, u0, t_grid));
    }
    c.require(worst < 1e-8, "constraint drift " + std::to_string(worst) + " >= 1e-8");
  }

  return c;
}

// --- criterion 8: transcription pinning ------------------------------------
Criterion criterion8() {
  Criterion c;
  for (const auto& f : pinning::transcription_failures()) c.require(false, f);
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {"1 Timoshenko condition suite (Thm 6.1 list, margins, < 1s)", criterion1},
      {"2 Euler-Maxwell condition suite (Thm 7.1 list, 512 dirs, < 10s)", criterion2},
      {"3 dissipativity types (1,2)/(1,1)/(1,1)/(1,2) with clean slopes", criterion3},
      {"4 Kalman compensator tuning re-certifies with margin >= 1e-6", criterion4},
      {"5 Lyapunov certificates + pointwise fits, rho fails for a=2 high-s", criterion5},
      {"6 L2 decay slopes -0.25/-0.75/-1.0 within tolerance", criterion6},
      {"7 property suites (rank/positivity, Remark 1, energy, semigroup, drift)", criterion7},
      {"8 transcription pinning of the catalog displays", criterion8},
  };

  int failures = 0;
  for (const auto& e : entries) {
    const auto t0 = Clock::now();
    Criterion c = e.run();
    const double dt = seconds_since(t0);
    if (c.ok) {
      std::printf("PASS  criterion %s  [%.1fs]\n", e.label, dt);
    } else {
      ++failures;
      std::printf("FAIL  criterion %s  [%.1fs]\n      %s\n", e.label, dt, c.log.str().c_str());
    }
    std::fflush(stdout);
  }
  if (failures == 0) std::printf("all %zu acceptance criteria passed\n", entries.size());
  return failures;
}
