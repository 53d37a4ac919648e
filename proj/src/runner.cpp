// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hyperdiss/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "hyperdiss/conditions.hpp"
#include "hyperdiss/decay.hpp"
#include "hyperdiss/model_io.hpp"
#include "hyperdiss/parallel.hpp"
#include "hyperdiss/svg.hpp"

namespace hyperdiss {

using json = nlohmann::ordered_json;

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["model"] = cfg.model;
  j["out"] = cfg.out;
  j["in"] = cfg.in;
  j["omega_samples"] = cfg.omega_samples;
  j["tol"] = cfg.tol;
  j["s_min"] = cfg.s_min;
  j["s_max"] = cfg.s_max;
  j["s_points"] = cfg.s_points;
  j["restricted"] = cfg.restricted;
  j["envelope"] = cfg.envelope;
  j["profile"] = cfg.profile;
  j["k"] = cfg.k;
  j["ell"] = cfg.ell;
  j["t_max"] = cfg.t_max;
  j["t_points"] = cfg.t_points;
  j["mu"] = cfg.mu;
  j["target_margin"] = cfg.target_margin;
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  return j.dump();
}

namespace {

LoadedModel load_checked(const RunConfig& cfg) {
  if (cfg.model.empty()) throw ConfigError("no --model given");
  try {
    return load_model_source(cfg.model);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

SphereSampling sampling_for(const ModelDef& model, const RunConfig& cfg) {
  return SphereSampling::standard(model.sys.n(), cfg.omega_samples);
}

// The parameter searches evaluate the grid hundreds of times; thin the
// default n = 3 sampling for them unless the user pinned a count.
SphereSampling work_sampling(const LoadedModel& lm, const RunConfig& cfg) {
  int count = cfg.omega_samples;
  if (count == 0 && lm.model.sys.n() == 3) count = 32;
  return SphereSampling::standard(lm.model.sys.n(), count);
}

ConditionReport full_condition_report(const ModelDef& model, const SphereSampling& sph,
                                      CheckTols tols) {
  ConditionReport rep;
  rep.set("A", validate_condition_A(model.sys, tols.kernel_rel));
  if (!rep.at("A").passed) return rep;

  const Mat S = model.S.value_or(Mat::Zero(model.sys.m(), model.sys.m()));
  rep.set("S", check_S(model.sys, S, tols));
  rep.set("S1", check_S1(model.sys, S, sph, tols));
  rep.set("S2", check_S2(model.sys, S, sph, tols));
  rep.set("R", check_R(model.sys, sph, tols));
  if (model.K) {
    rep.set("K", check_K(model.sys, *model.K, sph, tols));
    if (model.cb) rep.set("Kstar", check_Kstar(model.sys, *model.cb, *model.K, sph, tols));
  }
  if (model.cb) {
    rep.set("C", check_C(model.sys, *model.cb, sph, tols));
    if (model.S_tilde) {
      rep.set("Sstar1", check_Sstar(model.sys, *model.cb, S, *model.S_tilde, sph, 1, tols));
      rep.set("Sstar2", check_Sstar(model.sys, *model.cb, S, *model.S_tilde, sph, 2, tols));
    }
  }
  if (model.K) {
    const AlphaResult ar =
        find_alpha(model.sys, &S, *model.K, sph, model.cb ? &*model.cb : nullptr, tols);
    if (ar.ok) rep.alpha = ar.alpha;
  }
  return rep;
}

// A file model with no stated expectations passes when some theorem's
// hypothesis set is satisfied; (R) may stand in for (K).
bool any_theorem_satisfied(const ModelDef& model, const ConditionReport& rep) {
  auto ok = [&](const char* name) { return rep.passed(name); };
  const bool k_like = ok("K") || ok("R");
  const bool kstar_like = ok("Kstar") || ok("R");
  if (ok("A") && ok("S") && (ok("S1") || ok("S2")) && k_like) return true;
  if (model.cb && ok("A") && ok("C") && ok("S") && (ok("Sstar1") || ok("Sstar2")) && kstar_like)
    return true;
  return false;
}

int exit_for_expectations(const ModelDef& model, const std::optional<Expected>& expected,
                          const ConditionReport& rep) {
  if (expected) {
    for (const std::string& name : expected->pass)
      if (!rep.passed(name)) {
        std::cerr << "expected condition (" << name << ") failed\n";
        return 1;
      }
    return 0;
  }
  return any_theorem_satisfied(model, rep) ? 0 : 1;
}

void print_report(const ConditionReport& rep) {
  for (const auto& [name, e] : rep.entries)
    std::printf("  (%s)%*s %s  margin=% .6e\n", name.c_str(),
                static_cast<int>(std::max<std::size_t>(1, 7 - name.size())), "",
                e.passed ? "pass" : "FAIL", e.margin);
  if (rep.alpha) std::printf("  alpha = %.6e\n", *rep.alpha);
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
  std::vector<double> g = log_grid(cfg.s_min, cfg.s_max, cfg.s_points);
  g.insert(g.begin(), 0.0);  // s = 0 is carried as a separate sample
  return g;
}

Envelope envelope_for(const RunConfig& cfg, const std::optional<Expected>& expected) {
  if (cfg.envelope == "eta") return Envelope::eta;
  if (cfg.envelope == "rho") return Envelope::rho;
  if (!cfg.envelope.empty()) throw ConfigError("envelope must be eta or rho");
  return expected ? expected->envelope : Envelope::eta;
}

int cmd_check(const RunConfig& cfg) {
  const LoadedModel lm = load_checked(cfg);
  const SphereSampling sph = sampling_for(lm.model, cfg);
  CheckTols tols;
  tols.identity_abs = cfg.tol;
  const ConditionReport rep = full_condition_report(lm.model, sph, tols);
  if (!cfg.out.empty()) save_report_json(rep, config_to_json(cfg), cfg.out);
  std::printf("model %s:\n", lm.model.name.c_str());
  print_report(rep);
  return exit_for_expectations(lm.model, lm.expected, rep);
}

int cmd_build_k(const RunConfig& cfg) {
  const LoadedModel lm = load_checked(cfg);
  const SphereSampling sph = work_sampling(lm, cfg);
  CompensatorSpec spec{KalmanK{cfg.mu, kappa_sequence(lm.model.sys.m())}};
  double margin = 0.0;
  if (cfg.mu > 0.0) {
    const ConditionEntry chk =
        lm.model.cb ? check_Kstar(lm.model.sys, *lm.model.cb, spec, sph)
                    : check_K(lm.model.sys, spec, sph);
    margin = chk.margin;
    if (!chk.passed) {
      std::cerr << "build-k: fixed mu = " << cfg.mu << " does not certify (margin " << margin
                << ")\n";
      if (!cfg.out.empty()) save_kspec_json(spec, cfg.out);
      return 1;
    }
  } else {
    const MuTuneResult tuned = tune_mu(lm.model.sys, sph, cfg.target_margin,
                                       lm.model.cb ? &*lm.model.cb : nullptr);
    spec = tuned.spec;
    margin = tuned.margin;
    std::printf("tuned mu = %g (relative margin %.3e, certified under (%s))\n", tuned.mu,
                tuned.margin, tuned.certified_under.c_str());
  }
  if (!cfg.out.empty()) save_kspec_json(spec, cfg.out);
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const LoadedModel lm = load_checked(cfg);
  const SphereSampling sph = sampling_for(lm.model, cfg);
  const bool restrict_it =
      cfg.restricted == 1 || (cfg.restricted == -1 && lm.model.cb.has_value());
  if (restrict_it && !lm.model.cb) throw ConfigError("--restricted needs a constraint block");
  const SpectrumSweep sw = sweep(lm.model.sys, sweep_grid(cfg), sph,
                                 restrict_it ? &*lm.model.cb : nullptr);
  if (!cfg.out.empty()) save_sweep_csv(sw, cfg.out);
  std::printf("sweep: %zu s-samples x %d directions (%s)\n", sw.s_grid.size(), sph.count(),
              sw.restricted ? "restricted" : "unrestricted");
  return 0;
}

int cmd_classify(const RunConfig& cfg) {
  std::optional<Expected> expected;
  DissipativityType ty;
  DissipativityType unrestricted_ty;
  bool have_unrestricted = false;
  if (!cfg.in.empty()) {
    ty = classify(load_sweep_csv(cfg.in));
  } else {
    const LoadedModel lm = load_checked(cfg);
    expected = lm.expected;
    const SphereSampling sph = sampling_for(lm.model, cfg);
    const auto grid = sweep_grid(cfg);
    if (lm.model.cb) {
      ty = classify(sweep(lm.model.sys, grid, sph, &*lm.model.cb));
      unrestricted_ty = classify(sweep(lm.model.sys, grid, sph, nullptr));
      have_unrestricted = true;
    } else {
      ty = classify(sweep(lm.model.sys, grid, sph, nullptr));
    }
  }

  json j;
  j["version"] = kVersion;
  j["config"] = json::parse(config_to_json(cfg));
  auto type_json = [](const DissipativityType& t) {
    json tj;
    tj["classified"] = t.classified;
    tj["p"] = t.p;
    tj["q"] = t.q;
    tj["c"] = t.c;
    tj["low_slope"] = t.low_slope;
    tj["high_slope"] = t.high_slope;
    tj["low_resid"] = t.low_resid;
    tj["high_resid"] = t.high_resid;
    tj["note"] = t.note;
    return tj;
  };
  j["type"] = type_json(ty);
  if (have_unrestricted) j["unrestricted_type"] = type_json(unrestricted_ty);
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    out << j.dump(2) << "\n";
  }
  if (ty.classified)
    std::printf("type (p, q) = (%d, %d), c = %.6e\n", ty.p, ty.q, ty.c);
  else
    std::printf("unclassified: %s\n", ty.note.c_str());

  if (!ty.classified) return 1;
  if (expected && (ty.p != expected->p || ty.q != expected->q)) {
    std::cerr << "classification (" << ty.p << ", " << ty.q << ") does not match the expected ("
              << expected->p << ", " << expected->q << ")\n";
    return 1;
  }
  return 0;
}

int cmd_certify(const RunConfig& cfg) {
  const LoadedModel lm = load_checked(cfg);
  const SphereSampling sph = work_sampling(lm, cfg);
  const Envelope env = envelope_for(cfg, lm.expected);
  const Mat S = lm.model.S.value_or(Mat::Zero(lm.model.sys.m(), lm.model.sys.m()));
  CompensatorSpec K = lm.model.K ? *lm.model.K
                                 : tune_mu(lm.model.sys, sph, cfg.target_margin,
                                           lm.model.cb ? &*lm.model.cb : nullptr)
                                       .spec;
  const ConstraintBlock* cb = lm.model.cb ? &*lm.model.cb : nullptr;
  const auto grid = log_grid(cfg.s_min, cfg.s_max, std::max(48, cfg.s_points));
  const LyapunovTuneResult tuned = tune_lyapunov(lm.model.sys, S, K, env, grid, sph, cb);

  json j;
  j["version"] = kVersion;
  j["config"] = json::parse(config_to_json(cfg));
  j["envelope"] = envelope_name(env);
  j["certified"] = tuned.ok;
  j["details"] = tuned.details;
  if (tuned.ok) {
    const CertifyResult cert =
        certify_decay(lm.model.sys, S, K, tuned.params, tuned.c, grid, sph, cb);
    j["alpha"] = tuned.params.alpha;
    j["alpha1"] = tuned.params.alpha1;
    j["alpha2"] = tuned.params.alpha2;
    j["sign2"] = tuned.params.sign2;
    j["c"] = tuned.c;
    j["c0"] = cert.c0;
    j["C0"] = cert.C0;
    j["pointwise_prefactor"] = std::sqrt(cert.C0 / cert.c0);
    j["recheck_margin"] = cert.min_margin;
    j["recheck_certified"] = cert.certified;
  }
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    out << j.dump(2) << "\n";
  }
  if (tuned.ok)
    std::printf("certified c = %.6e with envelope %s\n", tuned.c, envelope_name(env));
  else
    std::printf("certification failed: %s\n", tuned.details.c_str());
  return tuned.ok ? 0 : 1;
}

int cmd_decay(const RunConfig& cfg) {
  const LoadedModel lm = load_checked(cfg);
  const RadialProfile profile = RadialProfile::parse(
      cfg.profile == "powerlaw" ? "powerlaw:" + std::to_string(RadialProfile::powerlaw_sigma(
                                      cfg.k, cfg.ell, lm.model.sys.n()))
                                : cfg.profile);
  std::vector<double> t_grid = log_grid(std::max(1e-6, cfg.t_max * 1e-4), cfg.t_max,
                                        std::max(2, cfg.t_points));
  t_grid.insert(t_grid.begin(), 0.0);
  const SphereSampling sph = sampling_for(lm.model, cfg);
  const DecayFit fit =
      l2_decay_fit(lm.model.sys, profile, cfg.k, cfg.ell, t_grid, QuadratureSpec{}, &sph,
                   lm.model.cb ? &*lm.model.cb : nullptr);
  if (!cfg.out.empty()) save_decay_csv(fit, cfg.out);
  std::printf("fitted slope %.4f (target %.4f)\n", fit.fitted_slope, fit.target_slope);
  return 0;
}

int cmd_plot(const RunConfig& cfg) {
  if (cfg.in.empty()) throw ConfigError("plot needs --in decay.csv");
  const DecayCsv csv = load_decay_csv(cfg.in);
  PlotSeries series;
  series.label = "norm(t)";
  for (std::size_t i = 0; i < csv.t.size(); ++i) {
    if (csv.norm[i] <= 0.0) continue;
    series.x.push_back(1.0 + csv.t[i]);
    series.y.push_back(csv.norm[i]);
  }
  char lab[64];
  std::snprintf(lab, sizeof(lab), "slope %.3f", csv.target_slope);
  const std::vector<GuideLine> guides = {{csv.target_slope, lab}};
  if (!cfg.out.empty()) save_svg({series}, guides, "L2 decay (log-log)", cfg.out);
  return 0;
}

int cmd_export(const RunConfig& cfg) {
  const LoadedModel lm = load_checked(cfg);
  if (cfg.out.empty()) throw ConfigError("export needs --out");
  save_model_json(lm.model, cfg.out);
  return 0;
}

}  // namespace

int run_report(const RunConfig& cfg) {
  if (cfg.threads > 0) set_threads(cfg.threads);
  try {
    if (cfg.command == "check") return cmd_check(cfg);
    if (cfg.command == "build-k") return cmd_build_k(cfg);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "certify") return cmd_certify(cfg);
    if (cfg.command == "decay") return cmd_decay(cfg);
    if (cfg.command == "plot") return cmd_plot(cfg);
    if (cfg.command == "export") return cmd_export(cfg);
    throw ConfigError("unknown command: " + cfg.command);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hyperdiss
