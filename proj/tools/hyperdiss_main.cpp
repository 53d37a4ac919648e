// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include "hyperdiss/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hyperdiss: dissipativity structure verifier for symmetric hyperbolic systems "
               "with relaxation"};
  app.require_subcommand(1);

  hyperdiss::RunConfig cfg;
  app.add_option("--threads", cfg.threads, "worker threads (HYPERDISS_THREADS as fallback)");
  app.add_option("--seed", cfg.seed, "seed for randomized property modes");

  auto add_model = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--model", cfg.model,
                                "model file or builtin:<name>?<params> "
                                "(timoshenko, euler-maxwell, damped-wave)");
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "output path"); };

  auto* check = app.add_subcommand("check", "verify the structural conditions");
  add_model(check);
  add_out(check);
  check->add_option("--omega-samples", cfg.omega_samples, "sphere sample count");
  check->add_option("--tol", cfg.tol, "identity-residual tolerance");

  auto* buildk = app.add_subcommand("build-k", "construct a compensating matrix");
  add_model(buildk);
  add_out(buildk);
  buildk->add_option("--mu", cfg.mu, "fixed mu (otherwise halving search)");
  buildk->add_option("--target-margin", cfg.target_margin, "relative margin target");
  buildk->add_option("--omega-samples", cfg.omega_samples, "sphere sample count");

  auto* spectrum = app.add_subcommand("spectrum", "sweep the spectral abscissa");
  add_model(spectrum);
  add_out(spectrum);
  spectrum->add_option("--s-min", cfg.s_min, "lowest |xi|");
  spectrum->add_option("--s-max", cfg.s_max, "highest |xi|");
  spectrum->add_option("--s-points", cfg.s_points, "log-spaced |xi| count");
  spectrum->add_option("--omega-samples", cfg.omega_samples, "sphere sample count");
  spectrum->add_flag_callback("--restricted", [&]() { cfg.restricted = 1; },
                              "restrict to the constraint subspace");
  spectrum->add_flag_callback("--unrestricted", [&]() { cfg.restricted = 0; },
                              "ignore the constraint block");

  auto* classify = app.add_subcommand("classify", "fit the uniform dissipativity type (p, q)");
  add_model(classify, /*required=*/false);
  add_out(classify);
  classify->add_option("--sweep", cfg.in, "previously written sweep CSV");
  classify->add_option("--s-points", cfg.s_points, "log-spaced |xi| count");
  classify->add_option("--omega-samples", cfg.omega_samples, "sphere sample count");

  auto* certify = app.add_subcommand("certify", "tune and certify a Lyapunov decay rate");
  add_model(certify);
  add_out(certify);
  certify->add_option("--envelope", cfg.envelope, "eta | rho (default: model's expected)");
  certify->add_option("--s-points", cfg.s_points, "certification grid size");
  certify->add_option("--omega-samples", cfg.omega_samples, "sphere sample count");

  auto* decay = app.add_subcommand("decay", "measure L2 decay rates by radial quadrature");
  add_model(decay);
  add_out(decay);
  decay->add_option("--profile", cfg.profile, "gaussian:w | ring:s0,s1 | powerlaw[:sigma]");
  decay->add_option("--k", cfg.k, "derivative order");
  decay->add_option("--ell", cfg.ell, "extra-regularity order");
  decay->add_option("--t-max", cfg.t_max, "largest time");
  decay->add_option("--t-points", cfg.t_points, "time samples");
  decay->add_option("--omega-samples", cfg.omega_samples, "sphere sample count");

  auto* plot = app.add_subcommand("plot", "render a decay CSV as a log-log SVG");
  plot->add_option("--in", cfg.in, "decay CSV")->required();
  add_out(plot);

  auto* exp = app.add_subcommand("export", "write a builtin model as a model JSON file");
  add_model(exp);
  add_out(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return hyperdiss::run_report(cfg);
}
