// Copyright 2026 The heston-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// heston-lab: command line front end for path simulation, estimation and
// the asymptotic-law experiments.
//
// Exit status: 0 when every criterion passes, 1 when a criterion fails or a
// replicate aborts, 2 on usage or configuration errors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "heston/config.hpp"
#include "heston/error.hpp"
#include "heston/estimator.hpp"
#include "heston/experiment.hpp"
#include "heston/functionals.hpp"
#include "heston/parallel.hpp"
#include "heston/path.hpp"
#include "heston/simulation.hpp"

namespace {

using namespace heston;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out;
  std::string csv;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool config_required) {
  auto* cfg = cmd->add_option("--config", o.config, "key = value configuration file");
  if (config_required) cfg->required();
  cfg->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "base seed (overrides the config)");
  cmd->add_option("--threads", o.threads, "worker threads, 0 = all cores (overrides the config)");
  cmd->add_option("--out", o.out, "output file (default: stdout)");
}

ExperimentConfig resolve(const CommonOptions& o, std::optional<ExperimentKind> kind) {
  ExperimentConfig base;
  if (kind) base.kind = *kind;
  ExperimentConfig c = o.config.empty() ? base : load_config(o.config, base);
  if (kind && c.kind != *kind)
    throw ConfigError("config kind '" + std::string(to_string(c.kind)) +
                      "' does not match subcommand '" + std::string(to_string(*kind)) + "'");
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (!o.out.empty()) c.output = o.out;
  if (!o.csv.empty()) c.replicates_csv = o.csv;
  c.estimate.sigma1 = c.params.sigma1;
  return c;
}

void emit(const std::string& file, const std::string& text) {
  if (file.empty() || file == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write '" + file + "'");
  out << text;
}

int run_simulate(const CommonOptions& o) {
  ExperimentConfig c = resolve(o, std::nullopt);
  c.params.validate();
  RandomStream rng = derive_stream(c.seed, 0, stream_domain::kPaths);
  const PathGrid path = simulate_heston_path(c.params, c.n_steps(), c.dt, rng);
  if (c.output.empty() || c.output == "-") {
    write_path_csv(std::cout, path);
  } else {
    write_path_csv(c.output, path);
  }
  return kExitPass;
}

struct EstimateFlags {
  std::string path;
  bool log_identity = false;
  bool trapezoid = false;
  std::optional<double> sigma1;
};

int run_estimate(const CommonOptions& o, const EstimateFlags& f) {
  const PathGrid path = read_path_csv(f.path);
  const DiffusionEstimate diff = diffusion_matrix_estimate(path);
  EstimateOptions opts;
  opts.quadrature = f.trapezoid ? Quadrature::Trapezoid : Quadrature::LeftPoint;
  opts.use_log_identity = f.log_identity;
  // The log identity needs sigma1; fall back to the quadratic-variation value.
  opts.sigma1 = f.sigma1.value_or(diff.sigma1_hat);
  const SufficientStats stats = sufficient_stats(path, opts.quadrature);
  const MleEstimate est = estimate_from_stats(stats, opts);
  emit(o.out, estimate_to_json(est, diff, stats, path.min_y()));
  return kExitPass;
}

int run_report(const CommonOptions& o, ExperimentKind kind) {
  const ExperimentConfig c = resolve(o, kind);
  const TestReport report = run_experiment(c);
  emit(c.output, report_to_json(report));
  if (!c.replicates_csv.empty()) {
    std::ofstream csv(c.replicates_csv);
    if (!csv) throw ConfigError("cannot write '" + c.replicates_csv + "'");
    write_replicates_csv(csv, report);
  }
  for (const auto& cr : report.criteria)
    std::fprintf(stderr, "%s %s = %.6g (%s %.6g)\n", cr.pass ? "PASS" : "FAIL", cr.name.c_str(),
                 cr.value, cr.comparison.c_str(), cr.threshold);
  std::fprintf(stderr, "%zu replicates, seed %llu, %.2f s\n", report.replicates.size(),
               static_cast<unsigned long long>(c.seed), report.wall_clock_seconds);
  return report.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and drift-estimation lab for the Heston model"};
  app.require_subcommand(1);

  CommonOptions sim_opts;
  auto* sim = app.add_subcommand("simulate", "simulate one path and write it as t,y,x CSV");
  add_common(sim, sim_opts, false);

  CommonOptions est_opts;
  EstimateFlags est_flags;
  auto* est = app.add_subcommand("estimate", "estimate drift and diffusion from a path CSV");
  est->add_option("path", est_flags.path, "path CSV with header t,y,x")
      ->required()
      ->check(CLI::ExistingFile);
  est->add_option("--out", est_opts.out, "output JSON (default: stdout)");
  est->add_flag("--log-identity", est_flags.log_identity,
                "replace int dY/Y by the log identity (needs sigma1)");
  est->add_flag("--trapezoid", est_flags.trapezoid, "trapezoid rule for int Y and int 1/Y");
  est->add_option("--sigma1", est_flags.sigma1, "known sigma1 for --log-identity")
      ->check(CLI::PositiveNumber);

  struct ReportCommand {
    const char* name;
    const char* help;
    ExperimentKind kind;
  };
  const ReportCommand report_commands[] = {
      {"consistency", "strong consistency of the estimator", ExperimentKind::Consistency},
      {"clt", "subcritical central limit theorem", ExperimentKind::Clt},
      {"random-scaling-clt", "subcritical limit under random scaling",
       ExperimentKind::RandomScalingClt},
      {"critical-limit", "critical regime limit law", ExperimentKind::CriticalLimit},
      {"supercritical-limit", "supercritical regime limit law",
       ExperimentKind::SupercriticalLimit},
      {"diffusion-recovery", "diffusion coefficients from quadratic variation",
       ExperimentKind::DiffusionRecovery},
  };
  std::vector<CommonOptions> report_opts(std::size(report_commands));
  std::vector<CLI::App*> report_apps;
  for (std::size_t i = 0; i < std::size(report_commands); ++i) {
    auto* cmd = app.add_subcommand(report_commands[i].name, report_commands[i].help);
    add_common(cmd, report_opts[i], true);
    cmd->add_option("--csv", report_opts[i].csv, "per-replicate estimates CSV");
    report_apps.push_back(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_opts);
    if (est->parsed()) return run_estimate(est_opts, est_flags);
    for (std::size_t i = 0; i < report_apps.size(); ++i)
      if (report_apps[i]->parsed()) return run_report(report_opts[i], report_commands[i].kind);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitUsage;
  } catch (const ReplicateError& e) {
    std::fprintf(stderr, "replicate failure: %s\n", e.what());
    return kExitFail;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return kExitUsage;
}
