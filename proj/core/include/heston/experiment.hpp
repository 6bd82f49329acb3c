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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "heston/config.hpp"
#include "heston/estimator.hpp"
#include "heston/functionals.hpp"
#include "heston/stats.hpp"

namespace heston {

struct ReplicateResult {
  std::size_t index = 0;
  MleEstimate estimate;
  double min_y = 0.0;
  // Regime-normalized error in limit order (a, alpha, b, beta); the raw
  // error for Consistency and DiffusionRecovery runs.
  Vec4 scaled{};
  // Random-scaling counterpart, filled for the CLT kinds.
  Vec4 random_scaled{};
  std::optional<DiffusionEstimate> diffusion;
};

struct KsEntry {
  std::string coordinate;
  std::string reference;  // what the sample was compared against
  KsResult result;
  bool gating = true;     // counts toward pass/fail
  bool skipped = false;   // too few replicates
};

struct CovarianceEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double tolerance = 0.0;  // absolute bound on |empirical - theoretical|
  bool pass = false;
};

struct Criterion {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;  // "<", ">", ">="
  bool pass = false;
};

struct CoordinateSummary {
  std::string name;
  Summary summary;
};

struct TestReport {
  ExperimentConfig config;
  Criticality regime = Criticality::Subcritical;
  std::vector<ReplicateResult> replicates;
  std::vector<CoordinateSummary> coordinates;
  std::vector<KsEntry> ks;
  std::vector<CovarianceEntry> covariance;
  std::vector<Criterion> criteria;
  double min_path_y = 0.0;
  double wall_clock_seconds = 0.0;  // not serialized; reports stay reproducible

  bool all_pass() const noexcept;
};

// Runs config.replicates independent replicates. Replicate i draws from
// derive_stream(seed, i); results do not depend on config.threads.
TestReport run_experiment(const ExperimentConfig& config);

// Deterministic JSON rendering of a report (no timing information).
std::string report_to_json(const TestReport& report);

// Columns: replicate,a_hat,b_hat,alpha_hat,beta_hat,det_condition,min_y
void write_replicates_csv(std::ostream& out, const TestReport& report);

// Estimate JSON for the `estimate` subcommand.
std::string estimate_to_json(const MleEstimate& estimate, const DiffusionEstimate& diffusion,
                             const SufficientStats& stats, double min_y);

}  // namespace heston
