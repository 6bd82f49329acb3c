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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "heston/asymptotics.hpp"
#include "heston/estimator.hpp"
#include "heston/model.hpp"

namespace heston {

enum class ExperimentKind {
  Consistency,
  Clt,
  RandomScalingClt,
  CriticalLimit,
  SupercriticalLimit,
  DiffusionRecovery,
};

std::string_view to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_kind(std::string_view name) noexcept;

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Clt;
  ModelParams params;
  double horizon = 100.0;
  double dt = 0.01;
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string output;          // report JSON (or path CSV for `simulate`)
  std::string replicates_csv;  // optional per-replicate estimates

  EstimateOptions estimate;  // estimate.sigma1 is taken from params
  Scaling scaling = Scaling::Deterministic;

  // Limit-law samplers.
  std::size_t limit_draws = 10000;
  std::size_t companion_steps = kDefaultCompanionSteps;

  // Pass/fail thresholds.
  double ks_threshold = 0.01;
  double consistency_tolerance = 0.5;
  double pass_fraction = 0.95;
  double covariance_rel_tolerance = 0.20;
  double covariance_abs_tolerance = 0.05;
  double covariance_abs_cutoff = 0.25;
  double b_median_tolerance = 1e-2;
  double sigma_rel_tolerance = 0.02;
  double rho_abs_tolerance = 0.03;

  // Number of grid steps; horizon must be an integer multiple of dt.
  std::size_t n_steps() const;

  // ConfigError on invalid values or a kind that does not match classify(params).
  void validate() const;
};

// Parses TOML-style "key = value" lines. '#' starts a comment, [section]
// headers are accepted and ignored, strings may be quoted. Unknown keys and
// malformed values raise ConfigError.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& file, ExperimentConfig base = {});

}  // namespace heston
