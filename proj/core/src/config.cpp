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

#include "heston/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "heston/error.hpp"

namespace heston {

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::Consistency, "consistency"},
    {ExperimentKind::Clt, "clt"},
    {ExperimentKind::RandomScalingClt, "random-scaling-clt"},
    {ExperimentKind::CriticalLimit, "critical-limit"},
    {ExperimentKind::SupercriticalLimit, "supercritical-limit"},
    {ExperimentKind::DiffusionRecovery, "diffusion-recovery"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double to_double(std::string_view v, std::size_t line) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    fail(line, "expected a number, got '" + std::string(v) + "'");
  return out;
}

std::uint64_t to_u64(std::string_view v, std::size_t line) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    fail(line, "expected a non-negative integer, got '" + std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view v, std::size_t line) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, "expected true or false, got '" + std::string(v) + "'");
}

std::string_view unquote(std::string_view v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\'')))
    return v.substr(1, v.size() - 2);
  return v;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, std::size_t)>;

Setter real(double ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, std::string_view v, std::size_t l) { c.*field = to_double(v, l); };
}

Setter param(double ModelParams::*field) {
  return [field](ExperimentConfig& c, std::string_view v, std::size_t l) {
    c.params.*field = to_double(v, l);
  };
}

Setter count(std::size_t ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, std::string_view v, std::size_t l) {
    c.*field = static_cast<std::size_t>(to_u64(v, l));
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"kind",
       [](ExperimentConfig& c, std::string_view v, std::size_t l) {
         const auto k = parse_kind(unquote(v));
         if (!k) fail(l, "unknown experiment kind '" + std::string(v) + "'");
         c.kind = *k;
       }},
      {"a", param(&ModelParams::a)},
      {"b", param(&ModelParams::b)},
      {"alpha", param(&ModelParams::alpha)},
      {"beta", param(&ModelParams::beta)},
      {"sigma1", param(&ModelParams::sigma1)},
      {"sigma2", param(&ModelParams::sigma2)},
      {"rho", param(&ModelParams::rho)},
      {"y0", param(&ModelParams::y0)},
      {"x0", param(&ModelParams::x0)},
      {"horizon", real(&ExperimentConfig::horizon)},
      {"T", real(&ExperimentConfig::horizon)},
      {"dt", real(&ExperimentConfig::dt)},
      {"replicates", count(&ExperimentConfig::replicates)},
      {"seed", [](ExperimentConfig& c, std::string_view v, std::size_t l) { c.seed = to_u64(v, l); }},
      {"threads",
       [](ExperimentConfig& c, std::string_view v, std::size_t l) {
         c.threads = static_cast<unsigned>(to_u64(v, l));
       }},
      {"output", [](ExperimentConfig& c, std::string_view v, std::size_t) { c.output = unquote(v); }},
      {"replicates_csv",
       [](ExperimentConfig& c, std::string_view v, std::size_t) { c.replicates_csv = unquote(v); }},
      {"log_identity",
       [](ExperimentConfig& c, std::string_view v, std::size_t l) {
         c.estimate.use_log_identity = to_bool(v, l);
       }},
      {"quadrature",
       [](ExperimentConfig& c, std::string_view v, std::size_t l) {
         const auto q = unquote(v);
         if (q == "left") c.estimate.quadrature = Quadrature::LeftPoint;
         else if (q == "trapezoid") c.estimate.quadrature = Quadrature::Trapezoid;
         else fail(l, "quadrature must be 'left' or 'trapezoid'");
       }},
      {"scaling",
       [](ExperimentConfig& c, std::string_view v, std::size_t l) {
         const auto s = unquote(v);
         if (s == "deterministic") c.scaling = Scaling::Deterministic;
         else if (s == "random") c.scaling = Scaling::Random;
         else fail(l, "scaling must be 'deterministic' or 'random'");
       }},
      {"limit_draws", count(&ExperimentConfig::limit_draws)},
      {"companion_steps", count(&ExperimentConfig::companion_steps)},
      {"ks_threshold", real(&ExperimentConfig::ks_threshold)},
      {"consistency_tolerance", real(&ExperimentConfig::consistency_tolerance)},
      {"pass_fraction", real(&ExperimentConfig::pass_fraction)},
      {"covariance_rel_tolerance", real(&ExperimentConfig::covariance_rel_tolerance)},
      {"covariance_abs_tolerance", real(&ExperimentConfig::covariance_abs_tolerance)},
      {"covariance_abs_cutoff", real(&ExperimentConfig::covariance_abs_cutoff)},
      {"b_median_tolerance", real(&ExperimentConfig::b_median_tolerance)},
      {"sigma_rel_tolerance", real(&ExperimentConfig::sigma_rel_tolerance)},
      {"rho_abs_tolerance", real(&ExperimentConfig::rho_abs_tolerance)},
  };
  return table;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

std::size_t ExperimentConfig::n_steps() const {
  if (!(dt > 0.0) || !(horizon >= dt)) throw ConfigError("need dt > 0 and horizon >= dt");
  const double ratio = horizon / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * ratio)
    throw ConfigError("horizon must be an integer multiple of dt");
  return static_cast<std::size_t>(rounded);
}

void ExperimentConfig::validate() const {
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (replicates < 1) throw ConfigError("replicates must be at least 1");
  (void)n_steps();
  if (limit_draws < 1 || companion_steps < 1)
    throw ConfigError("limit_draws and companion_steps must be positive");
  if (!(ks_threshold > 0.0 && ks_threshold < 1.0)) throw ConfigError("ks_threshold must be in (0, 1)");

  const double half_s2 = 0.5 * params.sigma1 * params.sigma1;
  const Criticality regime = classify(params);
  switch (kind) {
    case ExperimentKind::Clt:
    case ExperimentKind::RandomScalingClt:
      if (regime != Criticality::Subcritical || !(params.a > half_s2))
        throw ConfigError("CLT experiments need b > 0 and a > sigma1^2 / 2");
      break;
    case ExperimentKind::CriticalLimit:
      if (regime != Criticality::Critical || !(params.a > half_s2))
        throw ConfigError("critical-limit needs b = 0 and a > sigma1^2 / 2");
      if (!(horizon > 1.0)) throw ConfigError("critical-limit needs horizon > 1");
      break;
    case ExperimentKind::SupercriticalLimit:
      if (regime != Criticality::Supercritical || !(params.a >= half_s2))
        throw ConfigError("supercritical-limit needs b < 0 and a >= sigma1^2 / 2");
      break;
    case ExperimentKind::Consistency:
    case ExperimentKind::DiffusionRecovery:
      break;
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line_no, "empty key or value");
    const auto it = setters().find(key);
    if (it == setters().end()) fail(line_no, "unknown key '" + std::string(key) + "'");
    it->second(base, value, line_no);
  }
  base.estimate.sigma1 = base.params.sigma1;
  return base;
}

ExperimentConfig load_config(const std::string& file, ExperimentConfig base) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace heston
