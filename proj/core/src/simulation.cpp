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
#include "heston/simulation.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "heston/error.hpp"

namespace heston {

CirTransition::CirTransition(double a, double b, double sigma1, double dt) {
  if (!(dt > 0.0)) throw DomainError("transition step dt must be positive");
  if (!(a > 0.0) || !(sigma1 > 0.0)) throw DomainError("CIR transition needs a > 0, sigma1 > 0");
  const double s2 = sigma1 * sigma1;
  df_ = 4.0 * a / s2;
  scale_ = 0.25 * s2 * decay_integral(b, dt);
  decay_ = std::exp(-b * dt);
}

double CirTransition::sample(RandomStream& rng, double y_from) const {
  const double y = scale_ * noncentral_chi_square(rng, df_, noncentrality(y_from));
  // The gamma sampler can underflow to zero for df far below 2.
  return y > 0.0 ? y : std::numeric_limits<double>::denorm_min();
}

double cir_transition_sample(const ModelParams& params, double y_from, double dt,
                             RandomStream& rng) {
  if (!(y_from > 0.0)) throw DomainError("y_from must be positive");
  return CirTransition(params.a, params.b, params.sigma1, dt).sample(rng, y_from);
}

HestonStepper::HestonStepper(const ModelParams& params, double dt)
    : p_(params),
      dt_(dt),
      cir_(params.a, params.b, params.sigma1, dt),
      coupling_(params.sigma2 * params.rho / params.sigma1),
      orth_scale_(params.sigma2 * std::sqrt((1.0 - params.rho * params.rho) * dt)) {}

HestonStepper::State HestonStepper::step(RandomStream& rng, State s) const {
  const double y_next = cir_.sample(rng, s.y);
  const double xi = standard_normal(rng);
  const double w_proxy = y_next - s.y - (p_.a - p_.b * s.y) * dt_;
  const double x_next = s.x + (p_.alpha - p_.beta * s.y) * dt_ + coupling_ * w_proxy +
                        orth_scale_ * std::sqrt(s.y) * xi;
  return {y_next, x_next};
}

PathGrid simulate_heston_path(const ModelParams& params, std::size_t n_steps, double dt,
                              RandomStream& rng) {
  params.validate();
  if (n_steps == 0) throw DomainError("n_steps must be at least 1");
  const HestonStepper stepper(params, dt);
  std::vector<double> y(n_steps + 1);
  std::vector<double> x(n_steps + 1);
  HestonStepper::State s{params.y0, params.x0};
  y[0] = s.y;
  x[0] = s.x;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    s = stepper.step(rng, s);
    y[k] = s.y;
    x[k] = s.x;
  }
  return PathGrid(dt, std::move(y), std::move(x));
}

namespace {

struct DriftOnlyCir {
  double y_end;
  double int_y;
  double int_inv_y;  // left-point; +inf when the path starts at zero
};

// Pure-drift CIR (b = 0) from y_start over [0, horizon]; left-point integral.
DriftOnlyCir run_drift_only_cir(double a, double sigma1, double y_start, double horizon,
                                std::size_t n_steps, RandomStream& rng) {
  if (n_steps == 0) throw DomainError("companion n_steps must be at least 1");
  const double dt = horizon / static_cast<double>(n_steps);
  const CirTransition cir(a, 0.0, sigma1, dt);
  double y = y_start;
  double sum = 0.0;
  double sum_inv = 0.0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    sum += y;
    sum_inv += 1.0 / y;
    y = cir.sample(rng, y);
  }
  return {y, sum * dt, sum_inv * dt};
}

}  // namespace

CriticalCompanion simulate_critical_companion(const ModelParams& params, std::size_t n_steps,
                                              RandomStream& rng) {
  params.validate();
  if (!(params.a > 0.5 * params.sigma1 * params.sigma1))
    throw DomainError("critical companion requires a > sigma1^2 / 2");
  const auto cir = run_drift_only_cir(params.a, params.sigma1, 0.0, 1.0, n_steps, rng);
  // With b = 0 the W-integral is exactly (Y_1 - a) / sigma1. Given the Y path,
  // the B-integral of the left-point scheme is N(0, sum Y_k dt), drawn at once.
  const double w_part = (cir.y_end - params.a) / params.sigma1;
  const double b_part = std::sqrt(cir.int_y) * standard_normal(rng);
  const double x1 = params.alpha + params.sigma2 * params.rho * w_part +
                    params.sigma2 * std::sqrt(1.0 - params.rho * params.rho) * b_part;
  return {cir.y_end, cir.int_y, x1};
}

SupercriticalCompanion simulate_supercritical_companion(const ModelParams& params,
                                                        std::size_t n_steps, RandomStream& rng) {
  params.validate();
  if (!(params.b < 0.0)) throw RegimeError("supercritical companion requires b < 0");
  const auto cir = run_drift_only_cir(params.a, params.sigma1, params.y0, -1.0 / params.b,
                                      n_steps, rng);
  return {cir.y_end, cir.int_y, cir.int_inv_y};
}

}  // namespace heston
