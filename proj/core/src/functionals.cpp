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
#include "heston/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heston/error.hpp"
#include "heston/simulation.hpp"

namespace heston {

void SufficientStats::validate() const {
  for (double v : {T, int_y, int_inv_y, dy, dx, int_dy_over_y, int_dx_over_y, y0, yT})
    if (!std::isfinite(v)) throw DomainError("sufficient statistics must be finite");
  if (!(T > 0.0)) throw DomainError("horizon T must be positive");
  if (!(int_y > 0.0) || !(int_inv_y > 0.0))
    throw DomainError("int_y and int_inv_y must be positive");
}

StatsAccumulator::StatsAccumulator(double y0, double x0, double dt, Quadrature quadrature)
    : dt_(dt), quadrature_(quadrature), y0_(y0), x0_(x0), y_(y0), x_(x0), min_y_(y0) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (!(y0 > 0.0)) throw DomainError("y0 must be positive");
}

void StatsAccumulator::push(double y, double x) {
  const double inv = 1.0 / y_;
  if (quadrature_ == Quadrature::LeftPoint) {
    sum_y_ += y_;
    sum_inv_y_ += inv;
  } else {
    sum_y_ += 0.5 * (y_ + y);
    sum_inv_y_ += 0.5 * (inv + 1.0 / y);
  }
  sum_dy_over_y_ += (y - y_) * inv;
  sum_dx_over_y_ += (x - x_) * inv;
  y_ = y;
  x_ = x;
  min_y_ = std::min(min_y_, y);
  ++steps_;
}

SufficientStats StatsAccumulator::result() const {
  if (steps_ == 0) throw DegeneratePathError("sufficient statistics need at least one step");
  SufficientStats s;
  s.T = static_cast<double>(steps_) * dt_;
  s.int_y = sum_y_ * dt_;
  s.int_inv_y = sum_inv_y_ * dt_;
  s.dy = y_ - y0_;
  s.dx = x_ - x0_;
  s.int_dy_over_y = sum_dy_over_y_;
  s.int_dx_over_y = sum_dx_over_y_;
  s.y0 = y0_;
  s.yT = y_;
  return s;
}

SufficientStats sufficient_stats(const PathGrid& path, Quadrature quadrature) {
  const auto y = path.y();
  const auto x = path.x();
  StatsAccumulator acc(y[0], x[0], path.dt(), quadrature);
  for (std::size_t k = 1; k < path.size(); ++k) acc.push(y[k], x[k]);
  return acc.result();
}

SimulatedStats simulate_sufficient_stats(const ModelParams& params, std::size_t n_steps,
                                         double dt, RandomStream& rng, Quadrature quadrature) {
  params.validate();
  if (n_steps == 0) throw DomainError("n_steps must be at least 1");
  const HestonStepper stepper(params, dt);
  StatsAccumulator acc(params.y0, params.x0, dt, quadrature);
  HestonStepper::State s{params.y0, params.x0};
  for (std::size_t k = 0; k < n_steps; ++k) {
    s = stepper.step(rng, s);
    acc.push(s.y, s.x);
  }
  return {acc.result(), acc.min_y()};
}

double log_identity_value(const SufficientStats& stats, double sigma1) {
  if (!(sigma1 > 0.0)) throw DomainError("sigma1 must be positive");
  return std::log(stats.yT) - std::log(stats.y0) + 0.5 * sigma1 * sigma1 * stats.int_inv_y;
}

double log_identity_value(const PathGrid& path, double sigma1) {
  return log_identity_value(sufficient_stats(path), sigma1);
}

DiffusionEstimate diffusion_matrix_estimate(const PathGrid& path) {
  const auto y = path.y();
  const auto x = path.x();
  double qyy = 0.0, qxy = 0.0, qxx = 0.0, sum_y = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double dy = y[k + 1] - y[k];
    const double dx = x[k + 1] - x[k];
    qyy += dy * dy;
    qxy += dy * dx;
    qxx += dx * dx;
    sum_y += y[k];
  }
  const double denom = sum_y * path.dt();
  if (!(denom > 0.0)) throw DegeneratePathError("sum of Y dt must be positive");

  DiffusionEstimate e;
  e.s_hat = {qyy / denom, qxy / denom, qxx / denom};
  e.sigma1_hat = std::sqrt(e.s_hat.s11);
  e.sigma2_hat = std::sqrt(e.s_hat.s22);
  const double scale = e.sigma1_hat * e.sigma2_hat;
  e.rho_hat = scale > 0.0 ? std::clamp(e.s_hat.s12 / scale, -1.0, 1.0) : 0.0;
  const double d = e.s_hat.s11 * e.s_hat.s22 - e.s_hat.s12 * e.s_hat.s12;
  e.rank_deficient = d <= 1e-12 * e.s_hat.s11 * e.s_hat.s22;
  return e;
}

std::vector<double> recover_volatility(std::span<const double> x, double dt, double sigma2,
                                       std::size_t window) {
  if (window < 1) throw DomainError("window must be at least 1");
  if (!(sigma2 > 0.0)) throw DomainError("sigma2 must be positive");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (x.size() < 2 || window >= x.size())
    throw DegeneratePathError("window " + std::to_string(window) + " exceeds path length " +
                              std::to_string(x.size()));

  const std::size_t n_out = x.size() - window;
  const double norm = 1.0 / (sigma2 * sigma2 * static_cast<double>(window) * dt);
  std::vector<double> sq(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double d = x[i + 1] - x[i];
    sq[i] = d * d;
  }
  std::vector<double> out(n_out);
  // Recompute the window sum exactly every block to bound drift in the
  // running difference.
  constexpr std::size_t kResync = 4096;
  double sum = 0.0;
  for (std::size_t k = 0; k < n_out; ++k) {
    if (k % kResync == 0) {
      sum = 0.0;
      for (std::size_t i = k; i < k + window; ++i) sum += sq[i];
    } else {
      sum += sq[k + window - 1] - sq[k - 1];
    }
    out[k] = std::max(sum, 0.0) * norm;
  }
  return out;
}

}  // namespace heston
