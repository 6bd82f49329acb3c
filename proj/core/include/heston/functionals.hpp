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
#include <span>
#include <vector>

#include "heston/model.hpp"
#include "heston/path.hpp"
#include "heston/random.hpp"

namespace heston {

// Quadrature for the time integrals of Y and 1/Y. Stochastic integrals always
// use left endpoints.
enum class Quadrature { LeftPoint, Trapezoid };

// Path functionals that determine the likelihood.
struct SufficientStats {
  double T = 0.0;
  double int_y = 0.0;          // int_0^T Y ds
  double int_inv_y = 0.0;      // int_0^T ds / Y
  double dy = 0.0;             // Y_T - y0
  double dx = 0.0;             // X_T - x0
  double int_dy_over_y = 0.0;  // int_0^T dY / Y
  double int_dx_over_y = 0.0;  // int_0^T dX / Y
  double y0 = 0.0;
  double yT = 0.0;

  // int_y * int_inv_y - T^2; positive for any non-constant path.
  double det_condition() const noexcept { return int_y * int_inv_y - T * T; }

  // DomainError unless T, int_y, int_inv_y are positive and all fields finite.
  void validate() const;
};

// Streaming form of sufficient_stats(): feed grid points in order.
class StatsAccumulator {
 public:
  StatsAccumulator(double y0, double x0, double dt, Quadrature quadrature = Quadrature::LeftPoint);

  void push(double y, double x);

  SufficientStats result() const;
  double min_y() const noexcept { return min_y_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  double dt_;
  Quadrature quadrature_;
  double y0_, x0_;
  double y_, x_;
  double sum_y_ = 0.0;
  double sum_inv_y_ = 0.0;
  double sum_dy_over_y_ = 0.0;
  double sum_dx_over_y_ = 0.0;
  double min_y_;
  std::size_t steps_ = 0;
};

SufficientStats sufficient_stats(const PathGrid& path,
                                 Quadrature quadrature = Quadrature::LeftPoint);

struct SimulatedStats {
  SufficientStats stats;
  double min_y;
};

// Simulates a Heston path and reduces it on the fly. Consumes the stream and
// returns bit-for-bit what simulate_heston_path followed by sufficient_stats
// would, without storing the path.
SimulatedStats simulate_sufficient_stats(const ModelParams& params, std::size_t n_steps,
                                         double dt, RandomStream& rng,
                                         Quadrature quadrature = Quadrature::LeftPoint);

// Continuous-time value of int dY/Y implied by Ito's rule for log Y:
//   log(Y_T / y0) + (sigma1^2 / 2) int_0^T ds / Y.
double log_identity_value(const SufficientStats& stats, double sigma1);
double log_identity_value(const PathGrid& path, double sigma1);

struct DiffusionEstimate {
  DiffusionMatrix s_hat;
  double sigma1_hat = 0.0;
  double sigma2_hat = 0.0;
  double rho_hat = 0.0;
  // The increment outer-product sum is singular (|rho_hat| == 1 up to rounding).
  bool rank_deficient = false;
};

// Realized quadratic covariation of (Y, X) divided by sum_k Y_k dt.
DiffusionEstimate diffusion_matrix_estimate(const PathGrid& path);

// Sliding-window realized variance of X rescaled to a volatility level:
//   out[k] = sum_{i=k}^{k+w-1} (x_{i+1} - x_i)^2 / (sigma2^2 w dt).
// Output length is x.size() - window.
std::vector<double> recover_volatility(std::span<const double> x, double dt, double sigma2,
                                       std::size_t window);

}  // namespace heston
