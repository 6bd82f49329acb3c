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

#include <string_view>

#include "heston/linalg.hpp"

namespace heston {

// Parameters of
//   dY = (a - b Y) dt + sigma1 sqrt(Y) dW
//   dX = (alpha - beta Y) dt + sigma2 sqrt(Y) (rho dW + sqrt(1 - rho^2) dB)
// with (Y_0, X_0) = (y0, x0).
struct ModelParams {
  double a = 1.0;
  double b = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double rho = 0.0;
  double y0 = 1.0;
  double x0 = 0.0;

  // Throws DomainError unless a > 0, sigma1 > 0, sigma2 > 0, |rho| < 1, y0 > 0
  // and all fields are finite.
  void validate() const;

  // a >= sigma1^2 / 2: Y never hits zero and the likelihood theory applies.
  bool feller_strict() const noexcept { return a >= 0.5 * sigma1 * sigma1; }
};

enum class Criticality { Subcritical, Critical, Supercritical };

std::string_view to_string(Criticality c) noexcept;

// Sign of b, compared exactly against zero.
Criticality classify(const ModelParams& params) noexcept;

// Symmetric 2x2 diffusion coefficient matrix
//   S = [[sigma1^2, rho sigma1 sigma2], [rho sigma1 sigma2, sigma2^2]].
struct DiffusionMatrix {
  double s11 = 1.0;
  double s12 = 0.0;
  double s22 = 1.0;

  static DiffusionMatrix from_params(double sigma1, double sigma2, double rho);
  static DiffusionMatrix from_params(const ModelParams& p) {
    return from_params(p.sigma1, p.sigma2, p.rho);
  }

  double sigma1() const;
  double sigma2() const;
  double rho() const;
  bool positive_definite() const noexcept {
    return s11 > 0.0 && s22 > 0.0 && s11 * s22 - s12 * s12 > 0.0;
  }
  Mat2 matrix() const noexcept { return {{{s11, s12}, {s12, s22}}}; }
};

// (1 - exp(-b t)) / b, equal to t at b = 0, evaluated without cancellation.
double decay_integral(double b, double t) noexcept;

// int_0^t decay_integral(b, u) du, equal to t^2 / 2 at b = 0.
double double_decay_integral(double b, double t) noexcept;

struct MeanVector {
  double ey = 0.0;
  double ex = 0.0;
};

// Closed-form E(Y_t), E(X_t) started from (y0, x0). Requires t >= 0.
MeanVector mean_vector(const ModelParams& params, double t);

// E(Y_inf^kappa) for the Gamma(2a/sigma1^2, 2b/sigma1^2) stationary law.
// Requires b > 0 (RegimeError) and kappa > -2a/sigma1^2 (DomainError).
double stationary_moment(const ModelParams& params, double kappa);

}  // namespace heston
