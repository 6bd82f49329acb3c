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
#include "heston/model.hpp"

#include <cmath>
#include <string>

#include "heston/error.hpp"

namespace heston {

namespace {

// Below this |b t| the closed forms lose digits to cancellation.
constexpr double kSeriesThreshold = 1e-3;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

void ModelParams::validate() const {
  for (double v : {a, b, alpha, beta, sigma1, sigma2, rho, y0, x0})
    require(std::isfinite(v), "model parameters must be finite");
  require(a > 0.0, "a must be positive");
  require(sigma1 > 0.0, "sigma1 must be positive");
  require(sigma2 > 0.0, "sigma2 must be positive");
  require(rho > -1.0 && rho < 1.0, "rho must lie in (-1, 1)");
  require(y0 > 0.0, "y0 must be positive");
}

std::string_view to_string(Criticality c) noexcept {
  switch (c) {
    case Criticality::Subcritical:
      return "subcritical";
    case Criticality::Critical:
      return "critical";
    case Criticality::Supercritical:
      return "supercritical";
  }
  return "unknown";
}

Criticality classify(const ModelParams& params) noexcept {
  if (params.b > 0.0) return Criticality::Subcritical;
  if (params.b < 0.0) return Criticality::Supercritical;
  return Criticality::Critical;
}

DiffusionMatrix DiffusionMatrix::from_params(double sigma1, double sigma2, double rho) {
  require(sigma1 > 0.0 && sigma2 > 0.0, "diffusion scales must be positive");
  require(rho > -1.0 && rho < 1.0, "rho must lie in (-1, 1)");
  return {sigma1 * sigma1, rho * sigma1 * sigma2, sigma2 * sigma2};
}

double DiffusionMatrix::sigma1() const { return std::sqrt(s11); }
double DiffusionMatrix::sigma2() const { return std::sqrt(s22); }
double DiffusionMatrix::rho() const { return s12 / std::sqrt(s11 * s22); }

double decay_integral(double b, double t) noexcept {
  const double x = b * t;
  if (x == 0.0) return t;
  if (std::abs(x) < 1e-8) return t * (1.0 - 0.5 * x);
  return -std::expm1(-x) / b;
}

double double_decay_integral(double b, double t) noexcept {
  const double x = b * t;
  if (std::abs(x) < kSeriesThreshold) {
    // t^2 * sum_k (-x)^k / (k + 2)!
    double term = 0.5;
    double sum = 0.5;
    for (int k = 1; k < 8; ++k) {
      term *= -x / (k + 2);
      sum += term;
    }
    return t * t * sum;
  }
  return (t - decay_integral(b, t)) / b;
}

MeanVector mean_vector(const ModelParams& p, double t) {
  require(t >= 0.0, "time must be non-negative");
  const double i1 = decay_integral(p.b, t);
  const double i2 = double_decay_integral(p.b, t);
  MeanVector m;
  m.ey = std::exp(-p.b * t) * p.y0 + p.a * i1;
  m.ex = -p.beta * i1 * p.y0 + p.x0 - p.beta * p.a * i2 + p.alpha * t;
  return m;
}

double stationary_moment(const ModelParams& p, double kappa) {
  if (!(p.b > 0.0)) throw RegimeError("stationary moments exist only for b > 0");
  const double shape = 2.0 * p.a / (p.sigma1 * p.sigma1);
  const double rate = 2.0 * p.b / (p.sigma1 * p.sigma1);
  if (!(kappa > -shape))
    throw DomainError("stationary moment of order " + std::to_string(kappa) +
                      " requires kappa > -2a/sigma1^2");
  return std::exp(std::lgamma(shape + kappa) - std::lgamma(shape) - kappa * std::log(rate));
}

}  // namespace heston
