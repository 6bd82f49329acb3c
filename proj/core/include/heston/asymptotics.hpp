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

#include "heston/estimator.hpp"
#include "heston/functionals.hpp"
#include "heston/linalg.hpp"
#include "heston/model.hpp"
#include "heston/random.hpp"
#include "heston/simulation.hpp"

namespace heston {

using CovarianceMatrix4 = Mat4;

enum class Scaling { Deterministic, Random };

// A draw from a limit law. Coordinates are always ordered as the scaled
// errors of (a, alpha, b, beta).
struct LimitSample {
  Vec4 v{};
  Criticality regime = Criticality::Critical;
  Scaling scaling = Scaling::Deterministic;
};

// (a, b, alpha, beta) -> (a, alpha, b, beta).
constexpr Vec4 to_limit_order(const Vec4& v) noexcept { return {v[0], v[2], v[1], v[3]}; }

// Same permutation applied to rows and columns of a covariance.
constexpr Mat4 to_limit_order(const Mat4& m) noexcept {
  constexpr std::size_t perm[4] = {0, 2, 1, 3};
  Mat4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = m[perm[i]][perm[j]];
  return out;
}

// Limit covariance of sqrt(T) (theta_hat - theta) for b > 0, a > sigma1^2/2:
//   S ⊗ [[2b/(2a - sigma1^2), -1], [-1, a/b]]^{-1}, ordered (a, b, alpha, beta).
CovarianceMatrix4 subcritical_covariance(const ModelParams& params);

// (int 1/Y)^{-1/2} (I_2 ⊗ [[int 1/Y, -T], [0, sqrt(det)]]) err, for err ordered
// (a, b, alpha, beta). The subcritical limit of the result is N(0, S ⊗ I_2).
Vec4 random_scaling_transform(const SufficientStats& stats, const Vec4& theta_err);

// Regime-specific normalizations of theta_hat - theta, returned in limit
// order (a, alpha, b, beta).
//   subcritical:   sqrt(T) * err                                   (det.)
//                  random_scaling_transform                         (random)
//   critical:      sqrt(log T)(a, alpha), T (b, beta)              (det.)
//                  sqrt(int 1/Y)(a, alpha), sqrt(int Y)(b, beta)    (random)
//   supercritical: (a, alpha), e^{-bT/2} (b, beta)                 (det.)
//                  (a, alpha), sqrt(int Y)(b, beta)                 (random)
Vec4 scaled_error(const ModelParams& truth, const MleEstimate& est, const SufficientStats& stats,
                  Scaling scaling);

// Critical regime (b = 0, a > sigma1^2/2):
//   ( sqrt(a - sigma1^2/2) S^{1/2} Z_2 ; (a - Y_1)/int Y ; (alpha - X_1)/int Y )
// and with random scaling
//   ( S^{1/2} Z_2 ; (a - Y_1)/sqrt(int Y) ; (alpha - X_1)/sqrt(int Y) ),
// with (Y, X) the critical companion started from (0, 0).
LimitSample critical_limit_sample(const ModelParams& params, Scaling scaling, RandomStream& rng,
                                  std::size_t companion_steps = kDefaultCompanionSteps);

// Supercritical regime (b < 0, a >= sigma1^2/2). With Y the drift-only CIR
// from y0 observed at h = -1/b and J = int_0^h du / Y_u,
//   V = (log Y_h - log y0) / J + sigma1^2/2 - a,
// the limit is
//   ( V ; rho (s2/s1) V + s2 sqrt(1 - rho^2) J^{-1/2} Z_1 ;
//     (-Y_h / b)^{-1/2} S^{1/2} Z_2 ),
// dropping the (-Y_h / b)^{-1/2} factor under random scaling.
//
// J arises from the time change u = (1 - e^{bt}) / (-b), which carries
// e^{bt} Y_t to Y_u and int_0^inf dt / Y_t to J. Using int Y_u du in its
// place gives a law that disagrees with simulated estimators.
LimitSample supercritical_limit_sample(const ModelParams& params, Scaling scaling,
                                       RandomStream& rng,
                                       std::size_t companion_steps = kDefaultCompanionSteps);

// First passage time of a standard Brownian motion to level b/sigma1, sampled
// as m^2 / Z^2. Requires b > 0.
double boundary_hitting_time_sample(const ModelParams& params, RandomStream& rng);

}  // namespace heston
