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

#include <limits>

#include "heston/functionals.hpp"
#include "heston/linalg.hpp"
#include "heston/model.hpp"
#include "heston/path.hpp"

namespace heston {

// Drift parameters are always ordered (a, b, alpha, beta).
using DriftVector = Vec4;

// Linear term d of the log-likelihood. Like A below it carries the factor
// (1 - rho^2), i.e. both belong to (1 - rho^2) times the log-likelihood.
struct ScoreVector {
  Vec4 d{};
};

// Quadratic term A_T = kron_left ⊗ kron_right, with
//   kron_left  = [[1/s1^2, -rho/(s1 s2)], [-rho/(s1 s2), 1/s2^2]],
//   kron_right = [[int 1/Y, -T], [-T, int Y]].
struct InformationMatrix {
  Mat4 a{};
  Mat2 kron_left{};
  Mat2 kron_right{};

  bool positive_definite() const noexcept {
    return kron_right[0][0] * kron_right[1][1] - kron_right[0][1] * kron_right[1][0] > 0.0;
  }
};

struct MleEstimate {
  double a_hat = 0.0;
  double b_hat = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double det_condition = 0.0;
  bool used_log_identity = false;

  DriftVector theta() const noexcept { return {a_hat, b_hat, alpha_hat, beta_hat}; }
};

// det_condition at or below this fraction of int_y * int_inv_y is rejected.
inline constexpr double kRelativeDeterminantFloor = 1e-12;

InformationMatrix information_matrix(const SufficientStats& stats, const DiffusionMatrix& diff);

ScoreVector score_vector(const SufficientStats& stats, const DiffusionMatrix& diff);

// theta-dependent part of (1 - rho^2) times the log-likelihood,
// theta' d - theta' A theta / 2. The factor does not move the maximizer.
double log_likelihood(const DriftVector& theta, const ScoreVector& score,
                      const InformationMatrix& info);
double log_likelihood(const DriftVector& theta, const SufficientStats& stats,
                      const DiffusionMatrix& diff);

// A^{-1} d through (P ⊗ B)^{-1} = P^{-1} ⊗ B^{-1}. Throws
// DeterminantNonpositive if B is singular.
DriftVector kronecker_solve(const InformationMatrix& info, const ScoreVector& score);

// Closed-form maximizer. It does not depend on the diffusion coefficients;
// the second overload exists for symmetry with the likelihood API.
MleEstimate mle(const SufficientStats& stats);
MleEstimate mle(const SufficientStats& stats, const DiffusionMatrix& diff);

struct EstimateOptions {
  Quadrature quadrature = Quadrature::LeftPoint;
  // Replace the raw sum for int dY/Y with log_identity_value(stats, sigma1).
  bool use_log_identity = false;
  double sigma1 = std::numeric_limits<double>::quiet_NaN();
};

// Applies EstimateOptions to stats computed elsewhere.
SufficientStats prepare_stats(SufficientStats stats, const EstimateOptions& options);

MleEstimate estimate_from_stats(const SufficientStats& stats, const EstimateOptions& options);
MleEstimate estimate_from_path(const PathGrid& path, const EstimateOptions& options = {});

}  // namespace heston
