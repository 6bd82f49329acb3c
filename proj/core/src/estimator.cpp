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
#include "heston/estimator.hpp"

#include <cmath>

#include "heston/error.hpp"

namespace heston {

namespace {

Mat2 precision_factor(const DiffusionMatrix& diff) {
  if (!diff.positive_definite()) throw DomainError("diffusion matrix must be positive definite");
  const double off = -diff.s12 / (diff.s11 * diff.s22);
  return {{{1.0 / diff.s11, off}, {off, 1.0 / diff.s22}}};
}

Mat2 path_factor(const SufficientStats& s) {
  return {{{s.int_inv_y, -s.T}, {-s.T, s.int_y}}};
}

void check_determinant(const SufficientStats& s) {
  const double det = s.det_condition();
  if (!(det > kRelativeDeterminantFloor * s.int_y * s.int_inv_y))
    throw DeterminantNonpositive(
        "int_y * int_inv_y - T^2 = " + std::to_string(det) +
            " is not positive; the path is (numerically) constant and the MLE does not exist",
        det);
}

}  // namespace

InformationMatrix information_matrix(const SufficientStats& stats, const DiffusionMatrix& diff) {
  InformationMatrix info;
  info.kron_left = precision_factor(diff);
  info.kron_right = path_factor(stats);
  info.a = kron(info.kron_left, info.kron_right);
  return info;
}

ScoreVector score_vector(const SufficientStats& s, const DiffusionMatrix& diff) {
  const Mat2 p = precision_factor(diff);
  const double u1 = s.int_dy_over_y;
  const double u2 = -s.dy;
  const double v1 = s.int_dx_over_y;
  const double v2 = -s.dx;
  return {{p[0][0] * u1 + p[0][1] * v1, p[0][0] * u2 + p[0][1] * v2,
           p[1][0] * u1 + p[1][1] * v1, p[1][0] * u2 + p[1][1] * v2}};
}

double log_likelihood(const DriftVector& theta, const ScoreVector& score,
                      const InformationMatrix& info) {
  return dot(theta, score.d) - 0.5 * dot(theta, info.a * theta);
}

double log_likelihood(const DriftVector& theta, const SufficientStats& stats,
                      const DiffusionMatrix& diff) {
  return log_likelihood(theta, score_vector(stats, diff), information_matrix(stats, diff));
}

DriftVector kronecker_solve(const InformationMatrix& info, const ScoreVector& score) {
  const double det_right = det(info.kron_right);
  if (!(det_right > 0.0))
    throw DeterminantNonpositive("path factor of the information matrix is singular", det_right);
  return kron(inverse(info.kron_left), inverse(info.kron_right)) * score.d;
}

MleEstimate mle(const SufficientStats& s) {
  s.validate();
  check_determinant(s);
  const double det = s.det_condition();
  MleEstimate e;
  e.a_hat = (s.int_y * s.int_dy_over_y - s.T * s.dy) / det;
  e.b_hat = (s.T * s.int_dy_over_y - s.dy * s.int_inv_y) / det;
  e.alpha_hat = (s.int_y * s.int_dx_over_y - s.T * s.dx) / det;
  e.beta_hat = (s.T * s.int_dx_over_y - s.dx * s.int_inv_y) / det;
  e.det_condition = det;
  return e;
}

MleEstimate mle(const SufficientStats& stats, const DiffusionMatrix&) { return mle(stats); }

SufficientStats prepare_stats(SufficientStats stats, const EstimateOptions& options) {
  if (options.use_log_identity) stats.int_dy_over_y = log_identity_value(stats, options.sigma1);
  return stats;
}

MleEstimate estimate_from_stats(const SufficientStats& stats, const EstimateOptions& options) {
  MleEstimate e = mle(prepare_stats(stats, options));
  e.used_log_identity = options.use_log_identity;
  return e;
}

MleEstimate estimate_from_path(const PathGrid& path, const EstimateOptions& options) {
  return estimate_from_stats(sufficient_stats(path, options.quadrature), options);
}

}  // namespace heston
