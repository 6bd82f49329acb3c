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

#include <functional>
#include <span>
#include <vector>

#include "heston/linalg.hpp"

namespace heston {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// P(K > lambda) for the Kolmogorov distribution. Series are truncated once
// terms drop below 1e-10.
double kolmogorov_survival(double lambda);

// Two-sided two-sample Kolmogorov-Smirnov test with the asymptotic p-value
// at lambda = sqrt(n m / (n + m)) D. Throws DomainError on an empty sample.
KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

// One-sample test against a continuous CDF.
KsResult ks_one_sample(std::span<const double> xs, const std::function<double(double)>& cdf);

double normal_cdf(double x) noexcept;

// Unbiased sample covariance; needs at least two samples.
Mat4 empirical_covariance(std::span<const Vec4> samples);

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // unbiased; 0 for a single value
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(std::span<const double> values);

double median(std::vector<double> values);

}  // namespace heston
