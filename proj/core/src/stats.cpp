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
#include "heston/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heston/error.hpp"

namespace heston {

namespace {

constexpr double kSeriesCutoff = 1e-10;

}  // namespace

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // P(K <= l) = sqrt(2 pi) / l * sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 l^2))
    const double c = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(c * odd * odd);
      sum += term;
      if (term < kSeriesCutoff) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  // P(K > l) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 l^2)
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < kSeriesCutoff) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) throw DomainError("KS test needs two nonempty samples");
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());

  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double ne = std::sqrt(n * m / (n + m));
  return {d, kolmogorov_survival(ne * d)};
}

KsResult ks_one_sample(std::span<const double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw DomainError("KS test needs a nonempty sample");
  std::vector<double> a(xs.begin(), xs.end());
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_survival(std::sqrt(n) * d)};
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

Mat4 empirical_covariance(std::span<const Vec4> samples) {
  if (samples.size() < 2) throw DomainError("covariance needs at least two samples");
  Vec4 mean{};
  for (const auto& s : samples)
    for (std::size_t i = 0; i < 4; ++i) mean[i] += s[i];
  for (auto& v : mean) v /= static_cast<double>(samples.size());

  Mat4 cov{};
  for (const auto& s : samples)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) cov[i][j] += (s[i] - mean[i]) * (s[j] - mean[j]);
  const double norm = 1.0 / static_cast<double>(samples.size() - 1);
  for (auto& row : cov)
    for (auto& v : row) v *= norm;
  return cov;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of an empty sample");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw DomainError("summary of an empty sample");
  Summary s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  s.median = median({values.begin(), values.end()});
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

}  // namespace heston
