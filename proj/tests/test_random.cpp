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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "heston/random.hpp"

namespace heston {
namespace {

TEST(DeriveStream, DeterministicPerSeedAndIndex) {
  auto a = derive_stream(42, 7);
  auto b = derive_stream(42, 7);
  for (int i = 0; i < 16; ++i) EXPECT_EQ(a(), b());
}

TEST(DeriveStream, DistinctAcrossIndexSeedAndDomain) {
  std::set<std::uint64_t> first;
  for (std::uint64_t i = 0; i < 1000; ++i) first.insert(derive_stream(1, i)());
  for (std::uint64_t s = 2; s < 1002; ++s) first.insert(derive_stream(s, 0)());
  first.insert(derive_stream(1, 0, stream_domain::kLimitDraws)());
  EXPECT_EQ(first.size(), 2001u);
}

TEST(Splitmix, KnownSequence) {
  // Reference outputs of SplitMix64 seeded with 0.
  std::uint64_t state = 0;
  EXPECT_EQ(splitmix64(state), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(splitmix64(state), 0x6E789E6AA1B965F4ULL);
}

TEST(NoncentralChiSquare, FirstTwoMoments) {
  auto rng = derive_stream(3, 0);
  const double df = 3.0;
  const double lambda = 5.0;
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = noncentral_chi_square(rng, df, lambda);
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  const double true_var = 2.0 * (df + 2.0 * lambda);
  EXPECT_NEAR(mean, df + lambda, 3.0 * std::sqrt(true_var / n));
  EXPECT_NEAR(var / true_var, 1.0, 0.03);
}

TEST(NoncentralChiSquare, ZeroNoncentralityIsCentral) {
  auto rng = derive_stream(4, 0);
  double s = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) s += noncentral_chi_square(rng, 2.5, 0.0);
  EXPECT_NEAR(s / n, 2.5, 3.0 * std::sqrt(5.0 / n));
}

}  // namespace
}  // namespace heston
