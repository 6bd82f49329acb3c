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
#include "heston/random.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace heston {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream derive_stream(std::uint64_t seed, std::uint64_t index,
                           std::uint64_t domain) noexcept {
  std::uint64_t state = seed;
  const std::uint64_t h_seed = splitmix64(state);
  state = domain ^ h_seed;
  const std::uint64_t h_domain = splitmix64(state);
  state = index ^ h_domain;

  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    const std::uint64_t w = splitmix64(state);
    words[i] = static_cast<std::uint32_t>(w);
    words[i + 1] = static_cast<std::uint32_t>(w >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return RandomStream(seq);
}

double standard_normal(RandomStream& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

double chi_square(RandomStream& rng, double df) {
  return 2.0 * std::gamma_distribution<double>(0.5 * df, 1.0)(rng);
}

double noncentral_chi_square(RandomStream& rng, double df, double lambda) {
  std::int64_t n = 0;
  if (lambda > 0.0) n = std::poisson_distribution<std::int64_t>(0.5 * lambda)(rng);
  return chi_square(rng, df + 2.0 * static_cast<double>(n));
}

}  // namespace heston
