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

#include <cstdint>
#include <random>

namespace heston {

// Every stochastic operation draws from an explicit stream owned by the
// caller. Streams are plain values; copying one forks an identical sequence.
using RandomStream = std::mt19937_64;

// One step of the SplitMix64 output function.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Stream for replicate index of a run seeded with seed. The domain tag keeps
// independent families (paths, limit draws, ...) from overlapping.
RandomStream derive_stream(std::uint64_t seed, std::uint64_t index,
                           std::uint64_t domain = 0) noexcept;

namespace stream_domain {
inline constexpr std::uint64_t kPaths = 0;
inline constexpr std::uint64_t kLimitDraws = 0x4c494d4954ULL;
inline constexpr std::uint64_t kAuxiliary = 0x415558ULL;
}  // namespace stream_domain

double standard_normal(RandomStream& rng);

// Central chi-square with df > 0 degrees of freedom.
double chi_square(RandomStream& rng, double df);

// Noncentral chi-square as a Poisson(lambda / 2) mixture of central
// chi-squares with df + 2N degrees of freedom.
double noncentral_chi_square(RandomStream& rng, double df, double lambda);

}  // namespace heston
