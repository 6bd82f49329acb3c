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

#include <vector>

#include <benchmark/benchmark.h>

#include "heston/asymptotics.hpp"
#include "heston/estimator.hpp"
#include "heston/functionals.hpp"
#include "heston/simulation.hpp"
#include "heston/stats.hpp"

namespace {

using namespace heston;

const ModelParams kParams{2.0, 1.0, 0.3, 0.8, 1.0, 1.0, -0.5, 1.0, 0.0};

void BM_CirTransition(benchmark::State& state) {
  const CirTransition cir(kParams.a, kParams.b, kParams.sigma1, 0.005);
  auto rng = derive_stream(1, 0);
  double y = 1.0;
  for (auto _ : state) {
    y = cir.sample(rng, y);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_CirTransition);

void BM_HestonPath(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  auto rng = derive_stream(2, 0);
  for (auto _ : state) {
    auto path = simulate_heston_path(kParams, steps, 0.005, rng);
    benchmark::DoNotOptimize(path.y().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HestonPath)->Arg(1000)->Arg(40000);

void BM_StreamedStats(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  auto rng = derive_stream(3, 0);
  for (auto _ : state) {
    auto sim = simulate_sufficient_stats(kParams, steps, 0.005, rng);
    benchmark::DoNotOptimize(sim.stats.int_y);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StreamedStats)->Arg(40000);

void BM_Mle(benchmark::State& state) {
  auto rng = derive_stream(4, 0);
  const auto stats = simulate_sufficient_stats(kParams, 4000, 0.005, rng).stats;
  for (auto _ : state) benchmark::DoNotOptimize(mle(stats));
}
BENCHMARK(BM_Mle);

void BM_CriticalLimitSample(benchmark::State& state) {
  const ModelParams p{1.0, 0.0, 0.5, 1.0, 1.0, 1.0, 0.3, 1.0, 0.0};
  auto rng = derive_stream(5, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(critical_limit_sample(p, Scaling::Deterministic, rng).v);
}
BENCHMARK(BM_CriticalLimitSample);

void BM_KsTwoSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto rng = derive_stream(6, 0);
  std::vector<double> xs(n), ys(n);
  for (auto& v : xs) v = standard_normal(rng);
  for (auto& v : ys) v = standard_normal(rng);
  for (auto _ : state) benchmark::DoNotOptimize(ks_two_sample(xs, ys));
}
BENCHMARK(BM_KsTwoSample)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
