// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "noisypaper/copula.hpp"
#include "noisypaper/mc_oracle.hpp"
#include "noisypaper/minors.hpp"
#include "noisypaper/rates.hpp"

using namespace noisypaper;

namespace {

const std::vector<ChannelModel>& models() {
  static const std::vector<ChannelModel> pool = [] {
    Rng rng(1, 0);
    std::vector<ChannelModel> out;
    for (int i = 0; i < 64; ++i) out.push_back(random_channel(rng));
    return out;
  }();
  return pool;
}

void BM_ComputeMinors(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_minors(assemble_covariance(models()[i++ % models().size()])));
  }
}
BENCHMARK(BM_ComputeMinors);

void BM_RateAlpha(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rate_alpha(models()[i++ % models().size()], 0.4));
}
BENCHMARK(BM_RateAlpha);

void BM_CapacityMarkov(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(capacity_markov(models()[i++ % models().size()]));
}
BENCHMARK(BM_CapacityMarkov);

void BM_LowerBoundGeneral(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lower_bound_general(models()[i++ % models().size()]));
}
BENCHMARK(BM_LowerBoundGeneral);

void BM_NumericAlphaStar(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(numeric_alpha_star(models()[i++ % models().size()]));
}
BENCHMARK(BM_NumericAlphaStar);

void BM_SampleGaussian(benchmark::State& state) {
  const CovMatrix k = assemble_covariance(models().front());
  for (auto _ : state) benchmark::DoNotOptimize(sample_gaussian(k, static_cast<std::size_t>(state.range(0)), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGaussian)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_McRateEstimate(benchmark::State& state) {
  const ChannelModel& m = models().front();
  const double a = alpha_star(m);
  for (auto _ : state) benchmark::DoNotOptimize(mc_rate_estimate(m, a, static_cast<std::size_t>(state.range(0)), 7));
}
BENCHMARK(BM_McRateEstimate)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_BuildFgm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_fgm(Marginal::normal(), Marginal::exponential(), 0.2));
}
BENCHMARK(BM_BuildFgm)->Unit(benchmark::kMicrosecond);

void BM_SampleFgm(benchmark::State& state) {
  const FgmSpec spec = build_fgm(Marginal::uniform(), Marginal::uniform(), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(sample_fgm(spec, 100'000, 3));
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_SampleFgm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
