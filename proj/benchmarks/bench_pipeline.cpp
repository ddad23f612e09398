// Copyright 2026 The dpdbscan Authors
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

#include <benchmark/benchmark.h>

#include <cmath>

#include "dpdbscan/datagen.hpp"
#include "dpdbscan/dp_dbscan.hpp"
#include "dpdbscan/histogram.hpp"

namespace dpdbscan {
namespace {

PointSet uniform_points(std::size_t n, std::uint64_t seed) {
  SynthSpec spec;
  spec.kind = SynthKind::kUniform;
  spec.n = n;
  spec.seed = seed;
  return generate(spec).points;
}

// Grid with about `cells` cells in 2D.
GridSpec grid_with(double cells) {
  return GridSpec(2, std::sqrt(2.0) / std::ceil(std::sqrt(cells)));
}

void BM_ExactCounts(benchmark::State& state) {
  const PointSet pts = uniform_points(static_cast<std::size_t>(state.range(0)), 1);
  const GridSpec g = grid_with(1e6);
  for (auto _ : state) benchmark::DoNotOptimize(exact_counts(pts, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactCounts)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

// Args: n, |X|.
void BM_BuildLinear(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec g = grid_with(static_cast<double>(state.range(1)));
  const FrequencyMap f = exact_counts(uniform_points(n, 2), g);
  const double theta = choose_theta(g.universe_size(), n, 1.0);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(build_linear(f, g, 1.0, theta, rng));
}
BENCHMARK(BM_BuildLinear)
    ->Args({10000, 1000000})
    ->Args({10000, 10000000})
    ->Args({100000, 10000000})
    ->Unit(benchmark::kMillisecond);

void BM_BuildNaive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec g = grid_with(static_cast<double>(state.range(1)));
  const FrequencyMap f = exact_counts(uniform_points(n, 2), g);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(build_naive(f, g, 1.0, rng));
}
BENCHMARK(BM_BuildNaive)
    ->Args({10000, 1000000})
    ->Args({10000, 10000000})
    ->Args({100000, 10000000})
    ->Unit(benchmark::kMillisecond);

void BM_FindCoreCells(benchmark::State& state) {
  SynthSpec spec;
  spec.kind = SynthKind::kMoons;
  spec.n = static_cast<std::size_t>(state.range(0));
  const SynthData data = generate(spec);
  const GridSpec g(2, 0.2 * data.scale);
  Rng rng(4);
  const ReleasedHistogram r = release_histogram(data.points, g, {}, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_core_cells(r.histogram, 7.0 + r.bounds.tau, r.bounds.big_gamma));
  }
}
BENCHMARK(BM_FindCoreCells)->Arg(2000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_Run(benchmark::State& state) {
  SynthSpec spec;
  spec.kind = SynthKind::kMoons;
  spec.n = static_cast<std::size_t>(state.range(0));
  const SynthData data = generate(spec);
  const DbscanParams params{0.2 * data.scale, 7};
  Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(run(data.points, params, {}, 1.0, rng));
}
BENCHMARK(BM_Run)->Arg(2000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpdbscan

BENCHMARK_MAIN();
