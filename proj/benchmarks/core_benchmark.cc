// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the hot paths of the greedy algorithms.

#include <vector>

#include <benchmark/benchmark.h>

#include "wsub/algorithms.h"
#include "wsub/datagen.h"
#include "wsub/matroid.h"
#include "wsub/objectives.h"
#include "wsub/random.h"

namespace wsub {
namespace {

void BM_ResidualRandomGreedyLinreg(benchmark::State& state) {
  const std::size_t p = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  MatroidSpec matroid = RandomGraphicMatroid(p / 2, p, rng);
  LinRegInstance inst = MakeLinRegInstance(p / 2, p, matroid, rng);
  auto f = LeastSquaresLoglik(std::move(inst.problem));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng run_rng(seed++);
    RunTrace trace = ResidualRandomGreedy(*f, matroid, run_rng);
    benchmark::DoNotOptimize(trace.final_value);
  }
  state.SetLabel("n=" + std::to_string(p) + " k=" + std::to_string(matroid.Rank()));
}
BENCHMARK(BM_ResidualRandomGreedyLinreg)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_MaxWeightBaseGraphic(benchmark::State& state) {
  const std::size_t edges = static_cast<std::size_t>(state.range(0));
  Rng rng(11);
  MatroidSpec matroid = RandomGraphicMatroid(edges / 2, edges, rng);
  std::vector<double> weights(edges);
  for (double& w : weights) w = UniformUnit(rng);
  for (auto _ : state) {
    ElementSet base = MaxWeightBase(matroid, weights);
    benchmark::DoNotOptimize(base);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaxWeightBaseGraphic)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_LogisticEvaluate(benchmark::State& state) {
  const std::size_t support = static_cast<std::size_t>(state.range(0));
  Rng rng(13);
  OneHotInstance inst = MakeOneHotLogistic(400, 20, 4, 1e-6, rng);
  auto f = LogisticLoglikOracle(std::move(inst.problem));
  ElementSet s;
  for (std::size_t i = 0; i < support; ++i) s.insert(static_cast<Element>(4 * i));
  for (auto _ : state) {
    benchmark::DoNotOptimize(f->Evaluate(s));
  }
}
BENCHMARK(BM_LogisticEvaluate)->Arg(2)->Arg(8)->Arg(20)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace wsub

BENCHMARK_MAIN();
