// Copyright 2026 The margindisc Authors
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

#include <benchmark/benchmark.h>

#include "margindisc/catalog.hpp"
#include "margindisc/group_discrimination.hpp"
#include "margindisc/isotypic.hpp"
#include "margindisc/oracle.hpp"
#include "margindisc/random.hpp"
#include "margindisc/two_unitary.hpp"

namespace margindisc {
namespace {

void BM_SMin(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  Rng rng = derived_rng(1, 0);
  const UnitaryPair pair(random_unitary(d, rng), random_unitary(d, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_min(pair).s_min);
  }
}
BENCHMARK(BM_SMin)->Arg(2)->Arg(8)->Arg(32)->Arg(128);

void BM_DecomposeColorCoding(benchmark::State& state) {
  const CatalogProblem p = color_coding(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(1)));
  for (auto _ : state) {
    const IrrepDecomposition dec = decompose(*p.rep, 7);
    benchmark::DoNotOptimize(dec);
  }
}
BENCHMARK(BM_DecomposeColorCoding)
    ->Args({3, 2})
    ->Args({4, 2})
    ->Args({3, 3})
    ->Unit(benchmark::kMillisecond);

void BM_DecomposeSuperdense(benchmark::State& state) {
  const CatalogProblem p = superdense(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const IrrepDecomposition dec = decompose(*p.rep, 7);
    benchmark::DoNotOptimize(dec);
  }
}
BENCHMARK(BM_DecomposeSuperdense)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_OptimalStrategy(benchmark::State& state) {
  const CatalogProblem p = phase_shift(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    const MarginResult r = solve_group(*p.rep, 0.1, 3);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_OptimalStrategy)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_OracleTwoUnitary(benchmark::State& state) {
  Rng rng = derived_rng(2, 0);
  const UnitaryPair pair(random_unitary(2, rng), random_unitary(2, rng), 0.3, 0.7);
  OracleConfig cfg;
  cfg.restarts = 1;
  cfg.mixed_samples = 0;
  cfg.iterations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_full(pair, 0.05, cfg).success);
  }
}
BENCHMARK(BM_OracleTwoUnitary)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace margindisc

BENCHMARK_MAIN();
