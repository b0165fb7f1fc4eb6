// Copyright 2026 The bosonlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <limits>

#include "bosonlab/cycles.hpp"
#include "bosonlab/stochastic.hpp"

namespace {

using namespace bosonlab;

void BM_McmcSweeps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto box = LatticeBox::torus({n, n});
  XiSpec spec;
  spec.beta = 2.0;
  McmcOptions opt;
  opt.sweeps = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(mcmc_sample(box, spec, opt));
  state.SetItemsProcessed(state.iterations() * opt.sweeps * box.size());
}
BENCHMARK(BM_McmcSweeps)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SacEnumeration(benchmark::State& state) {
  const auto box = LatticeBox::torus({4, 4});
  XiSpec spec;
  spec.kind = XiKind::kNearestNeighbor;
  const int max_length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sac_enumerate(box, spec, max_length));
}
BENCHMARK(BM_SacEnumeration)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Worldlines(benchmark::State& state) {
  const auto box = LatticeBox::torus({4, 4});
  ModelParams p;
  p.t = 0.5;
  PotentialSpec pot;
  pot.onsite = std::numeric_limits<double>::infinity();
  WorldlineOptions opt;
  opt.samples = state.range(0);
  opt.particles = 2;
  for (auto _ : state) benchmark::DoNotOptimize(sample_worldlines(box, p, pot, opt));
  state.SetItemsProcessed(state.iterations() * opt.samples);
}
BENCHMARK(BM_Worldlines)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_IdealGas(benchmark::State& state) {
  const auto ring = LatticeBox::torus({static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(ideal_gas_cycle_analysis(ring, 1.0, 1.0, -3.0));
}
BENCHMARK(BM_IdealGas)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
