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

#include "bosonlab/contours.hpp"
#include "bosonlab/exactdiag.hpp"
#include "bosonlab/model.hpp"
#include "bosonlab/polymer.hpp"

namespace {

using namespace bosonlab;

PotentialSpec hard_core() {
  PotentialSpec p;
  p.onsite = std::numeric_limits<double>::infinity();
  p.u1 = 1.0;
  return p;
}

LatticeBox box_for(int n) { return LatticeBox::torus({2, n}); }

void BM_AssembleHamiltonian(benchmark::State& state) {
  const auto box = box_for(static_cast<int>(state.range(0)));
  const FockBasis basis(box, 1);
  ModelParams p;
  p.t = 0.5;
  p.mu = 0.2;
  const auto spec = build_interaction_terms(box, 1, p, hard_core());
  for (auto _ : state) benchmark::DoNotOptimize(assemble_hamiltonian(basis, spec));
  state.counters["states"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_AssembleHamiltonian)->DenseRange(2, 6, 2);

void BM_FullDiagonalization(benchmark::State& state) {
  const auto box = box_for(static_cast<int>(state.range(0)));
  const FockBasis basis(box, 1);
  ModelParams p;
  p.t = 0.5;
  const auto h = build_interaction(box, basis, p, hard_core()).hamiltonian;
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(h).eigenvalues);
  state.counters["states"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_FullDiagonalization)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_SectorThermodynamics(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto box = LatticeBox::torus({n, n});
  ModelParams p;
  p.t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sector_thermodynamics(box, 1, p, hard_core(), FamilySet::standard()));
  }
}
BENCHMARK(BM_SectorThermodynamics)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PolymerWeightTable(benchmark::State& state) {
  const auto box = LatticeBox::torus({3, 3});
  ModelParams p;
  p.t = 0.1;
  const auto spec = build_interaction_terms(box, 1, p, hard_core());
  const int max_size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_weight_table(spec, 1.0, max_size));
}
BENCHMARK(BM_PolymerWeightTable)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ClusterFreeEnergy(benchmark::State& state) {
  ModelParams p;
  p.t = 0.1;
  p.mu = 0.2;
  const int size_cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cluster_free_energy(2, 1, p, hard_core(), FamilySet::standard(), size_cutoff, 3));
  }
}
BENCHMARK(BM_ClusterFreeEnergy)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_ExtractContours(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto box = LatticeBox::torus({n, n});
  const int slices = 8;
  std::vector<std::vector<int>> frames(slices, reference_configuration(box, RefConfig::kChessA));
  for (int m = 2; m < 5; ++m) frames[m][0] ^= 1;
  const auto config = SpaceTimeConfig::from_slices(box, 1.0, frames);
  for (auto _ : state) benchmark::DoNotOptimize(extract_contours(config));
}
BENCHMARK(BM_ExtractContours)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
