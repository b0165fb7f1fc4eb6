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

#include "bosonlab/polymer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "bosonlab/errors.hpp"
#include "bosonlab/exactdiag.hpp"

namespace bosonlab {
namespace {

PotentialSpec hard_core() {
  PotentialSpec p;
  p.onsite = std::numeric_limits<double>::infinity();
  return p;
}

InteractionSpec spec_for(const LatticeBox& box, const ModelParams& p, const PotentialSpec& pot,
                         int nmax = 1) {
  return build_interaction_terms(box, nmax, p, pot);
}

double exact_z(const InteractionSpec& spec, double beta) {
  const FockBasis b(spec.box, spec.nmax);
  return thermodynamics(assemble_hamiltonian(b, spec), beta, spec.box).Z;
}

TEST(SingleSiteF0, Examples) {
  const auto box = LatticeBox::open({1});
  ModelParams p;
  p.mu = 0.5;
  EXPECT_NEAR(single_site_F0(spec_for(box, p, hard_core()), 0, 2.0),
              -0.5 * std::log(1 + std::exp(1.0)), 1e-14);
  EXPECT_NEAR(single_site_F0(spec_for(box, ModelParams{}, hard_core()), 0, 3.0),
              -std::log(2.0) / 3.0, 1e-14);
  PotentialSpec soft;
  soft.onsite = 1.7;
  p.mu = 0.4;
  const double beta = 1.3;
  const double expected =
      -std::log(1 + std::exp(beta * p.mu) + std::exp(beta * (2 * p.mu - soft.onsite))) / beta;
  EXPECT_NEAR(single_site_F0(spec_for(box, p, soft, 2), 0, beta), expected, 1e-14);
}

TEST(PolymerWeight, Examples) {
  const auto box = LatticeBox::open({2});
  ModelParams p;
  p.t = 1.0;
  const auto spec = spec_for(box, p, hard_core());
  EXPECT_EQ(polymer_weight(spec, {0}, 1.0), Complex(0.0));
  const double z_pair = 2 + 2 * std::cosh(1.0);
  EXPECT_NEAR(polymer_weight(spec, {0, 1}, 1.0).real(), z_pair / 4 - 1, 1e-14);

  ModelParams decoupled;
  decoupled.mu = 0.8;
  const auto table = build_weight_table(spec_for(box, decoupled, hard_core()), 1.0);
  EXPECT_TRUE(table.weights.empty());
  EXPECT_NEAR(reconstruct_Z(table), std::pow(1 + std::exp(0.8), 2), 1e-12);
}

TEST(PolymerWeight, RejectsDisconnectedSupport) {
  const auto box = LatticeBox::open({3});
  ModelParams p;
  p.t = 0.2;
  EXPECT_THROW(polymer_weight(spec_for(box, p, hard_core()), {0, 2}, 1.0), InvalidArgument);
  EXPECT_THROW(polymer_weight(spec_for(box, p, hard_core()), {0, 1, 2}, 1.0, 2), UnsupportedSize);
}

TEST(ReconstructZ, SmallChains) {
  ModelParams p;
  p.t = 0.4;
  p.mu = 0.3;
  PotentialSpec pot = hard_core();
  pot.u1 = 0.6;
  for (const auto& box : {LatticeBox::open({2}), LatticeBox::open({3})}) {
    const auto spec = spec_for(box, p, pot);
    const auto table = build_weight_table(spec, 1.0);
    EXPECT_EQ(table.weights.size(), box.size() == 2 ? 1u : 3u);
    const double z = exact_z(spec, 1.0);
    EXPECT_NEAR(reconstruct_Z(table) / z, 1.0, 1e-10);
  }
}

TEST(ReconstructZ, ZeroWeightsGiveProductState) {
  const auto box = LatticeBox::torus({2, 2});
  ModelParams p;
  p.t = 0.3;
  p.mu = -0.2;
  p.h = 0.1;
  auto table = build_weight_table(spec_for(box, p, hard_core()), 1.5);
  for (auto& [s, w] : table.weights) w = 0.0;
  EXPECT_NEAR(reconstruct_Z(table), std::exp(-1.5 * table.f0_total()), 1e-12);
}

TEST(PolymerTable, LookupAndText) {
  const auto box = LatticeBox::open({3});
  ModelParams p;
  p.t = 0.5;
  const auto table = build_weight_table(spec_for(box, p, hard_core()), 1.0);
  EXPECT_EQ(table.weight({1}), Complex(0.0));
  EXPECT_EQ(table.weight({1, 0}), table.weight({0, 1}));
  EXPECT_THROW(table.weight({0, 2}), MissingWeight);
  std::ostringstream os;
  table.write_text(os);
  std::istringstream in(os.str());
  std::string support;
  double re = 0, im = 0;
  int rows = 0;
  while (in >> support >> re >> im) {
    ++rows;
    EXPECT_EQ(im, 0.0);
  }
  EXPECT_EQ(rows, 3);
}

TEST(Ursell, Examples) {
  EXPECT_EQ(ursell_factor(std::vector<std::vector<bool>>{{true}}), 1.0);
  EXPECT_EQ(ursell_factor(std::vector<std::vector<bool>>{{true, true}, {true, true}}), -1.0);
  EXPECT_EQ(ursell_factor(std::vector<std::vector<bool>>{{true, false}, {false, true}}), 0.0);
  // Polymers on a chain: {0,1} touches {2,3}, {5,6} is apart.
  std::vector<std::vector<int>> chain(8);
  for (int x = 0; x + 1 < 8; ++x) {
    chain[x].push_back(x + 1);
    chain[x + 1].push_back(x);
  }
  EXPECT_EQ(ursell_factor({{0, 1}, {2, 3}}, chain), -1.0);
  EXPECT_EQ(ursell_factor({{0, 1}, {5, 6}}, chain), 0.0);
  EXPECT_EQ(ursell_factor({{0, 1}, {0, 1}}, chain), -1.0);
}

// Signed count of connected spanning edge subsets, by enumerating them.
double brute_ursell(const std::vector<std::vector<bool>>& g) {
  const int k = static_cast<int>(g.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (g[i][j]) edges.emplace_back(i, j);
    }
  }
  double total = 0;
  for (unsigned m = 0; m < (1u << edges.size()); ++m) {
    std::vector<int> root(k);
    for (int i = 0; i < k; ++i) root[i] = i;
    auto find = [&](int x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    int comps = k;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!(m & (1u << e))) continue;
      const int a = find(edges[e].first), b = find(edges[e].second);
      if (a != b) {
        root[a] = b;
        --comps;
      }
    }
    if (comps == 1) total += (std::popcount(m) % 2 ? -1.0 : 1.0);
  }
  return total;
}

TEST(PolymerProperty, UrsellSignAlternatesOnChains) {
  for (int k = 1; k <= 5; ++k) {
    std::vector<std::vector<bool>> path(k, std::vector<bool>(k, false));
    for (int i = 0; i < k; ++i) {
      path[i][i] = true;
      if (i + 1 < k) path[i][i + 1] = path[i + 1][i] = true;
    }
    const double phi = ursell_factor(path);
    EXPECT_EQ(phi, brute_ursell(path));
    EXPECT_EQ(phi, k % 2 ? 1.0 : -1.0);

    std::vector<std::vector<bool>> full(k, std::vector<bool>(k, true));
    const double fact = std::tgamma(k);
    EXPECT_EQ(ursell_factor(full), (k % 2 ? 1.0 : -1.0) * fact);
  }
}

TEST(PolymerProperty, UrsellMatchesEnumerationOnRandomGraphs) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 5;
    std::vector<std::vector<bool>> g(k, std::vector<bool>(k, true));
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) g[i][j] = g[j][i] = coin(rng);
    }
    EXPECT_EQ(ursell_factor(g), brute_ursell(g));
  }
}

TEST(PolymerProperty, ReconstructionOnRandomHighTemperatureDraws) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<LatticeBox> boxes{LatticeBox::open({2}), LatticeBox::open({3}),
                                      LatticeBox::torus({2, 2}), LatticeBox::open({2, 3}),
                                      LatticeBox::torus({3, 3})};
  for (const auto& box : boxes) {
    for (int draw = 0; draw < 5; ++draw) {
      ModelParams p;
      p.t = 0.1 * u(rng);
      p.mu = u(rng);
      p.h = 0.5 * u(rng);
      p.beta = 1.0;
      PotentialSpec pot = hard_core();
      pot.u1 = 0.05 * u(rng);
      const auto spec = spec_for(box, p, pot);
      ASSERT_LT(p.beta * interaction_norm(spec, {0.1, NormMode::kStar}), 1.0);
      const auto table = build_weight_table(spec, p.beta, box.size());
      EXPECT_NEAR(reconstruct_Z(table) / exact_z(spec, p.beta), 1.0, 1e-10) << box.describe();
    }
  }
}

TEST(PolymerProperty, TranslationCovarianceAndReality) {
  const auto box = LatticeBox::torus({3, 3});
  ModelParams p;
  p.t = 0.3;
  p.mu = 0.2;
  PotentialSpec pot = hard_core();
  pot.u1 = 0.4;
  pot.usqrt2 = -0.1;
  const auto table = build_weight_table(spec_for(box, p, pot), 1.2, 4);
  for (const auto& [support, w] : table.weights) {
    EXPECT_LT(std::abs(w.imag()), 1e-12);
    for (int axis = 0; axis < 2; ++axis) {
      std::vector<int> moved;
      for (int s : support) moved.push_back(box.shifted(s, axis, 1));
      EXPECT_NEAR(std::abs(table.weight(moved) - w), 0.0, 1e-12);
    }
  }
}

TEST(ClusterFreeEnergy, DecoupledSitesGiveF0) {
  ModelParams p;
  p.mu = 0.7;
  const auto r = cluster_free_energy(2, 1, p, hard_core(), FamilySet::standard());
  EXPECT_NEAR(r.f, -std::log(1 + std::exp(0.7)), 1e-14);
  EXPECT_EQ(r.f, r.f0);
  EXPECT_FALSE(r.diverging);
}

TEST(ClusterFreeEnergy, FreeFermionChain) {
  // 1d hard-core bosons are free fermions in infinite volume.
  ModelParams p;
  p.t = 0.1;
  p.mu = 0.3;
  p.beta = 1.0;
  const auto r = cluster_free_energy(1, 1, p, hard_core(), FamilySet::standard(), 8, 4);
  const int k = 100000;
  double s = 0;
  for (int j = 0; j < k; ++j) {
    const double q = 2 * std::numbers::pi * (j + 0.5) / k;
    s += std::log1p(std::exp(p.beta * (p.mu + 2 * p.t * std::cos(q))));
  }
  EXPECT_NEAR(r.f, -s / k / p.beta, 1e-10);
  EXPECT_LT(r.tail, 1e-9);
  EXPECT_FALSE(r.diverging);
}

TEST(ClusterFreeEnergy, RejectsStaggeredField) {
  ModelParams p;
  p.t = 0.1;
  p.h = 0.2;
  EXPECT_THROW(cluster_free_energy(2, 1, p, hard_core(), FamilySet::standard()), InvalidArgument);
}

TEST(WeightBound, ConditionAndBounds) {
  const auto box = LatticeBox::torus({3, 3});
  ModelParams p;
  p.t = 0.01;
  const auto spec = spec_for(box, p, hard_core());
  const auto table = build_weight_table(spec, 1.0, 4);
  // ||H||*_r = 4 t e^{2r}.
  const auto r1 = weight_and_condition_check(spec, table, 1.0);
  EXPECT_NEAR(r1.norm, 0.04 * std::exp(2.0), 1e-12);
  EXPECT_TRUE(r1.condition);
  EXPECT_TRUE(r1.bounds_hold);
  const auto r3 = weight_and_condition_check(spec, table, 3.0);
  EXPECT_FALSE(r3.condition);
  EXPECT_TRUE(r3.bounds_hold);

  ModelParams hot;
  hot.t = 2.0;
  const auto big = spec_for(box, hot, hard_core());
  EXPECT_FALSE(weight_and_condition_check(big, build_weight_table(big, 1.0, 2), 0.1).condition);
}

TEST(WeightBound, GrowsWithTheCap) {
  const auto box = LatticeBox::open({2});
  ModelParams p;
  p.t = 0.05;
  PotentialSpec soft;
  soft.onsite = 1.0;
  const auto s1 = spec_for(box, p, hard_core(), 1);
  const auto s2 = spec_for(box, p, soft, 2);
  const auto a = weight_and_condition_check(s1, build_weight_table(s1, 1.0), 0.5);
  const auto b = weight_and_condition_check(s2, build_weight_table(s2, 1.0), 0.5);
  EXPECT_TRUE(a.bounds_hold);
  EXPECT_TRUE(b.bounds_hold);
}

TEST(DuhamelPairWeight, PartialSumsOfCosh) {
  const auto box = LatticeBox::open({2});
  ModelParams p;
  p.t = 1.0;
  const auto spec = spec_for(box, p, hard_core());
  const auto sums = duhamel_pair_weight(spec, 0, 1, 1.0, 6);
  ASSERT_EQ(sums.size(), 6u);
  // w = (cosh 1 - 1) / 2 = sum_k 1 / (2 (2k)!).
  EXPECT_NEAR(sums[0], 0.0, 1e-14);
  EXPECT_NEAR(sums[1], 0.25, 1e-12);
  EXPECT_NEAR(sums[2], 0.25, 1e-12);
  EXPECT_NEAR(sums[3], 0.25 + 1.0 / 48, 1e-12);
  EXPECT_NEAR(sums[5], 0.25 + 1.0 / 48 + 1.0 / 1440, 1e-12);
  EXPECT_NEAR(sums[5], polymer_weight(spec, {0, 1}, 1.0).real(), 2e-5);
}

TEST(DuhamelPairWeight, ConvergesToInclusionExclusion) {
  const auto box = LatticeBox::open({2});
  ModelParams p;
  p.t = 0.3;
  p.mu = 0.4;
  PotentialSpec pot = hard_core();
  pot.u1 = 0.2;
  const auto spec = spec_for(box, p, pot);
  const double beta = 0.5;
  const auto sums = duhamel_pair_weight(spec, 0, 1, beta, 10);
  const double w = polymer_weight(spec, {0, 1}, beta).real();
  EXPECT_NEAR(sums.back(), w, 1e-10);
  for (std::size_t m = 2; m < sums.size(); ++m) {
    EXPECT_LE(std::abs(sums[m] - w), std::abs(sums[m - 2] - w) + 1e-15);
  }
}

}  // namespace
}  // namespace bosonlab
