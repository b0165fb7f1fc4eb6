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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "bosonlab/errors.hpp"
#include "bosonlab/stochastic.hpp"

namespace bosonlab {

namespace {

struct ChainOutput {
  std::vector<double> log_weight;         // closed samples only
  std::vector<std::vector<int>> types;    // aligned with log_weight
  long samples = 0;
  std::vector<Worldline> kept;
};

struct Sampler {
  const LatticeBox& box;
  const FockBasis& basis;
  const InteractionSpec& diag_spec;
  double t;
  double beta;
  int max_moves;
  std::optional<int> particles;

  double rate() const { return t * max_moves; }

  ChainOutput run(std::uint64_t seed, int chain, long samples, int keep) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chain), 0x5eedu};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::exponential_distribution<double> expo(rate() > 0 ? rate() : 1.0);
    const int L = box.size();

    ChainOutput out;
    out.samples = samples;
    std::vector<int> label_at(L);
    std::vector<int> pos, init;
    std::vector<std::pair<int, int>> moves;
    for (long s = 0; s < samples; ++s) {
      // Initial configuration, uniform over the sector.
      std::fill(label_at.begin(), label_at.end(), -1);
      std::vector<int> occupied;
      if (particles) {
        std::vector<int> sites(L);
        for (int i = 0; i < L; ++i) sites[i] = i;
        for (int i = 0; i < *particles; ++i) {
          std::uniform_int_distribution<int> pick(i, L - 1);
          std::swap(sites[i], sites[pick(rng)]);
        }
        occupied.assign(sites.begin(), sites.begin() + *particles);
      } else {
        for (int i = 0; i < L; ++i) {
          if (unif(rng) < 0.5) occupied.push_back(i);
        }
      }
      std::sort(occupied.begin(), occupied.end());
      init = occupied;
      pos = occupied;
      std::size_t index = 0;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        label_at[pos[i]] = static_cast<int>(i);
        index += basis.stride(pos[i]);
      }
      const bool keep_this = chain == 0 && s < keep;
      Worldline wl;
      if (keep_this) {
        wl.beta = beta;
        wl.initial = basis.state(index);
      }

      auto enumerate_moves = [&]() {
        moves.clear();
        for (int p : pos) {
          for (int y : box.neighbors(p)) {
            if (label_at[y] < 0) moves.emplace_back(p, y);
          }
        }
      };
      enumerate_moves();
      double v = diagonal_energy(basis, diag_spec, index);
      double tau = 0.0;
      double logw = 0.0;
      while (true) {
        const double dt = rate() > 0 ? expo(rng) : std::numeric_limits<double>::infinity();
        const double end = std::min(tau + dt, beta);
        logw += (t * static_cast<double>(moves.size()) - v) * (end - tau);
        if (tau + dt >= beta) break;
        tau += dt;
        const auto k = static_cast<std::size_t>(unif(rng) * max_moves);
        if (k >= moves.size()) continue;  // thinned event
        const auto [x, y] = moves[k];
        const int lab = label_at[x];
        label_at[x] = -1;
        label_at[y] = lab;
        pos[lab] = y;
        index = index - basis.stride(x) + basis.stride(y);
        if (keep_this) wl.jumps.push_back({tau, x, y});
        enumerate_moves();
        v = diagonal_energy(basis, diag_spec, index);
      }

      std::vector<int> final_sites = pos;
      std::sort(final_sites.begin(), final_sites.end());
      const bool closed = final_sites == init;
      std::vector<int> type;
      if (closed) {
        // Label i starts at init[i] and ends at init[perm[i]].
        std::vector<int> perm(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) {
          perm[i] = static_cast<int>(std::lower_bound(init.begin(), init.end(), pos[i]) -
                                     init.begin());
        }
        type = cycle_type(perm);
        out.log_weight.push_back(logw);
        out.types.push_back(type);
      }
      if (keep_this) {
        wl.final_state = basis.state(index);
        wl.closed = closed;
        wl.log_weight = logw;
        wl.cycle_lengths = type;
        out.kept.push_back(std::move(wl));
      }
    }
    return out;
  }
};

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

WorldlineResult sample_worldlines(const LatticeBox& box, const ModelParams& params,
                                  const PotentialSpec& pot, const WorldlineOptions& options,
                                  FamilySet families) {
  params.validate();
  if (families.contains(Family::kQ) && params.hq != 0.0) {
    throw InvalidArgument("sample_worldlines: the Q term does not conserve particle number");
  }
  const double t = families.contains(Family::kT) ? params.t : 0.0;
  if (t < 0) throw InvalidArgument("sample_worldlines: requires t >= 0 (positive weights)");
  if (options.samples <= 0 || options.chains <= 0) {
    throw InvalidArgument("sample_worldlines: samples and chains must be positive");
  }
  const int L = box.size();
  if (options.particles && (*options.particles < 0 || *options.particles > L)) {
    throw InvalidArgument("sample_worldlines: particle number out of range");
  }
  const FockBasis basis(box, 1);
  const InteractionSpec diag_spec =
      build_interaction_terms(box, 1, params, pot, families.without(Family::kT));

  int max_deg = 0, bonds = 0;
  for (int x = 0; x < L; ++x) {
    max_deg = std::max<int>(max_deg, static_cast<int>(box.neighbors(x).size()));
    bonds += static_cast<int>(box.neighbors(x).size());
  }
  bonds /= 2;
  const int movers = options.particles ? std::min(*options.particles, L - *options.particles) : L / 2;
  const int max_moves = std::min(bonds, movers * max_deg);

  const Sampler sampler{box, basis, diag_spec, t, params.beta, std::max(max_moves, 1), options.particles};

  const int chains = options.chains;
  std::vector<ChainOutput> outputs(chains);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int c = next++; c < chains; c = next++) {
      const long per = options.samples / chains + (c < options.samples % chains ? 1 : 0);
      outputs[c] = sampler.run(options.seed, c, per, options.keep);
    }
  };
  const int nthreads = std::max(1, std::min(options.threads, chains));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  WorldlineResult r;
  r.rate = sampler.rate();
  std::vector<double> lw;
  std::vector<const std::vector<int>*> types;
  for (auto& o : outputs) {
    r.samples += o.samples;
    for (std::size_t i = 0; i < o.log_weight.size(); ++i) {
      lw.push_back(o.log_weight[i]);
      types.push_back(&o.types[i]);
    }
  }
  r.kept = std::move(outputs[0].kept);
  r.closed_fraction = static_cast<double>(lw.size()) / static_cast<double>(r.samples);
  if (lw.empty()) {
    throw DiagnosticError("sample_worldlines: no closed trajectory was sampled");
  }

  const double shift = *std::max_element(lw.begin(), lw.end());
  const double n = static_cast<double>(r.samples);
  std::vector<double> w(lw.size());
  double sw = 0.0, sw2 = 0.0;
  for (std::size_t i = 0; i < lw.size(); ++i) {
    w[i] = std::exp(lw[i] - shift);
    sw += w[i];
    sw2 += w[i] * w[i];
  }
  const double log_count =
      options.particles ? log_binomial(L, *options.particles) : L * std::log(2.0);
  const double mean = sw / n;
  const double var = std::max(0.0, sw2 / n - mean * mean) * n / std::max(1.0, n - 1.0);
  const double scale = std::exp(log_count + shift);
  r.z = {scale * mean, scale * std::sqrt(var / n)};

  auto ratio = [&](auto indicator) {
    double num = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) num += w[i] * indicator(*types[i]);
    const double est = num / sw;
    double res2 = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double d = w[i] * (indicator(*types[i]) - est);
      res2 += d * d;
    }
    // Unclosed samples contribute zero residual.
    return Estimate{est, std::sqrt(res2) / sw};
  };

  std::map<std::vector<int>, int> seen_types;
  std::vector<int> lengths;
  for (const auto* ty : types) {
    seen_types.emplace(*ty, 0);
    for (int l : *ty) lengths.push_back(l);
  }
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  for (const auto& [ty, unused] : seen_types) {
    r.cycle_type[ty] = ratio([&](const std::vector<int>& x) { return x == ty ? 1.0 : 0.0; });
  }
  for (int len : lengths) {
    r.length_fraction[len] = ratio([&](const std::vector<int>& x) {
      int total = 0, in = 0;
      for (int l : x) {
        total += l;
        if (l == len) in += l;
      }
      return total > 0 ? static_cast<double>(in) / total : 0.0;
    });
  }
  return r;
}

}  // namespace bosonlab
