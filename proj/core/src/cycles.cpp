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

#include "bosonlab/cycles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "bosonlab/errors.hpp"

namespace bosonlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDistTol = 1e-9;

std::vector<double> xi_table(const LatticeBox& box, const XiSpec& spec) {
  const int n = box.size();
  std::vector<double> t(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) t[static_cast<std::size_t>(x) * n + y] = xi_value(spec, x, y, box);
  }
  return t;
}

// Adds one permutation, weighted by p, to the running averages.
struct CycleAccumulator {
  explicit CycleAccumulator(int n)
      : origin(n + 1, 0.0), fraction(n + 1, 0.0), count(n + 1, 0.0), seen(n, 0) {}

  void add(const std::vector<int>& image, double p) {
    const int n = static_cast<int>(image.size());
    std::fill(seen.begin(), seen.end(), 0);
    for (int s = 0; s < n; ++s) {
      if (seen[s]) continue;
      int len = 0;
      bool has_origin = false;
      for (int x = s; !seen[x]; x = image[x]) {
        seen[x] = 1;
        has_origin = has_origin || x == 0;
        ++len;
      }
      count[len] += p;
      fraction[len] += p * len / n;
      if (has_origin) origin[len] += p;
    }
  }

  std::vector<double> origin, fraction, count;
  std::vector<char> seen;
};

double batch_error(const std::vector<std::vector<double>>& batches,
                   const std::function<double(const std::vector<double>&)>& g) {
  const std::size_t b = batches.size();
  if (b < 2) return 0.0;
  std::vector<double> v;
  v.reserve(b);
  for (const auto& x : batches) v.push_back(g(x));
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / b;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (b - 1) / b);
}

struct ChainResult {
  std::vector<std::vector<double>> origin_batches, fraction_batches, count_batches;
  std::vector<long> batch_sizes;
  long accepted = 0;
  long proposals = 0;
};

}  // namespace

const char* xi_kind_name(XiKind k) {
  switch (k) {
    case XiKind::kQuadratic:
      return "quadratic";
    case XiKind::kPower:
      return "power";
    case XiKind::kNearestNeighbor:
      return "nearest-neighbor";
  }
  return "?";
}

void XiSpec::validate() const {
  if (!(beta > 0) || !std::isfinite(beta)) throw InvalidArgument("XiSpec: beta must be positive");
  if (kind == XiKind::kPower && !(gamma >= 1.0)) {
    throw InvalidArgument("XiSpec: gamma must be at least 1");
  }
  if (!(cutoff > 0) || !std::isfinite(cutoff)) {
    throw InvalidArgument("XiSpec: cutoff must be positive and finite");
  }
  if (dimension < 1) throw InvalidArgument("XiSpec: dimension must be positive");
}

double xi_of_distance(const XiSpec& spec, double d) {
  switch (spec.kind) {
    case XiKind::kQuadratic:
      return d * d / spec.beta;
    case XiKind::kPower:
      return std::pow(d, spec.gamma) / spec.beta;
    case XiKind::kNearestNeighbor:
      if (d < kDistTol) return 0.0;
      if (std::abs(d - 1.0) < kDistTol) return 1.0 / spec.beta;
      return kInf;
  }
  return kInf;
}

double xi_value(const XiSpec& spec, int x, int y, const LatticeBox& box) {
  return xi_of_distance(spec, box.distance(x, y));
}

SummabilityResult summability_check(const XiSpec& spec) {
  spec.validate();
  const int reach = static_cast<int>(std::floor(spec.cutoff + kDistTol));
  const int d = spec.dimension;
  SummabilityResult res;
  res.shells.assign(static_cast<std::size_t>(std::ceil(spec.cutoff - kDistTol)) + 1, 0.0);
  std::vector<int> y(d, -reach);
  while (true) {
    long sq = 0;
    for (int c : y) sq += static_cast<long>(c) * c;
    const double r = std::sqrt(static_cast<double>(sq));
    if (r <= spec.cutoff + kDistTol) {
      const auto k = static_cast<std::size_t>(std::ceil(r - kDistTol));
      const double w = std::exp(-xi_of_distance(spec, r));
      res.shells[std::min(k, res.shells.size() - 1)] += w;
      res.sum += w;
    }
    int a = 0;
    while (a < d && y[a] == reach) y[a++] = -reach;
    if (a == d) break;
    ++y[a];
  }
  res.last_shell = res.shells.back();
  if (res.shells.size() >= 2) {
    res.growing = res.last_shell > 0 && res.last_shell >= res.shells[res.shells.size() - 2];
  }
  return res;
}

PermutationState::PermutationState(const LatticeBox& box, const XiSpec& spec)
    : image_(box.size()), log_weight_(0.0) {
  spec.validate();
  std::iota(image_.begin(), image_.end(), 0);
}

PermutationState::PermutationState(const LatticeBox& box, const XiSpec& spec,
                                   std::vector<int> image)
    : image_(std::move(image)), log_weight_(log_permutation_weight(image_, spec, box)) {}

double PermutationState::weight() const { return std::exp(log_weight_); }

void PermutationState::compose_transposition(int x, int y, double new_log_weight) {
  std::swap(image_[x], image_[y]);
  log_weight_ = new_log_weight;
}

double log_permutation_weight(const std::vector<int>& image, const XiSpec& spec,
                              const LatticeBox& box) {
  spec.validate();
  const int n = box.size();
  if (static_cast<int>(image.size()) != n) {
    throw InvalidArgument("permutation: length does not match the box");
  }
  std::vector<char> hit(n, 0);
  double lw = 0.0;
  for (int x = 0; x < n; ++x) {
    const int y = image[x];
    if (y < 0 || y >= n || hit[y]) throw InvalidArgument("permutation: not a bijection");
    hit[y] = 1;
    lw -= xi_value(spec, x, y, box);
  }
  return lw;
}

double permutation_weight(const std::vector<int>& image, const XiSpec& spec,
                          const LatticeBox& box) {
  return std::exp(log_permutation_weight(image, spec, box));
}

CycleDecomposition cycle_decompose(const std::vector<int>& image) {
  const int n = static_cast<int>(image.size());
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    if (image[x] < 0 || image[x] >= n || seen[image[x]]) {
      throw InvalidArgument("cycle_decompose: not a bijection");
    }
    seen[image[x]] = 1;
  }
  std::fill(seen.begin(), seen.end(), 0);
  CycleDecomposition out;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> cyc;
    for (int x = s; !seen[x]; x = image[x]) {
      seen[x] = 1;
      cyc.push_back(x);
    }
    ++out.histogram[static_cast<int>(cyc.size())];
    if (std::find(cyc.begin(), cyc.end(), 0) != cyc.end()) {
      out.origin_length = static_cast<int>(cyc.size());
    }
    out.cycles.push_back(std::move(cyc));
  }
  return out;
}

double CycleStats::tail(int n) const {
  double s = 0.0;
  for (int l = std::max(n + 1, 1); l < static_cast<int>(origin_length.size()); ++l) {
    s += origin_length[l];
  }
  return s;
}

BruteForceCycles brute_force_distribution(const LatticeBox& box, const XiSpec& spec) {
  spec.validate();
  const int n = box.size();
  if (n > kBruteForceSites) {
    throw UnsupportedSize("brute_force_distribution: more than 9 sites");
  }
  const auto xi = xi_table(box, spec);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BruteForceCycles out;
  std::vector<double> lw;
  do {
    double s = 0.0;
    for (int x = 0; x < n; ++x) s -= xi[static_cast<std::size_t>(x) * n + perm[x]];
    lw.push_back(s);
  } while (std::next_permutation(perm.begin(), perm.end()));

  const double shift = *std::max_element(lw.begin(), lw.end());
  double total = 0.0;
  out.probabilities.resize(lw.size());
  for (std::size_t i = 0; i < lw.size(); ++i) {
    out.probabilities[i] = std::exp(lw[i] - shift);
    total += out.probabilities[i];
    if (out.probabilities[i] > 0) ++out.positive;
  }
  out.z = total * std::exp(shift);
  CycleAccumulator acc(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t i = 0;
  do {
    out.probabilities[i] /= total;
    if (out.probabilities[i] > 0) acc.add(perm, out.probabilities[i]);
    ++i;
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.stats.sites = n;
  out.stats.exact = true;
  out.stats.acceptance = 0.0;
  out.stats.origin_length = std::move(acc.origin);
  out.stats.site_fraction = std::move(acc.fraction);
  out.stats.cycle_count = std::move(acc.count);
  return out;
}

std::vector<std::pair<int, int>> proposal_pairs(const LatticeBox& box, const XiSpec& spec) {
  spec.validate();
  const bool local = spec.kind == XiKind::kNearestNeighbor;
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < box.size(); ++x) {
    for (int y = x + 1; y < box.size(); ++y) {
      if (!local || box.distance(x, y) <= 2.0 + kDistTol) pairs.emplace_back(x, y);
    }
  }
  return pairs;
}

CycleStats mcmc_sample(const LatticeBox& box, const XiSpec& spec, const McmcOptions& options) {
  spec.validate();
  if (options.sweeps < 1) throw InvalidArgument("mcmc_sample: sweeps must be at least 1");
  if (options.batches < 1 || options.chains < 1) {
    throw InvalidArgument("mcmc_sample: batches and chains must be positive");
  }
  const int n = box.size();
  const auto xi = xi_table(box, spec);
  const auto pairs = proposal_pairs(box, spec);
  if (pairs.empty()) throw DiagnosticError("mcmc_sample: immobile chain (no site pairs)");
  auto cost = [&](int x, int y) { return xi[static_cast<std::size_t>(x) * n + y]; };

  auto run_chain = [&](int chain, long sweeps) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(chain), 0xc7c1eu};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    const long burn = options.burn_in >= 0 ? options.burn_in : sweeps / 10;
    const int nb = static_cast<int>(std::min<long>(options.batches, sweeps));
    ChainResult res;
    res.origin_batches.assign(nb, std::vector<double>(n + 1, 0.0));
    res.fraction_batches.assign(nb, std::vector<double>(n + 1, 0.0));
    res.count_batches.assign(nb, std::vector<double>(n + 1, 0.0));
    res.batch_sizes.assign(nb, 0);
    CycleAccumulator acc(n);
    for (long sweep = -burn; sweep < sweeps; ++sweep) {
      bool mobile = false;
      for (int step = 0; step < n; ++step) {
        const auto [x, y] = pairs[pick(rng)];
        const double c_new = cost(x, pi[y]) + cost(y, pi[x]);
        const double u = unif(rng);
        ++res.proposals;
        if (!std::isfinite(c_new)) continue;
        mobile = true;
        const double delta = cost(x, pi[x]) + cost(y, pi[y]) - c_new;
        if (delta >= 0 || u < std::exp(delta)) {
          std::swap(pi[x], pi[y]);
          ++res.accepted;
        }
      }
      if (!mobile) {
        mobile = std::any_of(pairs.begin(), pairs.end(), [&](const auto& pr) {
          return std::isfinite(cost(pr.first, pi[pr.second]) + cost(pr.second, pi[pr.first]));
        });
      }
      if (!mobile) {
        throw DiagnosticError("mcmc_sample: immobile chain (a full sweep had no finite-weight "
                              "proposal)");
      }
      if (sweep < 0) continue;
      const auto b = static_cast<std::size_t>(sweep * nb / sweeps);
      std::fill(acc.origin.begin(), acc.origin.end(), 0.0);
      std::fill(acc.fraction.begin(), acc.fraction.end(), 0.0);
      std::fill(acc.count.begin(), acc.count.end(), 0.0);
      acc.add(pi, 1.0);
      for (int l = 0; l <= n; ++l) {
        res.origin_batches[b][l] += acc.origin[l];
        res.fraction_batches[b][l] += acc.fraction[l];
        res.count_batches[b][l] += acc.count[l];
      }
      ++res.batch_sizes[b];
    }
    return res;
  };

  const int chains = options.chains;
  std::vector<ChainResult> results(chains);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int c = next++; c < chains; c = next++) {
      const long per = options.sweeps / chains + (c < options.sweeps % chains ? 1 : 0);
      if (per > 0) results[c] = run_chain(c, per);
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

  CycleStats st;
  st.sites = n;
  st.origin_length.assign(n + 1, 0.0);
  st.site_fraction.assign(n + 1, 0.0);
  st.cycle_count.assign(n + 1, 0.0);
  long accepted = 0, proposals = 0;
  for (const auto& r : results) {
    accepted += r.accepted;
    proposals += r.proposals;
    for (std::size_t b = 0; b < r.batch_sizes.size(); ++b) {
      const long size = r.batch_sizes[b];
      if (size == 0) continue;
      st.samples += size;
      std::vector<double> ob(n + 1), fb(n + 1);
      for (int l = 0; l <= n; ++l) {
        st.origin_length[l] += r.origin_batches[b][l];
        st.site_fraction[l] += r.fraction_batches[b][l];
        st.cycle_count[l] += r.count_batches[b][l];
        ob[l] = r.origin_batches[b][l] / size;
        fb[l] = r.fraction_batches[b][l] / size;
      }
      st.origin_batches.push_back(std::move(ob));
      st.fraction_batches.push_back(std::move(fb));
    }
  }
  for (int l = 0; l <= n; ++l) {
    st.origin_length[l] /= st.samples;
    st.site_fraction[l] /= st.samples;
    st.cycle_count[l] /= st.samples;
  }
  st.acceptance = proposals ? static_cast<double>(accepted) / proposals : 0.0;
  return st;
}

LongCycleEstimates long_cycle_estimators(const CycleStats& stats, const std::vector<int>& n_list,
                                         int threshold) {
  if (stats.origin_length.empty()) throw InvalidArgument("long_cycle_estimators: empty stats");
  LongCycleEstimates out;
  auto tail_of = [](const std::vector<double>& p, int n) {
    double s = 0.0;
    for (int l = std::max(n + 1, 1); l < static_cast<int>(p.size()); ++l) s += p[l];
    return s;
  };
  for (int n : n_list) {
    const double err = stats.exact ? 0.0 : batch_error(stats.origin_batches, [&](const auto& p) {
      return tail_of(p, n);
    });
    out.tail.push_back({n, {stats.tail(n), err}});
  }
  auto mean_len = [](const std::vector<double>& p) {
    double s = 0.0;
    for (std::size_t l = 1; l < p.size(); ++l) s += static_cast<double>(l) * p[l];
    return s;
  };
  out.mean_origin_length = {mean_len(stats.origin_length),
                            stats.exact ? 0.0 : batch_error(stats.origin_batches, mean_len)};
  out.threshold = threshold > 0 ? threshold
                                : (n_list.empty() ? 0 : *std::max_element(n_list.begin(), n_list.end()));
  out.long_fraction = {tail_of(stats.site_fraction, out.threshold),
                       stats.exact ? 0.0 : batch_error(stats.fraction_batches, [&](const auto& p) {
                         return tail_of(p, out.threshold);
                       })};
  return out;
}

double SacBound::bound(int n) const {
  double s = 0.0;
  for (int k = std::max(n + 1, 2); k < static_cast<int>(by_length.size()); ++k) s += by_length[k];
  return s;
}

SacBound sac_enumerate(const LatticeBox& box, const XiSpec& spec, int max_length,
                       long node_budget) {
  spec.validate();
  const int n = box.size();
  const int limit = max_length > 0 ? std::min(max_length, n) : n;
  const auto xi = xi_table(box, spec);
  auto cost = [&](int x, int y) { return xi[static_cast<std::size_t>(x) * n + y]; };
  SacBound out;
  out.by_length.assign(limit + 1, 0.0);
  std::vector<char> on_path(n, 0);
  on_path[0] = 1;
  // Self-avoiding paths from 0; each closes into a directed cycle.
  auto dfs = [&](auto&& self, int u, int len, double acc) -> void {
    if (++out.nodes > node_budget) {
      throw UnsupportedSize("sac_bound: enumeration exceeds the node budget");
    }
    if (len >= 2 && std::isfinite(cost(u, 0))) out.by_length[len] += std::exp(acc - cost(u, 0));
    if (len == limit) return;
    for (int v = 1; v < n; ++v) {
      if (on_path[v] || !std::isfinite(cost(u, v))) continue;
      on_path[v] = 1;
      self(self, v, len + 1, acc - cost(u, v));
      on_path[v] = 0;
    }
  };
  if (n > 0) dfs(dfs, 0, 1, 0.0);
  return out;
}

double sac_bound(const LatticeBox& box, const XiSpec& spec, int n, int max_length,
                 long node_budget) {
  if (n < 1) throw InvalidArgument("sac_bound: n must be at least 1");
  return sac_enumerate(box, spec, max_length, node_budget).bound(n);
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t m = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    s += std::abs(a - b);
  }
  return 0.5 * s;
}

}  // namespace bosonlab
