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

#ifndef BOSONLAB_CYCLES_HPP
#define BOSONLAB_CYCLES_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "bosonlab/lattice.hpp"
#include "bosonlab/stochastic.hpp"

namespace bosonlab {

enum class XiKind { kQuadratic, kPower, kNearestNeighbor };

const char* xi_kind_name(XiKind k);

/// Jump cost xi(x, y) of a random permutation.
struct XiSpec {
  XiKind kind = XiKind::kQuadratic;
  double beta = 1.0;
  double gamma = 2.0;  // exponent of the power kind
  /// Radius of the ball used by summability_check.
  double cutoff = 10.0;
  int dimension = 2;

  void validate() const;
};

/// |x-y|^2/beta, |x-y|^gamma/beta, or 0 / 1/beta / infinity for the
/// nearest-neighbour kind, with minimal-image distance.
double xi_value(const XiSpec& spec, int x, int y, const LatticeBox& box);
/// Same for a distance.
double xi_of_distance(const XiSpec& spec, double d);

struct SummabilityResult {
  double sum = 0.0;
  /// shells[k] = sum over k-1 < |x| <= k (shells[0] is the origin).
  std::vector<double> shells;
  double last_shell = 0.0;
  /// The outer shells are not decreasing.
  bool growing = false;
};

/// sum_x exp(-xi(0, x)) over the cutoff ball of Z^dimension.
SummabilityResult summability_check(const XiSpec& spec);

/// A bijection of the box sites with its cached log weight.
class PermutationState {
 public:
  /// The identity.
  PermutationState(const LatticeBox& box, const XiSpec& spec);
  PermutationState(const LatticeBox& box, const XiSpec& spec, std::vector<int> image);

  const std::vector<int>& image() const { return image_; }
  int operator[](int x) const { return image_[x]; }
  int size() const { return static_cast<int>(image_.size()); }
  /// -sum_x xi(x, pi(x)); -infinity for weight zero.
  double log_weight() const { return log_weight_; }
  double weight() const;
  /// pi composed with the transposition (x y): x -> pi(y), y -> pi(x).
  void compose_transposition(int x, int y, double new_log_weight);

 private:
  std::vector<int> image_;
  double log_weight_;
};

double permutation_weight(const std::vector<int>& image, const XiSpec& spec,
                          const LatticeBox& box);
double log_permutation_weight(const std::vector<int>& image, const XiSpec& spec,
                              const LatticeBox& box);

struct CycleDecomposition {
  /// Each cycle starts at its smallest site.
  std::vector<std::vector<int>> cycles;
  /// length -> number of cycles
  std::map<int, int> histogram;
  /// Length of the cycle through site 0.
  int origin_length = 0;
};

CycleDecomposition cycle_decompose(const std::vector<int>& image);

/// Averages over a permutation ensemble, exact or sampled. Vectors are
/// indexed by cycle length 0..|Lambda| (entry 0 unused).
struct CycleStats {
  int sites = 0;
  bool exact = false;
  long samples = 0;
  double acceptance = 0.0;
  std::vector<double> origin_length;  // law of the cycle length through 0
  std::vector<double> site_fraction;  // mean fraction of sites in l-cycles
  std::vector<double> cycle_count;    // mean number of l-cycles
  /// Batch means of origin_length and site_fraction (sampled only).
  std::vector<std::vector<double>> origin_batches;
  std::vector<std::vector<double>> fraction_batches;

  /// P(B_{>n}): the cycle through 0 is longer than n.
  double tail(int n) const;
};

struct BruteForceCycles {
  /// Probabilities of all permutations in lexicographic order.
  std::vector<double> probabilities;
  double z = 0.0;
  long positive = 0;
  CycleStats stats;
};

inline constexpr int kBruteForceSites = 9;

BruteForceCycles brute_force_distribution(const LatticeBox& box, const XiSpec& spec);

struct McmcOptions {
  long sweeps = 100000;
  std::uint64_t seed = 1;
  /// Sweeps discarded first; negative selects sweeps / 10.
  long burn_in = -1;
  int batches = 50;
  int chains = 1;
  int threads = 1;
};

/// Transposition Metropolis chain started at the identity. A sweep is |Lambda|
/// proposals; proposals are site pairs within twice the range of xi.
CycleStats mcmc_sample(const LatticeBox& box, const XiSpec& spec, const McmcOptions& options);

/// Site pairs the sampler proposes.
std::vector<std::pair<int, int>> proposal_pairs(const LatticeBox& box, const XiSpec& spec);

struct LongCycleEstimates {
  std::vector<std::pair<int, Estimate>> tail;  // (n, P(B_{>n}))
  Estimate mean_origin_length;
  int threshold = 0;
  Estimate long_fraction;  // fraction of sites in cycles longer than threshold
};

/// `threshold` <= 0 selects max(n_list).
LongCycleEstimates long_cycle_estimators(const CycleStats& stats, const std::vector<int>& n_list,
                                         int threshold = 0);

struct SacBound {
  /// by_length[k] = total weight of self-avoiding cycles of length k through 0.
  std::vector<double> by_length;
  long nodes = 0;
  double bound(int n) const;
};

inline constexpr long kDefaultSacBudget = 50000000;

/// Exact enumeration of self-avoiding cycles through site 0 up to
/// `max_length` (<= 0: |Lambda|).
SacBound sac_enumerate(const LatticeBox& box, const XiSpec& spec, int max_length = 0,
                       long node_budget = kDefaultSacBudget);

/// Sum of exp(-xi) over self-avoiding cycles through 0 longer than n.
double sac_bound(const LatticeBox& box, const XiSpec& spec, int n, int max_length = 0,
                 long node_budget = kDefaultSacBudget);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace bosonlab

#endif  // BOSONLAB_CYCLES_HPP
