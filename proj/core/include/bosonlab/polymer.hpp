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

#ifndef BOSONLAB_POLYMER_HPP
#define BOSONLAB_POLYMER_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bosonlab/hilbert.hpp"
#include "bosonlab/model.hpp"

namespace bosonlab {

inline constexpr int kDefaultPolymerSize = 5;

/// Sites joined by at least one term with |support| >= 2. Polymers are
/// connected in this graph; two polymers are incompatible when they overlap
/// or touch through an edge of it.
std::vector<std::vector<int>> coupling_graph(const InteractionSpec& spec);

/// F with exp(-beta F) = Tr exp(-beta H_{x}), traced on the one-site space.
double single_site_F0(const InteractionSpec& spec, int site, double beta);

struct PolymerWeightTable {
  LatticeBox box;
  int nmax = 1;
  double beta = 1.0;
  int max_size = kDefaultPolymerSize;
  /// Keyed by sorted support.
  std::map<std::vector<int>, Complex> weights;
  std::vector<double> f0;
  /// Background energies of labelled contour models; not used when p = 1.
  std::vector<double> background;
  std::vector<std::vector<int>> coupling;

  /// Throws MissingWeight when `support` is not tabulated.
  Complex weight(const std::vector<int>& support) const;
  double f0_total() const;
  /// One row per support: "x,y,... re im".
  void write_text(std::ostream& os) const;
};

/// Weight of one connected support, from exact sub-traces by
/// inclusion-exclusion over compatible polymer families.
Complex polymer_weight(const InteractionSpec& spec, const std::vector<int>& support, double beta,
                       int max_size = kDefaultPolymerSize);

/// Every connected support with 2 <= |A| <= max_size. Singletons carry
/// weight zero and are not stored.
PolymerWeightTable build_weight_table(const InteractionSpec& spec, double beta,
                                      int max_size = kDefaultPolymerSize);

/// exp(-beta F_Lambda) times the sum over compatible polymer families in
/// the whole box. The table must hold every connected support.
double reconstruct_Z(const PolymerWeightTable& table);

/// Signed count of connected spanning subgraphs of the incompatibility
/// graph, (-1)^{#edges} each. No 1/k! is applied.
double ursell_factor(const std::vector<std::vector<bool>>& incompatible);

/// Same for polymers given as site lists, with incompatibility read from
/// the coupling graph.
double ursell_factor(const std::vector<std::vector<int>>& polymers,
                     const std::vector<std::vector<int>>& coupling);

struct ClusterExpansionResult {
  double f = 0.0;
  double f0 = 0.0;
  /// shells[n] = contribution to f of clusters of total size n.
  std::vector<double> shells;
  /// |shells| at the largest size included.
  double tail = 0.0;
  bool diverging = false;
  std::string warning;
  /// Distinct polymer shapes and clusters enumerated.
  long shapes = 0;
  long clusters = 0;
};

/// Infinite-volume free energy per site of a translation invariant model in
/// `dimension` dimensions. Clusters are summed by total size up to
/// `size_cutoff` with at most `k_cutoff` polymers.
ClusterExpansionResult cluster_free_energy(int dimension, int nmax, const ModelParams& params,
                                           const PotentialSpec& pot, FamilySet families,
                                           int size_cutoff = 6, int k_cutoff = 3);

struct WeightBoundReport {
  double norm = 0.0;       // ||H||*_r
  double beta_norm = 0.0;  // beta ||H||*_r
  bool condition = false;  // beta ||H||*_r < 1
  bool bounds_hold = true;
  /// max |w(A)| / bound(A) over the table.
  double worst_ratio = 0.0;
  std::vector<std::vector<int>> violations;
};

/// Checks |w(A)| <= (N+1)^{|A|} e^{-r|A|} e^{|A| beta ||H||*_r} for every
/// tabulated support.
WeightBoundReport weight_and_condition_check(const InteractionSpec& spec,
                                             const PolymerWeightTable& table, double r);

/// Partial sums over m = 1..m_max of the time-ordered expansion of w({x, y})
/// in the two-site coupling. Requires diagonal single-site terms.
std::vector<double> duhamel_pair_weight(const InteractionSpec& spec, int x, int y, double beta,
                                        int m_max);

}  // namespace bosonlab

#endif  // BOSONLAB_POLYMER_HPP
