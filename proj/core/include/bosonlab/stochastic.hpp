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

#ifndef BOSONLAB_STOCHASTIC_HPP
#define BOSONLAB_STOCHASTIC_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bosonlab/hilbert.hpp"
#include "bosonlab/model.hpp"

namespace bosonlab {

/// States reachable by moving one particle across one nearest-neighbour bond
/// without exceeding nmax.
std::vector<OccupationState> neighbor_configs(const OccupationState& n, const LatticeBox& box,
                                              int nmax);

using RealSparse = Eigen::SparseMatrix<double>;

struct ConfigGraph {
  /// G: 1 between neighbouring configurations, -|N(n)| on the diagonal.
  RealSparse generator;
  /// Configuration adjacency (G without its diagonal).
  RealSparse adjacency;
  std::vector<int> degree;
};

ConfigGraph build_generator(const FockBasis& basis);

/// <n|H|n> summed over the terms of `spec`, all of which must be diagonal.
double diagonal_energy(const FockBasis& basis, const InteractionSpec& spec, std::size_t index);

/// |Z_ED - Z_FK| / Z_ED, where Z_FK = Tr exp(beta (t A - V)) with A the
/// configuration adjacency and V the diagonal part of the Hamiltonian.
/// Hard-core (nmax = 1) and number conserving only. Uses params.beta.
double fk_identity_check(const LatticeBox& box, const ModelParams& params,
                         const PotentialSpec& pot, FamilySet families = FamilySet::standard(),
                         int nmax = 1);

struct DuhamelResult {
  /// order_terms[m] = contribution of exactly m T insertions.
  std::vector<double> order_terms;
  std::vector<double> partial_sums;
  /// bounds[m] bounds |Z - partial_sums[m]| a priori.
  std::vector<double> bounds;
  double z = 0.0;
  double bound = 0.0;
};

/// Expansion of Tr exp(-beta (D + T)) in powers of T, D diagonal. Each order
/// is the exact simplex integral, evaluated as one block of the exponential
/// of a block-bidiagonal matrix.
DuhamelResult duhamel_series_Z(const Eigen::VectorXd& diagonal, const DenseMatrix& offdiag,
                               double beta, int m_max);

/// Same, splitting the model Hamiltonian into its diagonal and the rest.
DuhamelResult duhamel_series_Z(const OperatorMatrix& h, double beta, int m_max);

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // one standard error
};

struct JumpRecord {
  double time = 0.0;
  int from = -1;
  int to = -1;
};

struct Worldline {
  double beta = 0.0;
  OccupationState initial;
  std::vector<JumpRecord> jumps;
  OccupationState final_state;
  bool closed = false;
  double log_weight = 0.0;
  /// Endpoint permutation of the initially occupied sites, as cycle lengths.
  std::vector<int> cycle_lengths;
};

struct WorldlineOptions {
  long samples = 10000;
  std::uint64_t seed = 1;
  int chains = 1;
  int threads = 1;
  /// Restrict to a fixed particle number.
  std::optional<int> particles;
  /// Keep the first `keep` trajectories of chain 0 for inspection.
  int keep = 0;
};

struct WorldlineResult {
  /// Unbiased estimate of Tr exp(-beta H) over the sector.
  Estimate z;
  double closed_fraction = 0.0;
  long samples = 0;
  double rate = 0.0;
  /// Weighted probability of each cycle type (sorted lengths, descending).
  std::map<std::vector<int>, Estimate> cycle_type;
  /// Weighted fraction of particles lying in cycles of each length.
  std::map<int, Estimate> length_fraction;
  std::vector<Worldline> kept;
};

/// Closed trajectories of the hopping chain on the configuration graph,
/// sampled by uniformization with thinning and reweighted by
/// exp(int (t |N(n)| - V(n)) dtau). Hard-core, number conserving, t >= 0.
WorldlineResult sample_worldlines(const LatticeBox& box, const ModelParams& params,
                                  const PotentialSpec& pot, const WorldlineOptions& options,
                                  FamilySet families = FamilySet::standard());

/// Exact weight of each cycle type in the N-particle hard-core trace:
/// (1/N!) sum over labelled states l and permutations pi of the type of
/// <pi l| exp(-beta H) |l>, normalised by the sector trace.
std::map<std::vector<int>, double> permutation_resolved_trace(const LatticeBox& box,
                                                              const ModelParams& params,
                                                              const PotentialSpec& pot,
                                                              int particles,
                                                              FamilySet families =
                                                                  FamilySet::standard());

/// Cycle lengths of a permutation given as image list, sorted descending.
std::vector<int> cycle_type(const std::vector<int>& perm);

struct IdealGasResult {
  double fugacity = 0.0;
  std::vector<double> propagator_eigenvalues;  // of exp(-beta T1), ascending
  double z_modes = 0.0;
  double log_z_modes = 0.0;
  double z_permutation = 0.0;
  int truncation = 0;
  /// cycle_weights[j-1] = z^j Tr(K^j) / j
  std::vector<double> cycle_weights;
  double cycle_sum = 0.0;
  double mean_cycle_length = 0.0;
};

/// Free bosons (no interaction, no hard core): grand-canonical partition
/// function from single-particle modes and from the permutation/cycle sum.
/// `truncation` <= 0 selects the smallest N for which the next term is
/// below 1e-12 of the running sum.
IdealGasResult ideal_gas_cycle_analysis(const LatticeBox& box, double beta, double t, double mu,
                                        int truncation = 0);

}  // namespace bosonlab

#endif  // BOSONLAB_STOCHASTIC_HPP
