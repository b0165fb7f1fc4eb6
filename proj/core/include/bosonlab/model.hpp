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

#ifndef BOSONLAB_MODEL_HPP
#define BOSONLAB_MODEL_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bosonlab/hilbert.hpp"
#include "bosonlab/lattice.hpp"

namespace bosonlab {

/// Pair potential U(d). U(0) may be +infinity (hard core, requires nmax = 1).
struct PotentialSpec {
  double onsite = 0.0;
  double u1 = 0.0;
  double usqrt2 = 0.0;
  /// Values at distances >= 2; each key must not exceed `cutoff`.
  std::map<double, double> tail;
  double cutoff = 1.4142135623730951;

  bool hard_core() const;
  /// U(d); distances not listed evaluate to zero, as do distances beyond
  /// the cutoff.
  double at(double d) const;
  void validate() const;
};

struct ModelParams {
  double t = 0.0;
  double mu = 0.0;
  double h = 0.0;
  double alpha = 0.0;
  double hq = 0.0;
  double beta = 1.0;

  void validate() const;
};

enum class NormMode { kFull, kStar };

struct NormSettings {
  double r = 0.0;
  NormMode mode = NormMode::kFull;
};

enum class Family { kT, kV, kN, kP, kQ };

const char* family_name(Family f);

/// Bit set over Family.
class FamilySet {
 public:
  constexpr FamilySet() = default;
  constexpr FamilySet(std::initializer_list<Family> fs) {
    for (Family f : fs) bits_ |= bit(f);
  }
  static constexpr FamilySet standard() {
    return {Family::kT, Family::kV, Family::kN, Family::kP};
  }
  static constexpr FamilySet all() {
    return {Family::kT, Family::kV, Family::kN, Family::kP, Family::kQ};
  }
  constexpr bool contains(Family f) const { return (bits_ & bit(f)) != 0; }
  constexpr FamilySet with(Family f) const {
    FamilySet s = *this;
    s.bits_ |= bit(f);
    return s;
  }
  constexpr FamilySet without(Family f) const {
    FamilySet s = *this;
    s.bits_ &= ~bit(f);
    return s;
  }

 private:
  static constexpr unsigned bit(Family f) { return 1u << static_cast<unsigned>(f); }
  unsigned bits_ = 0;
};

/// One H_A: a hermitian block on the local basis of `support` (sorted,
/// first site most significant).
struct InteractionTerm {
  std::vector<int> support;
  DenseMatrix block;
  Family family = Family::kT;
};

struct InteractionSpec {
  LatticeBox box;
  int nmax = 1;
  std::vector<InteractionTerm> terms;

  /// Terms with equal support summed into one block, in order of first
  /// appearance.
  std::vector<InteractionTerm> grouped() const;
};

struct Model {
  InteractionSpec interaction;
  OperatorMatrix hamiltonian;
};

/// Terms of H = T + V - mu N - h P + hq Q restricted to `families`.
InteractionSpec build_interaction_terms(const LatticeBox& box, int nmax, const ModelParams& params,
                                        const PotentialSpec& pot,
                                        FamilySet families = FamilySet::standard());

/// Sum of the terms whose support lies inside `basis`; for a basis on a
/// subset S this is the restriction H_S.
OperatorMatrix assemble_hamiltonian(const FockBasis& basis, const InteractionSpec& spec);

Model build_interaction(const LatticeBox& box, const FockBasis& basis, const ModelParams& params,
                        const PotentialSpec& pot, FamilySet families = FamilySet::standard());

/// sup_x sum_{A containing x} ||H_A|| e^{r ||A||}, with ||A|| the smallest
/// connected set containing A. Star mode keeps |A| >= 2 only.
double interaction_norm(const InteractionSpec& spec, const NormSettings& settings);

/// sum over y in Z^dimension with 2 <= |y| <= cutoff of |U(|y|)| e^{r|y|}.
double tail_weight(const PotentialSpec& pot, double r, int dimension = 2);

/// Classical energy of a 0/1 configuration on a two-dimensional box, as a
/// sum over unit squares (identified by their lower-left corner). The tail
/// of the potential is not included. On open boundaries fewer squares exist
/// and edge sites carry reduced field weight.
double classical_energy(const LatticeBox& box, const std::vector<int>& config, double mu, double h,
                        const PotentialSpec& pot);

enum class RefConfig { kEmpty = 0, kChessA = 1, kChessB = 2, kFull = 3 };

const char* ref_config_name(RefConfig c);

/// 0/1 configuration of a reference pattern. Chessboard A occupies sites
/// with (-1)^x = +1.
std::vector<int> reference_configuration(const LatticeBox& box, RefConfig c);

struct ReferenceEnergies {
  std::array<double, 4> energy{};
  /// All configurations within `tie_tolerance` of the minimum.
  std::vector<RefConfig> argmin;
  double minimum = 0.0;
};

inline constexpr double kTieTolerance = 1e-9;

ReferenceEnergies reference_energies(double mu, double h, double u1, double usqrt2,
                                     double tie_tolerance = kTieTolerance);

struct ClassicalGround {
  double energy = 0.0;
  std::vector<std::vector<int>> minimizers;
};

ClassicalGround classical_ground_bruteforce(const LatticeBox& box, double mu, double h,
                                            const PotentialSpec& pot, int max_sites = 20,
                                            double tie_tolerance = kTieTolerance);

}  // namespace bosonlab

#endif  // BOSONLAB_MODEL_HPP
