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

#ifndef BOSONLAB_EXACTDIAG_HPP
#define BOSONLAB_EXACTDIAG_HPP

#include <optional>
#include <vector>

#include "bosonlab/hilbert.hpp"
#include "bosonlab/model.hpp"

namespace bosonlab {

inline constexpr Eigen::Index kDefaultDenseLimit = 4096;

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;  // ascending
  DenseMatrix eigenvectors;     // columns
};

SpectrumResult diagonalize(const OperatorMatrix& h, Eigen::Index max_dim = kDefaultDenseLimit);

/// log sum_i exp(-beta * lambda_i), evaluated stably.
double log_partition(const Eigen::VectorXd& eigenvalues, double beta);

struct ThermoResult {
  double beta = 0.0;
  double mu = 0.0;
  double Z = 0.0;
  double log_z = 0.0;
  /// -(beta |Lambda|)^{-1} log Z
  double f = 0.0;
  std::optional<double> rho;
  std::optional<double> kappa;
};

ThermoResult thermodynamics(const OperatorMatrix& h, double beta, const LatticeBox& box);
ThermoResult thermodynamics(const Eigen::VectorXd& eigenvalues, double beta, int num_sites);

/// Finite-volume Gibbs state exp(-beta H)/Z, held in the eigenbasis.
class GibbsEnsemble {
 public:
  GibbsEnsemble(const OperatorMatrix& h, double beta, Eigen::Index max_dim = kDefaultDenseLimit);

  double beta() const { return beta_; }
  double log_z() const { return log_z_; }
  const SpectrumResult& spectrum() const { return spectrum_; }
  const DenseMatrix& density_matrix() const { return rho_; }

  /// Tr[K exp(-beta H)] / Z.
  Complex expectation(const OperatorMatrix& k) const;
  /// Real part of expectation(k); throws DiagnosticError if the imaginary
  /// part exceeds `imag_tol`.
  double real_expectation(const OperatorMatrix& k, double imag_tol = 1e-10) const;

 private:
  double beta_;
  double log_z_;
  SpectrumResult spectrum_;
  DenseMatrix rho_;
};

/// Tr[(|Lambda|^{-1} sum_A K_A) exp(-beta H)] / Z.
double gibbs_expectation(const OperatorMatrix& h, double beta, const InteractionSpec& k,
                         const FockBasis& basis);
double gibbs_expectation(const GibbsEnsemble& ens, const InteractionSpec& k,
                         const FockBasis& basis);

/// <c+_x c_y> in the Gibbs state.
Complex odlro_correlator(const OperatorMatrix& h, double beta, const FockBasis& basis, int x,
                         int y);
Complex odlro_correlator(const GibbsEnsemble& ens, const FockBasis& basis, int x, int y);

/// One-body reduced density matrix [<c+_x c_y>]_{x,y}.
DenseMatrix odlro_matrix(const GibbsEnsemble& ens, const FockBasis& basis);

struct DensityResult {
  double rho = 0.0;
  double kappa = 0.0;
};

inline constexpr double kDefaultDmu = 1e-3;

/// rho = <N>/|Lambda| at params.mu; kappa by central difference in mu at
/// fixed beta = params.beta.
DensityResult density_and_compressibility(const LatticeBox& box, int nmax,
                                          const ModelParams& params, const PotentialSpec& pot,
                                          FamilySet families = FamilySet::standard(),
                                          double dmu = kDefaultDmu);

/// Spectral norm of U H U^{-1} - H' (H' = H when omitted).
double symmetry_residual(const OperatorMatrix& h, const OperatorMatrix& u,
                         const OperatorMatrix* h_image = nullptr);

struct SpinEquivalence {
  double spectral_distance = 0.0;
  /// |f_xy - f_hop| at the given beta.
  double free_energy_difference = 0.0;
};

/// Compares the x-y model -sum_{<xy>} (S1 S1 + S2 S2), built from Pauli
/// matrices, with hard-core hopping of amplitude `hopping` (the two agree
/// at 1/2). Only nmax = 1 is meaningful.
SpinEquivalence spin_xy_equivalence(const LatticeBox& box, double beta, double hopping = 0.5,
                                    int nmax = 1);

/// Spin-1/2 x-y Hamiltonian on the box, spin up identified with n = 1.
OperatorMatrix xy_model_hamiltonian(const LatticeBox& box);

// --- symmetry-resolved diagonalization -------------------------------------

struct SectorSpectrum {
  int particles = 0;
  std::vector<int> momentum;  // per axis, in units of 2 pi / L
  Eigen::VectorXd eigenvalues;
};

/// Spectrum of a number-conserving, translation-invariant Hamiltonian by
/// blocks of fixed particle number and lattice momentum (periodic axes).
/// Each block has dimension at most the number of orbit representatives,
/// so this reaches boxes well beyond the dense limit.
std::vector<SectorSpectrum> sector_spectra(const LatticeBox& box, int nmax,
                                           const ModelParams& params, const PotentialSpec& pot,
                                           FamilySet families = FamilySet::standard(),
                                           Eigen::Index max_block = kDefaultDenseLimit,
                                           std::size_t max_states = kDefaultMaxStates);

/// Z, f and rho from sector_spectra. Requires Q off and h = 0.
ThermoResult sector_thermodynamics(const LatticeBox& box, int nmax, const ModelParams& params,
                                   const PotentialSpec& pot,
                                   FamilySet families = FamilySet::standard());

}  // namespace bosonlab

#endif  // BOSONLAB_EXACTDIAG_HPP
