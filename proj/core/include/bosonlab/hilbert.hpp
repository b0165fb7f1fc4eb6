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

#ifndef BOSONLAB_HILBERT_HPP
#define BOSONLAB_HILBERT_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bosonlab/lattice.hpp"

namespace bosonlab {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using Triplet = Eigen::Triplet<Complex>;

inline constexpr std::size_t kDefaultMaxStates = std::size_t{1} << 24;

struct OccupationState {
  std::vector<int> occupations;

  bool operator==(const OccupationState&) const = default;
};

/// Occupation-number basis over an ordered list of sites with a cap `nmax`.
///
/// The index of a state is the base-(nmax+1) number whose digits are the
/// occupations, with the first listed site as the most significant digit.
/// Enumerating indices 0, 1, ... therefore walks the states in lexicographic
/// order of their occupation strings.
class FockBasis {
 public:
  FockBasis(const LatticeBox& box, int nmax, std::size_t max_states = kDefaultMaxStates);

  /// Basis over a subset of the box; `sites` are taken in the given order.
  FockBasis(const LatticeBox& box, std::vector<int> sites, int nmax,
            std::size_t max_states = kDefaultMaxStates);

  const LatticeBox& box() const { return box_; }
  int nmax() const { return nmax_; }
  int local_dim() const { return nmax_ + 1; }
  int num_sites() const { return static_cast<int>(sites_.size()); }
  const std::vector<int>& sites() const { return sites_; }
  std::size_t size() const { return size_; }
  bool covers_box() const { return covers_box_; }

  /// Position of `site` in the site list, or -1.
  int position_of(int site) const;
  std::size_t stride(int position) const { return strides_.at(position); }

  int occupation(std::size_t index, int position) const {
    return static_cast<int>((index / strides_[position]) % static_cast<std::size_t>(nmax_ + 1));
  }
  int occupation_at_site(std::size_t index, int site) const;
  int total_number(std::size_t index) const;

  OccupationState state(std::size_t index) const;
  std::size_t index_of(const OccupationState& s) const;
  std::vector<OccupationState> states() const;

 private:
  LatticeBox box_;
  std::vector<int> sites_;
  std::vector<int> position_;
  std::vector<std::size_t> strides_;
  int nmax_ = 1;
  std::size_t size_ = 0;
  bool covers_box_ = false;
};

FockBasis enumerate_basis(const LatticeBox& box, int nmax,
                          std::size_t max_states = kDefaultMaxStates);

/// Square complex operator over basis indices, stored sparse.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  /// With `hermitian` set the matrix is checked against its adjoint (1e-12).
  explicit OperatorMatrix(SparseMatrix m, bool hermitian = false);
  explicit OperatorMatrix(const DenseMatrix& m, bool hermitian = false);

  static OperatorMatrix zero(Eigen::Index dim);
  static OperatorMatrix identity(Eigen::Index dim);
  static OperatorMatrix diagonal(const Eigen::VectorXcd& d, bool hermitian = false);

  Eigen::Index dim() const { return m_.rows(); }
  bool hermitian() const { return hermitian_; }
  const SparseMatrix& sparse() const { return m_; }
  DenseMatrix dense() const { return DenseMatrix(m_); }
  Complex coeff(Eigen::Index row, Eigen::Index col) const { return m_.coeff(row, col); }

  bool is_hermitian(double tol = 1e-12) const;
  bool is_finite() const;
  /// Largest absolute entry of this - other.
  double max_abs_diff(const OperatorMatrix& other) const;
  double max_abs() const;

  OperatorMatrix adjoint() const;

  OperatorMatrix operator+(const OperatorMatrix& o) const;
  OperatorMatrix operator-(const OperatorMatrix& o) const;
  OperatorMatrix operator*(const OperatorMatrix& o) const;
  OperatorMatrix scaled(Complex s) const;
  OperatorMatrix& operator+=(const OperatorMatrix& o);

  /// One nonzero per line: "row col re im", preceded by a "# dim N nnz K" line.
  void write_text(std::ostream& os) const;
  static OperatorMatrix read_text(std::istream& is);

 private:
  SparseMatrix m_;
  bool hermitian_ = false;
};

enum class SiteOp { kCreate, kAnnihilate, kNumber };

OperatorMatrix site_operator(const FockBasis& basis, SiteOp kind, int site);
OperatorMatrix site_operator(const FockBasis& basis, SiteOp kind, const SiteCoord& x);

/// Spectral norm: largest |eigenvalue| for hermitian input, otherwise the
/// largest singular value. Dense; dimensions above `max_dim` are refused.
double operator_norm(const OperatorMatrix& m, Eigen::Index max_dim = 4096);

OperatorMatrix total_number_operator(const FockBasis& basis);

/// Projector onto basis states with n_site == n.
OperatorMatrix occupation_projector(const FockBasis& basis, int site, int n);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Places `block`, an operator on the local basis of `support` (first support
/// site most significant), into `basis`. Every support site must belong to
/// the basis.
OperatorMatrix embed_block(const FockBasis& basis, std::span<const int> support,
                           const DenseMatrix& block, bool hermitian = false);

/// Unitary of the site permutation x -> x + step*e_axis on a periodic axis;
/// `basis` must cover the whole box.
OperatorMatrix translation_operator(const FockBasis& basis, int axis, int step = 1);

/// exp(i alpha N) with N the total number operator.
OperatorMatrix gauge_unitary(const FockBasis& basis, double alpha);

}  // namespace bosonlab

#endif  // BOSONLAB_HILBERT_HPP
