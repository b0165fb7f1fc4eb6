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

#include "bosonlab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "bosonlab/errors.hpp"
#include "hermitian_eigen.hpp"

namespace bosonlab {

namespace {

std::vector<int> all_sites(const LatticeBox& box) {
  std::vector<int> s(box.size());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

}  // namespace

FockBasis::FockBasis(const LatticeBox& box, int nmax, std::size_t max_states)
    : FockBasis(box, all_sites(box), nmax, max_states) {}

FockBasis::FockBasis(const LatticeBox& box, std::vector<int> sites, int nmax,
                     std::size_t max_states)
    : box_(box), sites_(std::move(sites)), nmax_(nmax) {
  if (nmax_ < 1) throw InvalidArgument("FockBasis: nmax must be positive");
  position_.assign(box_.size(), -1);
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const int s = sites_[i];
    if (s < 0 || s >= box_.size()) throw InvalidArgument("FockBasis: site outside box");
    if (position_[s] >= 0) throw InvalidArgument("FockBasis: duplicate site");
    position_[s] = static_cast<int>(i);
  }
  const std::size_t q = static_cast<std::size_t>(nmax_) + 1;
  const int m = num_sites();
  strides_.assign(m, 1);
  std::size_t total = 1;
  for (int i = m - 1; i >= 0; --i) {
    strides_[i] = total;
    if (total > max_states / q) {
      throw UnsupportedSize("FockBasis: (nmax+1)^sites exceeds the limit of " +
                            std::to_string(max_states) + " states");
    }
    total *= q;
  }
  if (total > max_states) {
    throw UnsupportedSize("FockBasis: basis exceeds the limit of " +
                          std::to_string(max_states) + " states");
  }
  size_ = total;
  covers_box_ = m == box_.size();
  if (covers_box_) {
    for (int i = 0; i < m; ++i) covers_box_ = covers_box_ && sites_[i] == i;
  }
}

int FockBasis::position_of(int site) const {
  if (site < 0 || site >= box_.size()) return -1;
  return position_[site];
}

int FockBasis::occupation_at_site(std::size_t index, int site) const {
  const int p = position_of(site);
  if (p < 0) throw InvalidArgument("FockBasis: site not in basis");
  return occupation(index, p);
}

int FockBasis::total_number(std::size_t index) const {
  int n = 0;
  const std::size_t q = static_cast<std::size_t>(nmax_) + 1;
  for (int i = 0; i < num_sites(); ++i) {
    n += static_cast<int>(index % q);
    index /= q;
  }
  return n;
}

OccupationState FockBasis::state(std::size_t index) const {
  if (index >= size_) throw InvalidArgument("FockBasis: index out of range");
  OccupationState s;
  s.occupations.resize(sites_.size());
  for (int i = 0; i < num_sites(); ++i) s.occupations[i] = occupation(index, i);
  return s;
}

std::size_t FockBasis::index_of(const OccupationState& s) const {
  if (s.occupations.size() != sites_.size()) {
    throw InvalidArgument("FockBasis: state has wrong length");
  }
  std::size_t idx = 0;
  for (int i = 0; i < num_sites(); ++i) {
    const int n = s.occupations[i];
    if (n < 0 || n > nmax_) throw InvalidArgument("FockBasis: occupation out of range");
    idx += static_cast<std::size_t>(n) * strides_[i];
  }
  return idx;
}

std::vector<OccupationState> FockBasis::states() const {
  std::vector<OccupationState> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(state(i));
  return out;
}

FockBasis enumerate_basis(const LatticeBox& box, int nmax, std::size_t max_states) {
  return FockBasis(box, nmax, max_states);
}

// ---------------------------------------------------------------------------

OperatorMatrix::OperatorMatrix(SparseMatrix m, bool hermitian)
    : m_(std::move(m)), hermitian_(hermitian) {
  if (m_.rows() != m_.cols()) throw InvalidArgument("OperatorMatrix: matrix is not square");
  m_.makeCompressed();
  if (hermitian_ && !is_hermitian(1e-12)) {
    throw InvalidArgument("OperatorMatrix: matrix flagged hermitian is not");
  }
}

OperatorMatrix::OperatorMatrix(const DenseMatrix& m, bool hermitian)
    : OperatorMatrix(SparseMatrix(m.sparseView(Complex(0.0), 0.0)), hermitian) {}

OperatorMatrix OperatorMatrix::zero(Eigen::Index dim) {
  return OperatorMatrix(SparseMatrix(dim, dim), true);
}

OperatorMatrix OperatorMatrix::identity(Eigen::Index dim) {
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return OperatorMatrix(std::move(m), true);
}

OperatorMatrix OperatorMatrix::diagonal(const Eigen::VectorXcd& d, bool hermitian) {
  const Eigen::Index n = d.size();
  std::vector<Triplet> t;
  t.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d[i] != Complex(0.0)) t.emplace_back(i, i, d[i]);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return OperatorMatrix(std::move(m), hermitian);
}

bool OperatorMatrix::is_hermitian(double tol) const {
  SparseMatrix diff = m_ - SparseMatrix(m_.adjoint());
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
      if (std::abs(it.value()) > tol) return false;
    }
  }
  return true;
}

bool OperatorMatrix::is_finite() const {
  for (int k = 0; k < m_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m_, k); it; ++it) {
      if (!std::isfinite(it.value().real()) || !std::isfinite(it.value().imag())) return false;
    }
  }
  return true;
}

double OperatorMatrix::max_abs() const {
  double best = 0.0;
  for (int k = 0; k < m_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m_, k); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

double OperatorMatrix::max_abs_diff(const OperatorMatrix& other) const {
  if (dim() != other.dim()) throw InvalidArgument("OperatorMatrix: dimension mismatch");
  return OperatorMatrix(SparseMatrix(m_ - other.m_)).max_abs();
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(SparseMatrix(m_.adjoint()), hermitian_);
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& o) const {
  if (dim() != o.dim()) throw InvalidArgument("OperatorMatrix: dimension mismatch");
  OperatorMatrix r;
  r.m_ = m_ + o.m_;
  r.hermitian_ = hermitian_ && o.hermitian_;
  return r;
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& o) const {
  if (dim() != o.dim()) throw InvalidArgument("OperatorMatrix: dimension mismatch");
  OperatorMatrix r;
  r.m_ = m_ - o.m_;
  r.hermitian_ = hermitian_ && o.hermitian_;
  return r;
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& o) const {
  if (dim() != o.dim()) throw InvalidArgument("OperatorMatrix: dimension mismatch");
  OperatorMatrix r;
  r.m_ = (m_ * o.m_).pruned();
  return r;
}

OperatorMatrix OperatorMatrix::scaled(Complex s) const {
  OperatorMatrix r;
  r.m_ = m_ * s;
  r.hermitian_ = hermitian_ && s.imag() == 0.0;
  return r;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& o) {
  *this = *this + o;
  return *this;
}

void OperatorMatrix::write_text(std::ostream& os) const {
  const auto prec = os.precision();
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "# dim " << dim() << " nnz " << m_.nonZeros() << '\n';
  std::vector<std::pair<std::pair<Eigen::Index, Eigen::Index>, Complex>> entries;
  for (int k = 0; k < m_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m_, k); it; ++it) {
      entries.push_back({{it.row(), it.col()}, it.value()});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [rc, v] : entries) {
    os << rc.first << ' ' << rc.second << ' ' << v.real() << ' ' << v.imag() << '\n';
  }
  os.precision(prec);
}

OperatorMatrix OperatorMatrix::read_text(std::istream& is) {
  std::string line;
  Eigen::Index dim = -1;
  std::vector<Triplet> t;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "dim") ls >> dim;
      continue;
    }
    Eigen::Index r, c;
    double re, im;
    if (!(ls >> r >> c >> re >> im)) throw InvalidArgument("OperatorMatrix: malformed line: " + line);
    t.emplace_back(r, c, Complex(re, im));
  }
  if (dim < 0) throw InvalidArgument("OperatorMatrix: missing dimension header");
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return OperatorMatrix(std::move(m));
}

// ---------------------------------------------------------------------------

OperatorMatrix site_operator(const FockBasis& basis, SiteOp kind, int site) {
  const int p = basis.position_of(site);
  if (p < 0) throw InvalidArgument("site_operator: site not in basis");
  const std::size_t stride = basis.stride(p);
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int occ = basis.occupation(i, p);
    const auto col = static_cast<Eigen::Index>(i);
    switch (kind) {
      case SiteOp::kCreate:
        if (occ < basis.nmax()) {
          t.emplace_back(static_cast<Eigen::Index>(i + stride), col, std::sqrt(occ + 1.0));
        }
        break;
      case SiteOp::kAnnihilate:
        if (occ > 0) t.emplace_back(static_cast<Eigen::Index>(i - stride), col, std::sqrt(double(occ)));
        break;
      case SiteOp::kNumber:
        if (occ > 0) t.emplace_back(col, col, double(occ));
        break;
    }
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return OperatorMatrix(std::move(m), kind == SiteOp::kNumber);
}

OperatorMatrix site_operator(const FockBasis& basis, SiteOp kind, const SiteCoord& x) {
  if (!basis.box().contains(x)) throw InvalidArgument("site_operator: site outside box");
  return site_operator(basis, kind, basis.box().index(x));
}

double operator_norm(const OperatorMatrix& m, Eigen::Index max_dim) {
  if (!m.is_finite()) throw InvalidArgument("operator_norm: non-finite entries");
  if (m.dim() == 0 || m.sparse().nonZeros() == 0) return 0.0;
  if (m.dim() > max_dim) {
    throw UnsupportedSize("operator_norm: dimension " + std::to_string(m.dim()) +
                          " exceeds dense limit " + std::to_string(max_dim));
  }
  const DenseMatrix d = m.dense();
  if (m.hermitian()) {
    return detail::hermitian_eigen(d, false).values.cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<DenseMatrix> svd(d);
  return svd.singularValues()(0);
}

OperatorMatrix total_number_operator(const FockBasis& basis) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) d[static_cast<Eigen::Index>(i)] = double(basis.total_number(i));
  return OperatorMatrix::diagonal(d, true);
}

OperatorMatrix occupation_projector(const FockBasis& basis, int site, int n) {
  const int p = basis.position_of(site);
  if (p < 0) throw InvalidArgument("occupation_projector: site not in basis");
  Eigen::VectorXcd d(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    d[static_cast<Eigen::Index>(i)] = basis.occupation(i, p) == n ? 1.0 : 0.0;
  }
  return OperatorMatrix::diagonal(d, true);
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b + b * a;
}

OperatorMatrix embed_block(const FockBasis& basis, std::span<const int> support,
                           const DenseMatrix& block, bool hermitian) {
  const int k = static_cast<int>(support.size());
  std::vector<int> pos(k);
  std::vector<std::size_t> local_stride(k);
  std::size_t local_dim = 1;
  const std::size_t q = static_cast<std::size_t>(basis.local_dim());
  for (int j = k - 1; j >= 0; --j) {
    pos[j] = basis.position_of(support[j]);
    if (pos[j] < 0) throw InvalidArgument("embed_block: support site not in basis");
    local_stride[j] = local_dim;
    local_dim *= q;
  }
  if (block.rows() != static_cast<Eigen::Index>(local_dim) || block.cols() != block.rows()) {
    throw InvalidArgument("embed_block: block dimension does not match the support");
  }
  std::vector<std::pair<Eigen::Index, Complex>> col_entries;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::size_t l = 0;
    std::size_t rest = i;
    for (int j = 0; j < k; ++j) {
      const std::size_t occ = static_cast<std::size_t>(basis.occupation(i, pos[j]));
      l += occ * local_stride[j];
      rest -= occ * basis.stride(pos[j]);
    }
    for (Eigen::Index lp = 0; lp < block.rows(); ++lp) {
      const Complex v = block(lp, static_cast<Eigen::Index>(l));
      if (v == Complex(0.0)) continue;
      std::size_t row = rest;
      std::size_t rem = static_cast<std::size_t>(lp);
      for (int j = 0; j < k; ++j) {
        row += (rem / local_stride[j]) * basis.stride(pos[j]);
        rem %= local_stride[j];
      }
      t.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i), v);
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return OperatorMatrix(std::move(m), hermitian);
}

OperatorMatrix translation_operator(const FockBasis& basis, int axis, int step) {
  const LatticeBox& box = basis.box();
  if (!basis.covers_box()) throw InvalidArgument("translation_operator: basis must cover the box");
  if (axis < 0 || axis >= box.dimension() || !box.periodic(axis)) {
    throw InvalidArgument("translation_operator: axis must be periodic");
  }
  std::vector<int> image(box.size());
  for (int s = 0; s < box.size(); ++s) {
    int y = s;
    const int L = box.dims()[axis];
    const int steps = ((step % L) + L) % L;
    for (int j = 0; j < steps; ++j) y = box.shifted(y, axis, +1);
    image[s] = y;
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::size_t j = 0;
    for (int s = 0; s < box.size(); ++s) {
      j += static_cast<std::size_t>(basis.occupation(i, s)) * basis.stride(image[s]);
    }
    t.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i), 1.0);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return OperatorMatrix(std::move(m));
}

OperatorMatrix gauge_unitary(const FockBasis& basis, double alpha) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    d[static_cast<Eigen::Index>(i)] = std::polar(1.0, alpha * basis.total_number(i));
  }
  return OperatorMatrix::diagonal(d);
}

}  // namespace bosonlab
