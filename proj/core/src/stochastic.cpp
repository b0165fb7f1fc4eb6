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

#include "bosonlab/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "bosonlab/errors.hpp"
#include "bosonlab/exactdiag.hpp"

namespace bosonlab {

std::vector<OccupationState> neighbor_configs(const OccupationState& n, const LatticeBox& box,
                                              int nmax) {
  if (static_cast<int>(n.occupations.size()) != box.size()) {
    throw InvalidArgument("neighbor_configs: state length does not match the box");
  }
  for (int v : n.occupations) {
    if (v < 0 || v > nmax) throw InvalidArgument("neighbor_configs: occupation out of range");
  }
  std::vector<OccupationState> out;
  for (int x = 0; x < box.size(); ++x) {
    if (n.occupations[x] == 0) continue;
    for (int y : box.neighbors(x)) {
      if (n.occupations[y] >= nmax) continue;
      OccupationState m = n;
      --m.occupations[x];
      ++m.occupations[y];
      out.push_back(std::move(m));
    }
  }
  return out;
}

ConfigGraph build_generator(const FockBasis& basis) {
  if (!basis.covers_box()) throw InvalidArgument("build_generator: basis must cover the box");
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::Triplet<double>> adj, gen;
  ConfigGraph g;
  g.degree.assign(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto nbrs = neighbor_configs(basis.state(i), basis.box(), basis.nmax());
    g.degree[i] = static_cast<int>(nbrs.size());
    for (const auto& m : nbrs) {
      const auto j = static_cast<Eigen::Index>(basis.index_of(m));
      adj.emplace_back(static_cast<Eigen::Index>(i), j, 1.0);
      gen.emplace_back(static_cast<Eigen::Index>(i), j, 1.0);
    }
    if (!nbrs.empty()) {
      gen.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i),
                       -static_cast<double>(nbrs.size()));
    }
  }
  g.adjacency.resize(n, n);
  g.adjacency.setFromTriplets(adj.begin(), adj.end());
  g.generator.resize(n, n);
  g.generator.setFromTriplets(gen.begin(), gen.end());
  return g;
}

double diagonal_energy(const FockBasis& basis, const InteractionSpec& spec, std::size_t index) {
  const int q = basis.local_dim();
  double e = 0.0;
  for (const auto& term : spec.terms) {
    Eigen::Index l = 0;
    for (int s : term.support) l = l * q + basis.occupation_at_site(index, s);
    for (Eigen::Index r = 0; r < term.block.rows(); ++r) {
      if (r != l && term.block(r, l) != Complex(0.0)) {
        throw InvalidArgument("diagonal_energy: term is not diagonal");
      }
    }
    e += term.block(l, l).real();
  }
  return e;
}

double fk_identity_check(const LatticeBox& box, const ModelParams& params,
                         const PotentialSpec& pot, FamilySet families, int nmax) {
  if (families.contains(Family::kQ) && params.hq != 0.0) {
    throw InvalidArgument("fk_identity_check: the Q term does not conserve particle number");
  }
  if (nmax != 1) {
    throw UnsupportedSize(
        "fk_identity_check: only hard-core bosons (nmax = 1) have unit hopping matrix elements");
  }
  const FockBasis basis(box, nmax);
  const Model m = build_interaction(box, basis, params, pot, families);
  const double log_z_ed = thermodynamics(m.hamiltonian, params.beta, box).log_z;

  const InteractionSpec diag_spec =
      build_interaction_terms(box, nmax, params, pot, families.without(Family::kT));
  const ConfigGraph g = build_generator(basis);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd k = Eigen::MatrixXd(g.adjacency) * (families.contains(Family::kT) ? params.t : 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) -= diagonal_energy(basis, diag_spec, static_cast<std::size_t>(i));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
  // Tr exp(beta K) = Tr exp(-beta (-K)).
  const double log_z_fk = log_partition(-es.eigenvalues(), params.beta);
  return std::abs(std::expm1(log_z_fk - log_z_ed));
}

DuhamelResult duhamel_series_Z(const Eigen::VectorXd& diagonal, const DenseMatrix& offdiag,
                               double beta, int m_max) {
  if (m_max < 0) throw InvalidArgument("duhamel_series_Z: m_max must be nonnegative");
  const Eigen::Index n = diagonal.size();
  if (offdiag.rows() != n || offdiag.cols() != n) {
    throw InvalidArgument("duhamel_series_Z: dimension mismatch");
  }
  const Eigen::Index blocks = m_max + 1;
  if (n * blocks > kDefaultDenseLimit) {
    throw UnsupportedSize("duhamel_series_Z: block matrix exceeds the dense limit");
  }
  // Shift D by its minimum so the exponential stays well scaled.
  const double shift = diagonal.minCoeff();
  DenseMatrix big = DenseMatrix::Zero(n * blocks, n * blocks);
  for (Eigen::Index b = 0; b < blocks; ++b) {
    for (Eigen::Index i = 0; i < n; ++i) big(b * n + i, b * n + i) = -beta * (diagonal[i] - shift);
    if (b + 1 < blocks) big.block(b * n, (b + 1) * n, n, n) = -beta * offdiag;
  }
  const DenseMatrix e = big.exp();
  DuhamelResult r;
  const double scale = std::exp(-beta * shift);
  double trace_d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) trace_d += std::exp(-beta * diagonal[i]);
  const double tnorm = operator_norm(OperatorMatrix(offdiag), kDefaultDenseLimit);
  double sum = 0.0;
  double power = 1.0;  // (beta ||T||)^{m+1} / (m+1)!
  for (Eigen::Index m = 0; m < blocks; ++m) {
    const double term = e.block(0, m * n, n, n).trace().real() * scale;
    sum += term;
    r.order_terms.push_back(term);
    r.partial_sums.push_back(sum);
    power *= beta * tnorm / static_cast<double>(m + 1);
    r.bounds.push_back(power * std::exp(beta * tnorm) * trace_d);
  }
  r.z = sum;
  r.bound = r.bounds.back();
  return r;
}

DuhamelResult duhamel_series_Z(const OperatorMatrix& h, double beta, int m_max) {
  const DenseMatrix d = h.dense();
  Eigen::VectorXd diag = d.diagonal().real();
  DenseMatrix off = d;
  off.diagonal().setZero();
  return duhamel_series_Z(diag, off, beta, m_max);
}

std::vector<int> cycle_type(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  std::vector<int> lengths;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      ++len;
      j = perm[j];
      if (j < 0 || j >= n) throw InvalidArgument("cycle_type: not a permutation");
    }
    if (j != i) throw InvalidArgument("cycle_type: not a permutation");
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::map<std::vector<int>, double> permutation_resolved_trace(const LatticeBox& box,
                                                              const ModelParams& params,
                                                              const PotentialSpec& pot,
                                                              int particles, FamilySet families) {
  if (families.contains(Family::kQ) && params.hq != 0.0) {
    throw InvalidArgument("permutation_resolved_trace: Q does not conserve particle number");
  }
  const int L = box.size();
  if (particles < 0 || particles > L) throw InvalidArgument("permutation_resolved_trace: bad N");
  if (particles > 8) throw UnsupportedSize("permutation_resolved_trace: at most 8 particles");
  const FockBasis basis(box, 1);
  const InteractionSpec diag_spec =
      build_interaction_terms(box, 1, params, pot, families.without(Family::kT));
  const double t = families.contains(Family::kT) ? params.t : 0.0;

  // Labelled states: ordered tuples of distinct sites.
  std::vector<std::vector<int>> states;
  std::map<std::vector<int>, int> index;
  std::vector<int> cur;
  std::vector<char> used(L, 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == particles) {
      index[cur] = static_cast<int>(states.size());
      states.push_back(cur);
      return;
    }
    for (int s = 0; s < L; ++s) {
      if (used[s]) continue;
      used[s] = 1;
      cur.push_back(s);
      self(self);
      cur.pop_back();
      used[s] = 0;
    }
  };
  rec(rec);
  const auto dim = static_cast<Eigen::Index>(states.size());
  if (dim > kDefaultDenseLimit) throw UnsupportedSize("permutation_resolved_trace: too many states");

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const auto& l = states[a];
    OccupationState occ;
    occ.occupations.assign(L, 0);
    for (int s : l) occ.occupations[s] = 1;
    h(a, a) = diagonal_energy(basis, diag_spec, basis.index_of(occ));
    for (int i = 0; i < particles; ++i) {
      for (int y : box.neighbors(l[i])) {
        if (occ.occupations[y]) continue;
        std::vector<int> m = l;
        m[i] = y;
        h(index.at(m), a) += -t;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  Eigen::VectorXd w(dim);
  for (Eigen::Index i = 0; i < dim; ++i) w[i] = std::exp(-params.beta * (ev[i] - lo));
  const Eigen::MatrixXd prop = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();

  std::map<std::vector<int>, double> out;
  std::vector<int> pi(particles);
  std::iota(pi.begin(), pi.end(), 0);
  double total = 0.0;
  do {
    double s = 0.0;
    for (Eigen::Index a = 0; a < dim; ++a) {
      std::vector<int> m(particles);
      for (int i = 0; i < particles; ++i) m[i] = states[a][pi[i]];
      s += prop(index.at(m), a);
    }
    out[cycle_type(pi)] += s;
    total += s;
  } while (std::next_permutation(pi.begin(), pi.end()));
  for (auto& [k, v] : out) v /= total;
  return out;
}

IdealGasResult ideal_gas_cycle_analysis(const LatticeBox& box, double beta, double t, double mu,
                                        int truncation) {
  if (!(beta > 0)) throw InvalidArgument("ideal_gas_cycle_analysis: beta must be positive");
  const int L = box.size();
  Eigen::MatrixXd t1 = Eigen::MatrixXd::Zero(L, L);
  for (int x = 0; x < L; ++x) {
    for (int y : box.neighbors(x)) t1(x, y) = -t;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t1, Eigen::EigenvaluesOnly);
  IdealGasResult r;
  r.fugacity = std::exp(beta * mu);
  // K = exp(-beta T1) has eigenvalues exp(-beta eps) (ascending order kept).
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    r.propagator_eigenvalues.push_back(std::exp(-beta * es.eigenvalues()[i]));
  }
  const double lam_max = r.propagator_eigenvalues.back();
  if (r.fugacity * lam_max >= 1.0) {
    std::ostringstream os;
    os << "ideal_gas_cycle_analysis: supercritical, exp(beta mu) * lambda_max = "
       << r.fugacity * lam_max << " >= 1";
    throw DomainError(os.str());
  }
  r.log_z_modes = 0.0;
  for (double lam : r.propagator_eigenvalues) r.log_z_modes -= std::log1p(-r.fugacity * lam);
  r.z_modes = std::exp(r.log_z_modes);

  auto trace_power = [&](int j) {
    double s = 0.0;
    for (double lam : r.propagator_eigenvalues) s += std::pow(lam, j);
    return s;
  };

  constexpr double kCertify = 1e-12;
  constexpr int kMaxTerms = 100000;
  // Canonical sums via N h_N = sum_j Tr(K^j) h_{N-j}, then sum_N z^N h_N.
  std::vector<double> p{0.0};
  std::vector<double> zh{1.0};  // z^N h_N
  double sum = 1.0;
  int n = 0;
  while (true) {
    if (truncation > 0 && n >= truncation) break;
    ++n;
    if (n > kMaxTerms) throw DiagnosticError("ideal_gas_cycle_analysis: no certified truncation");
    p.push_back(trace_power(n));
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += std::pow(r.fugacity, j) * p[j] * zh[n - j];
    zh.push_back(acc / n);
    sum += zh.back();
    if (truncation <= 0 && zh.back() < kCertify * sum) break;
  }
  r.truncation = n;
  r.z_permutation = sum;

  double cyc = 0.0, num = 0.0, den = 0.0;
  for (int j = 1; j <= kMaxTerms; ++j) {
    const double w = std::pow(r.fugacity, j) * trace_power(j) / j;
    r.cycle_weights.push_back(w);
    cyc += w;
    num += static_cast<double>(j) * j * w;
    den += static_cast<double>(j) * w;
    if (w < kCertify * cyc) break;
  }
  r.cycle_sum = cyc;
  r.mean_cycle_length = den > 0 ? num / den : 0.0;
  return r;
}

}  // namespace bosonlab
