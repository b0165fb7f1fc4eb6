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

#include "bosonlab/exactdiag.hpp"

#include <cmath>
#include <limits>

#include "bosonlab/errors.hpp"
#include "hermitian_eigen.hpp"

namespace bosonlab {

namespace {

void require_hermitian(const OperatorMatrix& h) {
  if (!h.is_hermitian(1e-12)) throw InvalidArgument("Hamiltonian is not hermitian");
}

void require_dim(Eigen::Index n, Eigen::Index max_dim) {
  if (n > max_dim) {
    throw UnsupportedSize("dense diagonalization of dimension " + std::to_string(n) +
                          " exceeds the limit " + std::to_string(max_dim));
  }
}

}  // namespace

SpectrumResult diagonalize(const OperatorMatrix& h, Eigen::Index max_dim) {
  require_hermitian(h);
  require_dim(h.dim(), max_dim);
  auto es = detail::hermitian_eigen(h.dense(), true);
  return SpectrumResult{std::move(es.values), std::move(es.vectors)};
}

double log_partition(const Eigen::VectorXd& eigenvalues, double beta) {
  if (eigenvalues.size() == 0) throw InvalidArgument("log_partition: empty spectrum");
  const double lo = eigenvalues.minCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    s += std::exp(-beta * (eigenvalues[i] - lo));
  }
  return -beta * lo + std::log(s);
}

ThermoResult thermodynamics(const Eigen::VectorXd& eigenvalues, double beta, int num_sites) {
  if (!(beta > 0)) throw InvalidArgument("thermodynamics: beta must be positive");
  if (num_sites <= 0) throw InvalidArgument("thermodynamics: empty box");
  ThermoResult r;
  r.beta = beta;
  r.log_z = log_partition(eigenvalues, beta);
  r.Z = std::exp(r.log_z);
  r.f = -r.log_z / (beta * num_sites);
  return r;
}

ThermoResult thermodynamics(const OperatorMatrix& h, double beta, const LatticeBox& box) {
  require_hermitian(h);
  require_dim(h.dim(), kDefaultDenseLimit);
  return thermodynamics(detail::hermitian_eigen(h.dense(), false).values, beta, box.size());
}

GibbsEnsemble::GibbsEnsemble(const OperatorMatrix& h, double beta, Eigen::Index max_dim)
    : beta_(beta), log_z_(0.0), spectrum_(diagonalize(h, max_dim)) {
  if (!(beta > 0)) throw InvalidArgument("GibbsEnsemble: beta must be positive");
  const auto& ev = spectrum_.eigenvalues;
  log_z_ = log_partition(ev, beta);
  Eigen::VectorXd p(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) p[i] = std::exp(-beta * ev[i] - log_z_);
  const DenseMatrix& v = spectrum_.eigenvectors;
  rho_ = v * p.cast<Complex>().asDiagonal() * v.adjoint();
}

Complex GibbsEnsemble::expectation(const OperatorMatrix& k) const {
  if (k.dim() != rho_.rows()) throw InvalidArgument("expectation: dimension mismatch");
  Complex s = 0.0;
  const SparseMatrix& m = k.sparse();
  for (int j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      s += it.value() * rho_(it.col(), it.row());
    }
  }
  return s;
}

double GibbsEnsemble::real_expectation(const OperatorMatrix& k, double imag_tol) const {
  const Complex v = expectation(k);
  if (std::abs(v.imag()) > imag_tol) {
    throw DiagnosticError("expectation of a hermitian observable has imaginary part " +
                          std::to_string(v.imag()));
  }
  return v.real();
}

double gibbs_expectation(const GibbsEnsemble& ens, const InteractionSpec& k,
                         const FockBasis& basis) {
  const OperatorMatrix op = assemble_hamiltonian(basis, k);
  return ens.real_expectation(op) / basis.box().size();
}

double gibbs_expectation(const OperatorMatrix& h, double beta, const InteractionSpec& k,
                         const FockBasis& basis) {
  if (h.dim() != static_cast<Eigen::Index>(basis.size())) {
    throw InvalidArgument("gibbs_expectation: dimension mismatch");
  }
  return gibbs_expectation(GibbsEnsemble(h, beta), k, basis);
}

Complex odlro_correlator(const GibbsEnsemble& ens, const FockBasis& basis, int x, int y) {
  const OperatorMatrix op =
      site_operator(basis, SiteOp::kCreate, x) * site_operator(basis, SiteOp::kAnnihilate, y);
  return ens.expectation(op);
}

Complex odlro_correlator(const OperatorMatrix& h, double beta, const FockBasis& basis, int x,
                         int y) {
  return odlro_correlator(GibbsEnsemble(h, beta), basis, x, y);
}

DenseMatrix odlro_matrix(const GibbsEnsemble& ens, const FockBasis& basis) {
  const int n = basis.num_sites();
  std::vector<OperatorMatrix> cdag, c;
  for (int p = 0; p < n; ++p) {
    cdag.push_back(site_operator(basis, SiteOp::kCreate, basis.sites()[p]));
    c.push_back(site_operator(basis, SiteOp::kAnnihilate, basis.sites()[p]));
  }
  DenseMatrix g(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) g(a, b) = ens.expectation(cdag[a] * c[b]);
  }
  return g;
}

DensityResult density_and_compressibility(const LatticeBox& box, int nmax,
                                          const ModelParams& params, const PotentialSpec& pot,
                                          FamilySet families, double dmu) {
  if (!(dmu > 0)) throw InvalidArgument("density_and_compressibility: dmu must be positive");
  const FockBasis basis(box, nmax);
  const OperatorMatrix ntot = total_number_operator(basis);
  const FamilySet fam = families.with(Family::kN);
  auto rho_at = [&](double mu) {
    ModelParams p = params;
    p.mu = mu;
    const Model m = build_interaction(box, basis, p, pot, fam);
    return GibbsEnsemble(m.hamiltonian, p.beta).real_expectation(ntot) / box.size();
  };
  DensityResult r;
  r.rho = rho_at(params.mu);
  r.kappa = (rho_at(params.mu + dmu) - rho_at(params.mu - dmu)) / (2 * dmu);
  return r;
}

double symmetry_residual(const OperatorMatrix& h, const OperatorMatrix& u,
                         const OperatorMatrix* h_image) {
  if (u.dim() != h.dim()) throw InvalidArgument("symmetry_residual: dimension mismatch");
  const OperatorMatrix udag = u.adjoint();
  if ((udag * u).max_abs_diff(OperatorMatrix::identity(u.dim())) > 1e-10) {
    throw InvalidArgument("symmetry_residual: U is not unitary");
  }
  const OperatorMatrix& target = h_image ? *h_image : h;
  if (target.dim() != h.dim()) throw InvalidArgument("symmetry_residual: dimension mismatch");
  const OperatorMatrix diff = u * h * udag - target;
  const bool herm = diff.is_hermitian(1e-12);
  return operator_norm(OperatorMatrix(diff.sparse(), herm));
}

OperatorMatrix xy_model_hamiltonian(const LatticeBox& box) {
  const FockBasis basis(box, 1);
  // Local basis order (n = 0, n = 1) = (down, up).
  DenseMatrix s1(2, 2), s2(2, 2);
  s1 << 0.0, 0.5, 0.5, 0.0;
  s2 << Complex(0.0), Complex(0.0, 0.5), Complex(0.0, -0.5), Complex(0.0);
  std::vector<OperatorMatrix> sx, sy;
  for (int x = 0; x < box.size(); ++x) {
    const int site[1] = {x};
    sx.push_back(embed_block(basis, site, s1));
    sy.push_back(embed_block(basis, site, s2));
  }
  OperatorMatrix h = OperatorMatrix::zero(static_cast<Eigen::Index>(basis.size()));
  for (int x = 0; x < box.size(); ++x) {
    for (int y : box.neighbors(x)) {
      if (y < x) continue;
      h = h - (sx[x] * sx[y] + sy[x] * sy[y]);
    }
  }
  return OperatorMatrix(h.sparse(), true);
}

SpinEquivalence spin_xy_equivalence(const LatticeBox& box, double beta, double hopping,
                                    int nmax) {
  if (nmax != 1) throw InvalidArgument("spin_xy_equivalence: requires nmax = 1");
  const OperatorMatrix hxy = xy_model_hamiltonian(box);
  const FockBasis basis(box, 1);
  ModelParams p;
  p.t = hopping;
  p.beta = beta;
  PotentialSpec pot;
  pot.onsite = std::numeric_limits<double>::infinity();
  const Model hop = build_interaction(box, basis, p, pot, FamilySet{Family::kT});

  const Eigen::VectorXd a = diagonalize(hxy).eigenvalues;
  const Eigen::VectorXd b = diagonalize(hop.hamiltonian).eigenvalues;
  SpinEquivalence r;
  r.spectral_distance = (a - b).cwiseAbs().maxCoeff();
  r.free_energy_difference = std::abs(thermodynamics(a, beta, box.size()).f -
                                      thermodynamics(b, beta, box.size()).f);
  return r;
}

}  // namespace bosonlab
