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

#ifndef BOSONLAB_SRC_HERMITIAN_EIGEN_HPP
#define BOSONLAB_SRC_HERMITIAN_EIGEN_HPP

#include <Eigen/Eigenvalues>

#include "bosonlab/errors.hpp"
#include "bosonlab/hilbert.hpp"

namespace bosonlab::detail {

/// Eigen-decomposition of a Hermitian matrix; real input uses the real solver.
struct HermitianEigen {
  Eigen::VectorXd values;
  DenseMatrix vectors;  // empty unless requested
};

inline HermitianEigen hermitian_eigen(const DenseMatrix& m, bool vectors) {
  const int options = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  HermitianEigen out;
  if (m.size() == 0 || m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), options);
    if (es.info() != Eigen::Success) throw DiagnosticError("eigensolver did not converge");
    out.values = es.eigenvalues();
    if (vectors) out.vectors = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m, options);
    if (es.info() != Eigen::Success) throw DiagnosticError("eigensolver did not converge");
    out.values = es.eigenvalues();
    if (vectors) out.vectors = es.eigenvectors();
  }
  return out;
}

}  // namespace bosonlab::detail

#endif  // BOSONLAB_SRC_HERMITIAN_EIGEN_HPP
