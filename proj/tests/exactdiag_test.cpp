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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "bosonlab/errors.hpp"

namespace bosonlab {
namespace {

PotentialSpec hard_core() {
  PotentialSpec p;
  p.onsite = std::numeric_limits<double>::infinity();
  return p;
}

OperatorMatrix hamiltonian(const LatticeBox& box, int nmax, const ModelParams& p,
                           const PotentialSpec& pot, FamilySet f = FamilySet::standard()) {
  const FockBasis b(box, nmax);
  return build_interaction(box, b, p, pot, f).hamiltonian;
}

TEST(Thermodynamics, OneSiteTwoLevels) {
  const auto box = LatticeBox::open({1});
  const auto r = thermodynamics(hamiltonian(box, 1, ModelParams{}, hard_core()), 1.0, box);
  EXPECT_NEAR(r.Z, 2.0, 1e-14);
  EXPECT_NEAR(r.f, -std::log(2.0), 1e-14);
}

TEST(Thermodynamics, TwoSiteHopping) {
  const auto box = LatticeBox::open({2});
  ModelParams p;
  p.t = 1.0;
  const auto r = thermodynamics(hamiltonian(box, 1, p, hard_core()), 1.0, box);
  EXPECT_NEAR(r.Z, 2 + std::exp(1.0) + std::exp(-1.0), 1e-12);
}

TEST(Thermodynamics, LowTemperatureApproachesGroundEnergy) {
  const auto box = LatticeBox::open({2});
  ModelParams p;
  p.t = 1.0;
  p.mu = 0.3;
  const auto h = hamiltonian(box, 1, p, hard_core());
  const Eigen::VectorXd ev = diagonalize(h).eigenvalues;
  const double gap = ev(1) - ev(0);
  for (double beta : {5.0, 10.0, 20.0}) {
    const double f = thermodynamics(ev, beta, 2).f;
    EXPECT_LT(std::abs(f - ev(0) / 2), std::exp(-beta * gap)) << beta;
  }
}

TEST(Thermodynamics, RejectsOversizeAndBadBeta) {
  EXPECT_THROW(thermodynamics(Eigen::VectorXd::Zero(2), 0.0, 1), InvalidArgument);
  EXPECT_THROW(diagonalize(OperatorMatrix::identity(8), 4), UnsupportedSize);
}

TEST(GibbsExpectation, Examples) {
  const auto one = LatticeBox::open({1});
  const FockBasis b1(one, 1);
  const auto h1 = hamiltonian(one, 1, ModelParams{}, hard_core());
  ModelParams unit_mu;
  unit_mu.mu = -1.0;  // K = N
  const auto n_spec = build_interaction_terms(one, 1, unit_mu, hard_core(), {Family::kN});
  EXPECT_NEAR(gibbs_expectation(h1, 3.7, n_spec, b1), 0.5, 1e-14);

  // Staggered order of a chessboard-favouring classical model.
  const auto box = LatticeBox::torus({2, 2});
  const FockBasis b(box, 1);
  PotentialSpec pot = hard_core();
  pot.u1 = 1.0;
  ModelParams unit_h;
  unit_h.h = 1.0;
  const auto p_spec = build_interaction_terms(box, 1, unit_h, pot, {Family::kP});
  for (double h : {0.2, -0.2}) {
    ModelParams p;
    p.mu = 1.0;
    p.h = h;
    const double v = gibbs_expectation(hamiltonian(box, 1, p, pot), 30.0, p_spec, b);
    EXPECT_NEAR(v, h > 0 ? -0.5 : 0.5, 1e-6);
  }
}

TEST(GibbsExpectation, EnergyMatchesBetaDerivative) {
  const auto box = LatticeBox::torus({2, 2});
  const FockBasis b(box, 1);
  ModelParams p;
  p.t = 0.7;
  p.mu = 0.2;
  p.h = 0.1;
  PotentialSpec pot = hard_core();
  pot.u1 = 0.4;
  const Model m = build_interaction(box, b, p, pot);
  const double beta = 1.3;
  const double e = gibbs_expectation(m.hamiltonian, beta, m.interaction, b);
  const double db = 1e-5;
  const double lp = thermodynamics(m.hamiltonian, beta + db, box).log_z;
  const double lm = thermodynamics(m.hamiltonian, beta - db, box).log_z;
  EXPECT_NEAR(e, -(lp - lm) / (2 * db) / box.size(), 1e-6);
}

TEST(Odlro, Examples) {
  const auto box = LatticeBox::open({2});
  const FockBasis b(box, 1);
  ModelParams p;
  p.t = 1.0;
  const auto h = hamiltonian(box, 1, p, hard_core());
  const double z = 2 + std::exp(1.0) + std::exp(-1.0);
  const Complex g = odlro_correlator(h, 1.0, b, 0, 1);
  EXPECT_NEAR(g.real(), std::sinh(1.0) / z, 1e-12);
  EXPECT_NEAR(g.imag(), 0.0, 1e-14);

  ModelParams diag;
  diag.mu = 0.4;
  EXPECT_NEAR(std::abs(odlro_correlator(hamiltonian(box, 1, diag, hard_core()), 1.0, b, 0, 1)),
              0.0, 1e-15);
}

TEST(Odlro, HermitianPair) {
  const auto box = LatticeBox::torus({2, 2});
  const FockBasis b(box, 1);
  ModelParams p;
  p.t = 0.6;
  p.hq = 0.2;
  p.alpha = 0.9;
  const GibbsEnsemble ens(hamiltonian(box, 1, p, PotentialSpec{}, FamilySet::all()), 1.1);
  // nmax = 1 without a hard core still means a two-state site.
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      const Complex a = odlro_correlator(ens, b, x, y);
      const Complex c = odlro_correlator(ens, b, y, x);
      EXPECT_NEAR(std::abs(a - std::conj(c)), 0.0, 1e-13);
    }
  }
}

TEST(Density, OneSiteLogistic) {
  const auto box = LatticeBox::open({1});
  const auto r = density_and_compressibility(box, 1, ModelParams{}, hard_core());
  EXPECT_NEAR(r.rho, 0.5, 1e-14);
  EXPECT_NEAR(r.kappa, 0.25, 1e-7);
}

TEST(Density, Saturation) {
  const auto box = LatticeBox::open({2});
  ModelParams p;
  p.t = 0.5;
  p.mu = 40.0;
  const auto r = density_and_compressibility(box, 1, p, hard_core());
  EXPECT_NEAR(r.rho, 1.0, 1e-12);
  EXPECT_NEAR(r.kappa, 0.0, 1e-9);
}

TEST(Density, ClassicalPlateauIsIncompressible) {
  // Diagonal model on the 2x2 torus: half filling wins for 0 < mu < 2.
  const auto box = LatticeBox::torus({2, 2});
  PotentialSpec pot = hard_core();
  pot.u1 = 1.0;
  ModelParams p;
  p.mu = 1.0;
  p.beta = 12.0;
  const auto r = density_and_compressibility(box, 1, p, pot);

  // Independent enumeration of the 16 classical configurations.
  double z = 0, n1 = 0, n2 = 0;
  for (int m = 0; m < 16; ++m) {
    const int n = __builtin_popcount(m);
    int bonds = 0;
    for (int x = 0; x < 4; ++x) {
      for (int y : box.neighbors(x)) {
        if (y > x && ((m >> x) & 1) && ((m >> y) & 1)) ++bonds;
      }
    }
    const double w = std::exp(-p.beta * (bonds - p.mu * n));
    z += w;
    n1 += w * n;
    n2 += w * n * n;
  }
  const double mean = n1 / z;
  const double var = n2 / z - mean * mean;
  EXPECT_NEAR(r.rho, mean / 4, 1e-12);
  EXPECT_NEAR(r.kappa, p.beta * var / 4, 1e-7);
  EXPECT_LT(r.kappa, std::exp(-p.beta * 1.0 / 2));
}

TEST(SymmetryResidual, TranslationAndGauge) {
  const auto ring = LatticeBox::torus({4});
  const FockBasis b(ring, 2);
  ModelParams p;
  p.t = 0.8;
  p.mu = 0.3;
  PotentialSpec pot;
  pot.onsite = 1.5;
  pot.u1 = 0.4;
  const auto h = build_interaction(ring, b, p, pot).hamiltonian;
  EXPECT_LT(symmetry_residual(h, translation_operator(b, 0)), 1e-10);
  EXPECT_LT(symmetry_residual(h, gauge_unitary(b, std::numbers::pi / 2)), 1e-10);
}

TEST(SymmetryResidual, GaugeDetectsQ) {
  for (const auto& box : {LatticeBox::open({1}), LatticeBox::torus({2, 2})}) {
    const FockBasis b(box, 1);
    ModelParams p;
    p.hq = 0.1;
    p.alpha = 0.3;
    const auto h = build_interaction(box, b, p, hard_core(), FamilySet::all()).hamiltonian;
    const double theta = std::numbers::pi / 2;
    const double expected = box.size() * 2 * std::sin(theta / 2) * p.hq;
    EXPECT_NEAR(symmetry_residual(h, gauge_unitary(b, theta)), expected, 1e-12);
  }
}

TEST(SpinEquivalence, Examples) {
  for (const auto& box : {LatticeBox::open({2}), LatticeBox::torus({2, 2})}) {
    const auto r = spin_xy_equivalence(box, 1.0);
    EXPECT_LT(r.spectral_distance, 1e-10);
    EXPECT_LT(r.free_energy_difference, 1e-12);
    EXPECT_GT(spin_xy_equivalence(box, 1.0, 1.0).spectral_distance, 0.4);
  }
}

TEST(SectorThermodynamics, MatchesFullDiagonalization) {
  struct Case {
    LatticeBox box;
    int nmax;
  };
  std::vector<Case> cases{{LatticeBox::torus({2, 3}), 1},
                          {LatticeBox::torus({4}), 2},
                          {LatticeBox({2, 3}, {true, false}), 1}};
  for (const auto& c : cases) {
    ModelParams p;
    p.t = 0.6;
    p.mu = 0.35;
    p.beta = 1.7;
    PotentialSpec pot = c.nmax == 1 ? hard_core() : PotentialSpec{};
    pot.u1 = 0.5;
    pot.usqrt2 = -0.2;
    if (c.nmax == 2) pot.onsite = 1.3;
    const auto full = thermodynamics(hamiltonian(c.box, c.nmax, p, pot), p.beta, c.box);
    const auto sec = sector_thermodynamics(c.box, c.nmax, p, pot);
    EXPECT_NEAR(sec.log_z, full.log_z, 1e-10) << c.box.describe();
    EXPECT_NEAR(*sec.rho, density_and_compressibility(c.box, c.nmax, p, pot).rho, 1e-10);
  }
}

// Properties.

TEST(ExactDiagProperty, EigenvalueTraceMatchesMatrixExponential) {
  const auto box = LatticeBox::torus({2, 2});
  ModelParams p;
  p.t = 0.5;
  p.mu = 0.2;
  p.h = -0.3;
  p.hq = 0.2;
  p.alpha = 2.0;
  PotentialSpec pot;
  pot.onsite = 0.8;
  pot.u1 = 0.3;
  const auto h2 = hamiltonian(box, 1, p, pot, FamilySet::all());
  const DenseMatrix e2 = (-0.9 * h2.dense()).exp();
  EXPECT_NEAR(thermodynamics(h2, 0.9, box).Z / e2.trace().real(), 1.0, 1e-9);
  const auto chain = LatticeBox::open({4});
  const auto h = hamiltonian(chain, 3, p, pot, FamilySet::all());
  const DenseMatrix e = (-0.9 * h.dense()).exp();
  EXPECT_NEAR(thermodynamics(h, 0.9, chain).Z / e.trace().real(), 1.0, 1e-9);
}

TEST(ExactDiagProperty, FreeEnergyIsConcaveAndDensityIsItsSlope) {
  const auto box = LatticeBox::torus({2, 2});
  const FockBasis b(box, 1);
  PotentialSpec pot = hard_core();
  pot.u1 = 0.6;
  std::vector<double> f;
  const double step = 0.05;
  for (int k = 0; k <= 40; ++k) {
    ModelParams p;
    p.t = 0.3;
    p.beta = 2.0;
    p.mu = -1.0 + k * step;
    f.push_back(thermodynamics(hamiltonian(box, 1, p, pot), p.beta, box).f);
  }
  for (std::size_t k = 1; k + 1 < f.size(); ++k) {
    EXPECT_GE(-(f[k + 1] - 2 * f[k] + f[k - 1]), -1e-8);
  }
  ModelParams p;
  p.t = 0.3;
  p.beta = 2.0;
  p.mu = 0.25;
  const double dmu = 1e-4;
  auto f_at = [&](double mu) {
    ModelParams q = p;
    q.mu = mu;
    return thermodynamics(hamiltonian(box, 1, q, pot), q.beta, box).f;
  };
  const double slope = -(f_at(p.mu + dmu) - f_at(p.mu - dmu)) / (2 * dmu);
  ModelParams unit;
  unit.mu = -1.0;
  const auto n_spec = build_interaction_terms(box, 1, unit, pot, {Family::kN});
  EXPECT_NEAR(slope, gibbs_expectation(hamiltonian(box, 1, p, pot), p.beta, n_spec, b), 1e-6);
}

TEST(ExactDiagProperty, OneBodyDensityMatrixIsPositive) {
  const auto box = LatticeBox::torus({2, 2});
  const FockBasis b(box, 2);
  ModelParams p;
  p.t = 0.9;
  p.mu = 0.4;
  p.hq = 0.15;
  p.alpha = 1.0;
  PotentialSpec pot;
  pot.onsite = 2.0;
  const GibbsEnsemble ens(hamiltonian(box, 2, p, pot, FamilySet::all()), 1.2);
  const DenseMatrix g = odlro_matrix(ens, b);
  EXPECT_LT((g - g.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
}

}  // namespace
}  // namespace bosonlab
