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

#include "bosonlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bosonlab/errors.hpp"

namespace bosonlab {

namespace {

constexpr double kDistTol = 1e-9;

struct LocalOps {
  FockBasis basis;
  DenseMatrix create(int p) const { return site_operator(basis, SiteOp::kCreate, p).dense(); }
  DenseMatrix annihilate(int p) const {
    return site_operator(basis, SiteOp::kAnnihilate, p).dense();
  }
  DenseMatrix number(int p) const { return site_operator(basis, SiteOp::kNumber, p).dense(); }
};

LocalOps local_ops(int sites, int nmax) {
  return LocalOps{FockBasis(LatticeBox::open({sites}), nmax)};
}

}  // namespace

bool PotentialSpec::hard_core() const { return std::isinf(onsite) && onsite > 0; }

double PotentialSpec::at(double d) const {
  if (d < kDistTol) return onsite;
  if (d > cutoff + kDistTol) return 0.0;
  if (std::abs(d - 1.0) < kDistTol) return u1;
  if (std::abs(d - std::numbers::sqrt2) < kDistTol) return usqrt2;
  auto it = tail.lower_bound(d - kDistTol);
  if (it != tail.end() && std::abs(it->first - d) < kDistTol) return it->second;
  return 0.0;
}

void PotentialSpec::validate() const {
  if (std::isnan(onsite) || (std::isinf(onsite) && onsite < 0)) {
    throw InvalidArgument("potential: onsite must be a real number or +inf");
  }
  if (!std::isfinite(u1) || !std::isfinite(usqrt2)) {
    throw InvalidArgument("potential: U(1) and U(sqrt2) must be finite");
  }
  if (!std::isfinite(cutoff) || cutoff < 0) throw InvalidArgument("potential: invalid cutoff");
  for (const auto& [d, u] : tail) {
    if (d < 2.0 - kDistTol) throw InvalidArgument("potential: tail distances must be >= 2");
    if (d > cutoff + kDistTol) throw InvalidArgument("potential: tail distance beyond cutoff");
    if (!std::isfinite(u)) throw InvalidArgument("potential: tail entries must be finite");
  }
}

void ModelParams::validate() const {
  for (double v : {t, mu, h, alpha, hq, beta}) {
    if (!std::isfinite(v)) throw InvalidArgument("model parameters must be finite");
  }
  if (beta <= 0) throw InvalidArgument("beta must be positive");
  if (alpha < 0 || alpha >= 2 * std::numbers::pi) {
    throw InvalidArgument("alpha must lie in [0, 2pi)");
  }
}

const char* family_name(Family f) {
  switch (f) {
    case Family::kT: return "T";
    case Family::kV: return "V";
    case Family::kN: return "N";
    case Family::kP: return "P";
    case Family::kQ: return "Q";
  }
  return "?";
}

std::vector<InteractionTerm> InteractionSpec::grouped() const {
  std::vector<InteractionTerm> out;
  std::map<std::vector<int>, std::size_t> where;
  for (const auto& term : terms) {
    auto [it, inserted] = where.try_emplace(term.support, out.size());
    if (inserted) {
      out.push_back(term);
    } else {
      out[it->second].block += term.block;
    }
  }
  return out;
}

InteractionSpec build_interaction_terms(const LatticeBox& box, int nmax, const ModelParams& params,
                                        const PotentialSpec& pot, FamilySet families) {
  params.validate();
  pot.validate();
  if (pot.hard_core() && nmax != 1) {
    throw InvalidArgument("infinite onsite repulsion requires nmax = 1");
  }
  if (nmax < 1) throw InvalidArgument("nmax must be positive");

  InteractionSpec spec{box, nmax, {}};
  const LocalOps one = local_ops(1, nmax);
  const LocalOps two = local_ops(2, nmax);
  const DenseMatrix n1 = one.number(0);
  const int q = nmax + 1;

  if (families.contains(Family::kT) && params.t != 0.0) {
    const DenseMatrix hop = -params.t * (two.create(0) * two.annihilate(1) +
                                         two.create(1) * two.annihilate(0));
    for (int x = 0; x < box.size(); ++x) {
      for (int y : box.neighbors(x)) {
        if (y > x) spec.terms.push_back({{x, y}, hop, Family::kT});
      }
    }
  }

  if (families.contains(Family::kV)) {
    if (!pot.hard_core() && pot.onsite != 0.0 && nmax >= 2) {
      DenseMatrix b = DenseMatrix::Zero(q, q);
      for (int n = 0; n <= nmax; ++n) b(n, n) = 0.5 * pot.onsite * n * (n - 1);
      for (int x = 0; x < box.size(); ++x) spec.terms.push_back({{x}, b, Family::kV});
    }
    const DenseMatrix nn = two.number(0) * two.number(1);
    for (int x = 0; x < box.size(); ++x) {
      for (int y = x + 1; y < box.size(); ++y) {
        const double d = box.distance(x, y);
        if (d > pot.cutoff + kDistTol) continue;
        const double u = pot.at(d);
        if (u != 0.0) spec.terms.push_back({{x, y}, u * nn, Family::kV});
      }
    }
  }

  if (families.contains(Family::kN) && params.mu != 0.0) {
    for (int x = 0; x < box.size(); ++x) spec.terms.push_back({{x}, -params.mu * n1, Family::kN});
  }

  if (families.contains(Family::kP) && params.h != 0.0) {
    for (int x = 0; x < box.size(); ++x) {
      spec.terms.push_back({{x}, -params.h * box.staggered_sign(x) * n1, Family::kP});
    }
  }

  if (families.contains(Family::kQ) && params.hq != 0.0) {
    const Complex ph = std::polar(1.0, params.alpha);
    const DenseMatrix b = params.hq * (ph * one.create(0) + std::conj(ph) * one.annihilate(0));
    for (int x = 0; x < box.size(); ++x) spec.terms.push_back({{x}, b, Family::kQ});
  }
  return spec;
}

OperatorMatrix assemble_hamiltonian(const FockBasis& basis, const InteractionSpec& spec) {
  if (basis.nmax() != spec.nmax) throw InvalidArgument("assemble_hamiltonian: nmax mismatch");
  if (!(basis.box() == spec.box)) throw InvalidArgument("assemble_hamiltonian: box mismatch");
  const auto n = static_cast<Eigen::Index>(basis.size());
  SparseMatrix acc(n, n);
  for (const auto& term : spec.terms) {
    bool inside = true;
    for (int s : term.support) inside = inside && basis.position_of(s) >= 0;
    if (!inside) continue;
    acc += embed_block(basis, term.support, term.block).sparse();
  }
  acc.prune(Complex(0.0), 0.0);
  return OperatorMatrix(std::move(acc), true);
}

Model build_interaction(const LatticeBox& box, const FockBasis& basis, const ModelParams& params,
                        const PotentialSpec& pot, FamilySet families) {
  InteractionSpec spec = build_interaction_terms(box, basis.nmax(), params, pot, families);
  OperatorMatrix h = assemble_hamiltonian(basis, spec);
  return Model{std::move(spec), std::move(h)};
}

double interaction_norm(const InteractionSpec& spec, const NormSettings& settings) {
  if (settings.r < 0 || !std::isfinite(settings.r)) {
    throw InvalidArgument("interaction_norm: r must be finite and nonnegative");
  }
  std::vector<double> per_site(spec.box.size(), 0.0);
  for (const auto& term : spec.grouped()) {
    if (settings.mode == NormMode::kStar && term.support.size() < 2) continue;
    const double norm = operator_norm(OperatorMatrix(term.block, true));
    if (norm == 0.0) continue;
    const int span = connected_span_size(spec.box, term.support);
    const double w = norm * std::exp(settings.r * span);
    for (int x : term.support) per_site[x] += w;
  }
  return per_site.empty() ? 0.0 : *std::max_element(per_site.begin(), per_site.end());
}

double tail_weight(const PotentialSpec& pot, double r, int dimension) {
  if (dimension < 1) throw InvalidArgument("tail_weight: dimension must be positive");
  if (!std::isfinite(pot.cutoff)) throw InvalidArgument("tail_weight: cutoff must be finite");
  if (pot.tail.empty()) return 0.0;
  const int reach = static_cast<int>(std::floor(pot.cutoff + kDistTol));
  std::vector<int> y(dimension, -reach);
  double total = 0.0;
  while (true) {
    long sq = 0;
    for (int c : y) sq += static_cast<long>(c) * c;
    const double d = std::sqrt(static_cast<double>(sq));
    if (d >= 2.0 - kDistTol && d <= pot.cutoff + kDistTol) {
      total += std::abs(pot.at(d)) * std::exp(r * d);
    }
    int a = 0;
    while (a < dimension && y[a] == reach) y[a++] = -reach;
    if (a == dimension) break;
    ++y[a];
  }
  return total;
}

double classical_energy(const LatticeBox& box, const std::vector<int>& config, double mu, double h,
                        const PotentialSpec& pot) {
  if (box.dimension() != 2) {
    throw DomainError("classical_energy: the square decomposition requires d = 2");
  }
  if (static_cast<int>(config.size()) != box.size()) {
    throw InvalidArgument("classical_energy: configuration size does not match the box");
  }
  for (int v : config) {
    if (v != 0 && v != 1) throw InvalidArgument("classical_energy: configuration must be 0/1");
  }
  const double nn_weight = pot.u1 / 2.0;  // U(1) / (2(d-1))
  double e = 0.0;
  for (int x = 0; x < box.size(); ++x) {
    const int a = x;
    const int b = box.shifted(x, 0, 1);
    const int c = box.shifted(x, 1, 1);
    if (b < 0 || c < 0) continue;
    const int d = box.shifted(b, 1, 1);
    const int na = config[a], nb = config[b], nc = config[c], nd = config[d];
    e += nn_weight * (na * nb + na * nc + nb * nd + nc * nd);
    e += pot.usqrt2 * (na * nd + nb * nc);
    for (int s : {a, b, c, d}) {
      e -= 0.25 * (mu * config[s] + h * box.staggered_sign(s) * config[s]);
    }
  }
  return e;
}

const char* ref_config_name(RefConfig c) {
  switch (c) {
    case RefConfig::kEmpty: return "empty";
    case RefConfig::kChessA: return "chessboard-A";
    case RefConfig::kChessB: return "chessboard-B";
    case RefConfig::kFull: return "full";
  }
  return "?";
}

std::vector<int> reference_configuration(const LatticeBox& box, RefConfig c) {
  std::vector<int> n(box.size(), 0);
  for (int x = 0; x < box.size(); ++x) {
    switch (c) {
      case RefConfig::kEmpty: n[x] = 0; break;
      case RefConfig::kChessA: n[x] = box.staggered_sign(x) > 0 ? 1 : 0; break;
      case RefConfig::kChessB: n[x] = box.staggered_sign(x) < 0 ? 1 : 0; break;
      case RefConfig::kFull: n[x] = 1; break;
    }
  }
  return n;
}

ReferenceEnergies reference_energies(double mu, double h, double u1, double usqrt2,
                                     double tie_tolerance) {
  ReferenceEnergies r;
  r.energy = {0.0, usqrt2 - mu / 2 - h / 2, usqrt2 - mu / 2 + h / 2, 2 * u1 + 2 * usqrt2 - mu};
  r.minimum = *std::min_element(r.energy.begin(), r.energy.end());
  for (int i = 0; i < 4; ++i) {
    if (r.energy[i] <= r.minimum + tie_tolerance) r.argmin.push_back(static_cast<RefConfig>(i));
  }
  return r;
}

ClassicalGround classical_ground_bruteforce(const LatticeBox& box, double mu, double h,
                                            const PotentialSpec& pot, int max_sites,
                                            double tie_tolerance) {
  if (box.size() > max_sites || box.size() > 30) {
    throw UnsupportedSize("classical_ground_bruteforce: too many sites for enumeration");
  }
  const int n = box.size();
  const unsigned long total = 1ul << n;
  std::vector<double> energies(total);
  std::vector<int> config(n);
  double best = std::numeric_limits<double>::infinity();
  for (unsigned long m = 0; m < total; ++m) {
    for (int s = 0; s < n; ++s) config[s] = (m >> (n - 1 - s)) & 1u;
    energies[m] = classical_energy(box, config, mu, h, pot);
    best = std::min(best, energies[m]);
  }
  ClassicalGround g;
  g.energy = best;
  for (unsigned long m = 0; m < total; ++m) {
    if (energies[m] <= best + tie_tolerance) {
      for (int s = 0; s < n; ++s) config[s] = (m >> (n - 1 - s)) & 1u;
      g.minimizers.push_back(config);
    }
  }
  return g;
}

}  // namespace bosonlab
