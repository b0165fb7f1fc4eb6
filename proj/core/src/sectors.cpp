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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>

#include "bosonlab/errors.hpp"
#include "bosonlab/exactdiag.hpp"
#include "hermitian_eigen.hpp"

namespace bosonlab {

namespace {

// A local term prepared for applying to single basis states.
struct PreparedTerm {
  std::vector<int> sites;
  std::vector<std::size_t> local_stride;
  // column l -> nonzero (row, value)
  std::vector<std::vector<std::pair<std::size_t, Complex>>> columns;
};

std::vector<PreparedTerm> prepare(const FockBasis& basis, const InteractionSpec& spec) {
  std::vector<PreparedTerm> out;
  const std::size_t q = static_cast<std::size_t>(basis.local_dim());
  for (const auto& t : spec.grouped()) {
    PreparedTerm p;
    p.sites = t.support;
    const int k = static_cast<int>(t.support.size());
    p.local_stride.assign(k, 1);
    for (int j = k - 2; j >= 0; --j) p.local_stride[j] = p.local_stride[j + 1] * q;
    p.columns.resize(t.block.cols());
    for (Eigen::Index c = 0; c < t.block.cols(); ++c) {
      for (Eigen::Index r = 0; r < t.block.rows(); ++r) {
        if (t.block(r, c) != Complex(0.0)) {
          p.columns[c].emplace_back(static_cast<std::size_t>(r), t.block(r, c));
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

// H|i> as a list of (index, amplitude); duplicates are not merged.
void apply(const FockBasis& basis, const std::vector<PreparedTerm>& terms, std::size_t i,
           std::vector<std::pair<std::size_t, Complex>>& out) {
  out.clear();
  for (const auto& t : terms) {
    std::size_t l = 0;
    std::size_t rest = i;
    const int k = static_cast<int>(t.sites.size());
    for (int j = 0; j < k; ++j) {
      const std::size_t occ = static_cast<std::size_t>(basis.occupation(i, t.sites[j]));
      l += occ * t.local_stride[j];
      rest -= occ * basis.stride(t.sites[j]);
    }
    for (const auto& [lp, v] : t.columns[l]) {
      std::size_t row = rest;
      std::size_t rem = lp;
      for (int j = 0; j < k; ++j) {
        row += (rem / t.local_stride[j]) * basis.stride(t.sites[j]);
        rem %= t.local_stride[j];
      }
      out.emplace_back(row, v);
    }
  }
}

struct TranslationGroup {
  std::vector<std::vector<int>> shifts;   // per element, per axis
  std::vector<std::vector<int>> site_map;  // per element, site -> image
};

TranslationGroup translations(const LatticeBox& box) {
  TranslationGroup g;
  const int d = box.dimension();
  std::vector<int> ext(d);
  for (int a = 0; a < d; ++a) ext[a] = box.periodic(a) ? box.dims()[a] : 1;
  std::vector<int> shift(d, 0);
  while (true) {
    std::vector<int> map(box.size());
    for (int s = 0; s < box.size(); ++s) {
      int y = s;
      for (int a = 0; a < d; ++a) {
        for (int j = 0; j < shift[a]; ++j) y = box.shifted(y, a, 1);
      }
      map[s] = y;
    }
    g.shifts.push_back(shift);
    g.site_map.push_back(std::move(map));
    int a = d - 1;
    while (a >= 0 && shift[a] == ext[a] - 1) shift[a--] = 0;
    if (a < 0) break;
    ++shift[a];
  }
  return g;
}

std::size_t image_of(const FockBasis& basis, const std::vector<int>& site_map, std::size_t i) {
  std::size_t j = 0;
  for (int s = 0; s < basis.num_sites(); ++s) {
    j += static_cast<std::size_t>(basis.occupation(i, s)) * basis.stride(site_map[s]);
  }
  return j;
}

}  // namespace

std::vector<SectorSpectrum> sector_spectra(const LatticeBox& box, int nmax,
                                           const ModelParams& params, const PotentialSpec& pot,
                                           FamilySet families, Eigen::Index max_block,
                                           std::size_t max_states) {
  if (families.contains(Family::kQ) && params.hq != 0.0) {
    throw InvalidArgument("sector_spectra: the Q term breaks particle-number conservation");
  }
  if (families.contains(Family::kP) && params.h != 0.0) {
    throw InvalidArgument("sector_spectra: the staggered field breaks translation invariance");
  }
  const FockBasis basis(box, nmax, max_states);
  const InteractionSpec spec = build_interaction_terms(box, nmax, params, pot, families);
  const auto terms = prepare(basis, spec);
  const TranslationGroup group = translations(box);
  const int gsize = static_cast<int>(group.shifts.size());
  const int d = box.dimension();

  // Orbits: representative = smallest index in the orbit.
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> rep_of(basis.size(), kUnset);
  std::vector<std::uint16_t> g0(basis.size(), 0);
  std::vector<std::size_t> reps;
  std::vector<std::vector<int>> stabilizer;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (rep_of[i] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(i);
    stabilizer.emplace_back();
    for (int g = 0; g < gsize; ++g) {
      const std::size_t s = image_of(basis, group.site_map[g], i);
      if (s == i) stabilizer.back().push_back(g);
      if (rep_of[s] == kUnset) {
        rep_of[s] = id;
        g0[s] = static_cast<std::uint16_t>(g);
      }
    }
  }

  std::map<int, std::vector<std::uint32_t>> by_number;
  for (std::uint32_t r = 0; r < reps.size(); ++r) {
    by_number[basis.total_number(reps[r])].push_back(r);
  }

  std::vector<int> kext(d);
  for (int a = 0; a < d; ++a) kext[a] = box.periodic(a) ? box.dims()[a] : 1;

  // A real Hamiltonian has the same spectrum in the sectors k and -k.
  bool real_terms = true;
  for (const auto& t : terms) {
    for (const auto& col : t.columns) {
      for (const auto& [r, v] : col) real_terms = real_terms && v.imag() == 0.0;
    }
  }

  std::vector<SectorSpectrum> out;
  std::map<std::pair<int, std::vector<int>>, std::size_t> solved;
  std::vector<std::pair<std::size_t, Complex>> column;
  std::size_t total_dim = 0;
  for (const auto& [number, members] : by_number) {
    std::vector<int> k(d, 0);
    while (true) {
      auto phase = [&](int g) {
        double arg = 0.0;
        for (int a = 0; a < d; ++a) {
          arg += 2.0 * std::numbers::pi * k[a] * group.shifts[g][a] / kext[a];
        }
        Complex z = std::polar(1.0, -arg);
        if (std::abs(z.imag()) < 1e-14) z = {std::round(z.real()), 0.0};
        if (std::abs(z.real()) < 1e-14) z = {0.0, std::round(z.imag())};
        return z;
      };
      std::vector<Complex> gphase(gsize);
      for (int g = 0; g < gsize; ++g) gphase[g] = phase(g);

      std::vector<int> row_of(reps.size(), -1);
      std::vector<std::uint32_t> kept;
      std::vector<Complex> stab_sum;
      std::vector<double> norm;
      for (std::uint32_t r : members) {
        Complex s = 0.0;
        for (int h : stabilizer[r]) s += gphase[h];
        if (std::abs(s) < 1e-8) continue;
        row_of[r] = static_cast<int>(kept.size());
        kept.push_back(r);
        stab_sum.push_back(s);
        const double orbit = static_cast<double>(gsize) / stabilizer[r].size();
        norm.push_back(std::sqrt(orbit) * std::abs(s));
      }
      const auto m = static_cast<Eigen::Index>(kept.size());
      if (m > max_block) {
        throw UnsupportedSize("sector_spectra: block of dimension " + std::to_string(m) +
                              " exceeds the dense limit");
      }
      std::vector<int> minus_k(d);
      for (int a = 0; a < d; ++a) minus_k[a] = (kext[a] - k[a]) % kext[a];
      const auto mirror = real_terms ? solved.find({number, minus_k}) : solved.end();
      if (m > 0 && mirror != solved.end()) {
        out.push_back(SectorSpectrum{number, k, out[mirror->second].eigenvalues});
        total_dim += static_cast<std::size_t>(m);
      } else if (m > 0) {
        DenseMatrix b = DenseMatrix::Zero(m, m);
        for (Eigen::Index c = 0; c < m; ++c) {
          apply(basis, terms, reps[kept[c]], column);
          for (const auto& [s, v] : column) {
            const std::uint32_t rp = rep_of[s];
            const int row = row_of[rp];
            if (row < 0) continue;
            const Complex coef = gphase[g0[s]] * stab_sum[row];
            b(row, c) += static_cast<double>(gsize) * v * std::conj(coef) / (norm[c] * norm[row]);
          }
        }
        if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
          throw DiagnosticError("sector_spectra: Hamiltonian is not translation invariant");
        }
        const DenseMatrix bh = 0.5 * (b + b.adjoint());
        solved[{number, k}] = out.size();
        out.push_back(SectorSpectrum{number, k, detail::hermitian_eigen(bh, false).values});
        total_dim += static_cast<std::size_t>(m);
      }
      int a = d - 1;
      while (a >= 0 && k[a] == kext[a] - 1) k[a--] = 0;
      if (a < 0) break;
      ++k[a];
    }
  }
  if (total_dim != basis.size()) {
    throw DiagnosticError("sector_spectra: sector dimensions do not add up to the basis size");
  }
  return out;
}

ThermoResult sector_thermodynamics(const LatticeBox& box, int nmax, const ModelParams& params,
                                   const PotentialSpec& pot, FamilySet families) {
  const auto sectors = sector_spectra(box, nmax, params, pot, families);
  const double beta = params.beta;
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& s : sectors) lo = std::min(lo, s.eigenvalues.minCoeff());
  double z = 0.0, zn = 0.0;
  for (const auto& s : sectors) {
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
      const double w = std::exp(-beta * (s.eigenvalues[i] - lo));
      z += w;
      zn += w * s.particles;
    }
  }
  ThermoResult r;
  r.beta = beta;
  r.mu = params.mu;
  r.log_z = -beta * lo + std::log(z);
  r.Z = std::exp(r.log_z);
  r.f = -r.log_z / (beta * box.size());
  r.rho = zn / z / box.size();
  return r;
}

}  // namespace bosonlab
