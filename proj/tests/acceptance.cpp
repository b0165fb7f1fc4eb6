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

// Desk-scale acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bosonlab/cycles.hpp"
#include "bosonlab/exactdiag.hpp"
#include "bosonlab/hilbert.hpp"
#include "bosonlab/model.hpp"
#include "bosonlab/polymer.hpp"
#include "bosonlab/stochastic.hpp"
#include "bosonlab_cli/config.hpp"
#include "bosonlab_cli/report.hpp"
#include "bosonlab_cli/runner.hpp"

namespace bosonlab {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

PotentialSpec hard_core() {
  PotentialSpec p;
  p.onsite = std::numeric_limits<double>::infinity();
  return p;
}

PotentialSpec cap_potential(int nmax) {
  if (nmax == 1) return hard_core();
  PotentialSpec p;
  p.onsite = 1.0;
  return p;
}

std::vector<LatticeBox> small_boxes() {
  return {LatticeBox::open({1}),       LatticeBox::open({2}),       LatticeBox::torus({2}),
          LatticeBox::open({1, 2}),    LatticeBox::open({2, 1}),    LatticeBox::open({2, 2}),
          LatticeBox::torus({2, 2})};
}

Outcome operator_algebra() {
  double worst = 0.0;
  for (const auto& box : small_boxes()) {
    for (int nmax : {1, 2}) {
      const FockBasis b(box, nmax);
      const auto id = OperatorMatrix::identity(b.size());
      for (int x = 0; x < box.size(); ++x) {
        const auto c = site_operator(b, SiteOp::kAnnihilate, x);
        const auto cap = occupation_projector(b, x, nmax).scaled(nmax + 1.0);
        for (int y = 0; y < box.size(); ++y) {
          const auto cd = site_operator(b, SiteOp::kCreate, y);
          const auto lhs = commutator(c, cd);
          const auto rhs = x == y ? id - cap : OperatorMatrix::zero(b.size());
          worst = std::max(worst, lhs.max_abs_diff(rhs));
        }
        if (nmax == 1) {
          const auto cd = site_operator(b, SiteOp::kCreate, x);
          worst = std::max(worst, anticommutator(c, cd).max_abs_diff(id));
        }
      }
    }
  }
  return {worst < 1e-12, fmt("max entry error %.3g (tol 1e-12)", worst)};
}

Outcome conservation_and_gauge() {
  const auto box = LatticeBox::torus({2, 2});
  const FockBasis b(box, 2);
  ModelParams p;
  p.t = 0.7;
  p.mu = 0.3;
  p.h = 0.2;
  p.alpha = 0.4;
  PotentialSpec pot;
  pot.onsite = 1.5;
  pot.u1 = 0.5;
  pot.usqrt2 = -0.2;
  const auto u = gauge_unitary(b, std::numbers::pi / 2);
  const auto h = build_interaction(box, b, p, pot).hamiltonian;
  const double comm = operator_norm(commutator(h, total_number_operator(b)));
  const double gauge_off = symmetry_residual(h, u);
  p.hq = 0.1;
  p.alpha = std::numbers::pi / 2;
  const auto hq = build_interaction(box, b, p, pot, FamilySet::all()).hamiltonian;
  const double gauge_on = symmetry_residual(hq, u);
  const bool ok = comm < 1e-10 && gauge_off < 1e-10 && gauge_on > 1e-3;
  return {ok, fmt("||[H,N]|| %.3g, gauge residual %.3g (tol 1e-10), with Q %.3g (> 1e-3)", comm,
                  gauge_off, gauge_on)};
}

Outcome spin_boson() {
  double worst = 0.0;
  for (const auto& box : {LatticeBox::open({2}), LatticeBox::torus({2, 2})}) {
    worst = std::max(worst, spin_xy_equivalence(box, 1.0).spectral_distance);
  }
  return {worst < 1e-10, fmt("max sorted-spectrum distance %.3g (tol 1e-10)", worst)};
}

Outcome stochastic_identity() {
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<LatticeBox> boxes{LatticeBox::open({2}), LatticeBox::torus({3}),
                                      LatticeBox::open({2, 2}), LatticeBox::torus({2, 2}),
                                      LatticeBox::open({2, 3})};
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto& box = boxes[i % boxes.size()];
    ModelParams p;
    p.t = u(rng);
    p.mu = u(rng);
    p.h = 0.5 * u(rng);
    p.beta = 1.0 + u(rng);
    PotentialSpec pot = hard_core();
    pot.u1 = 0.5 * u(rng);
    pot.usqrt2 = 0.5 * u(rng);
    worst = std::max(worst, fk_identity_check(box, p, pot));
  }
  return {worst < 1e-9, fmt("max relative error %.3g over 10 instances (tol 1e-9)", worst)};
}

Outcome duhamel_convergence() {
  const auto box = LatticeBox::open({2});
  const FockBasis b(box, 1);
  ModelParams p;
  p.t = 1.0;
  p.beta = 0.1;
  const auto h = build_interaction(box, b, p, hard_core()).hamiltonian;
  const double z = thermodynamics(h, p.beta, box).Z;
  const auto r = duhamel_series_Z(h, p.beta, 4);
  const double rel = std::abs(r.partial_sums[4] - z) / z;
  bool bounded = true;
  for (std::size_t m = 0; m < r.partial_sums.size(); ++m) {
    bounded = bounded && std::abs(r.partial_sums[m] - z) <= r.bounds[m];
  }
  return {rel < 1e-8 && bounded,
          fmt("|Z_4 - Z|/Z %.3g (tol 1e-8), errors within a priori bounds: %s", rel,
              bounded ? "yes" : "no")};
}

Outcome ideal_gas() {
  const auto r = ideal_gas_cycle_analysis(LatticeBox::torus({4}), 1.0, 1.0, -3.0);
  const double dz = std::abs(r.z_modes - r.z_permutation);
  const double dlog = std::abs(r.log_z_modes - r.cycle_sum);
  return {dz < 1e-4 && dlog < 1e-8,
          fmt("|Z_modes - Z_perm| %.3g (tol 1e-4) at N=%d, |log Z - sum w_j| %.3g (tol 1e-8)", dz,
              r.truncation, dlog)};
}

Outcome polymer_reconstruction() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  bool bounds = true;
  int draws = 0;
  for (const auto& box : {LatticeBox::open({1, 2}), LatticeBox::open({1, 3}),
                          LatticeBox::open({2, 2})}) {
    for (int i = 0; i < 5; ++i) {
      ModelParams p;
      p.t = 0.1 * u(rng);
      p.mu = u(rng);
      p.h = 0.3 * u(rng);
      PotentialSpec pot = hard_core();
      pot.u1 = 0.05 * u(rng);
      const auto spec = build_interaction_terms(box, 1, p, pot);
      const auto table = build_weight_table(spec, p.beta, box.size());
      const FockBasis b(box, 1);
      const double z = thermodynamics(assemble_hamiltonian(b, spec), p.beta, box).Z;
      worst = std::max(worst, std::abs(reconstruct_Z(table) / z - 1.0));
      bounds = bounds && weight_and_condition_check(spec, table, 0.1).bounds_hold;
      ++draws;
    }
  }
  return {worst < 1e-10 && bounds,
          fmt("max relative error %.3g over %d draws (tol 1e-10), weight bounds hold: %s", worst,
              draws, bounds ? "yes" : "no")};
}

Outcome cluster_free_energy_check() {
  const double r = 0.1;
  ModelParams p;
  p.beta = 1.0;
  p.mu = 0.2;
  p.t = 0.125 * std::exp(-2 * r);
  const auto pot = hard_core();
  const auto box = LatticeBox::torus({4, 4});
  const double beta_norm = p.beta * interaction_norm(build_interaction_terms(box, 1, p, pot),
                                                     {r, NormMode::kStar});
  const auto cluster = cluster_free_energy(2, 1, p, pot, FamilySet::standard());
  const double exact = sector_thermodynamics(box, 1, p, pot, FamilySet::standard()).f;
  const double diff = std::abs(cluster.f - exact);
  return {diff < 5e-3 && cluster.tail < 1e-3 && std::abs(beta_norm - 0.5) < 1e-12,
          fmt("beta||H||*_r %.3g, |f_cluster - f_4x4| %.3g (tol 5e-3), tail %.3g (tol 1e-3)",
              beta_norm, diff, cluster.tail)};
}

Outcome cycles_oracle() {
  double worst_tv = 0.0;
  for (const auto& box : {LatticeBox::open({2}), LatticeBox::open({2, 2}), LatticeBox::open({2, 3})}) {
    for (XiKind kind : {XiKind::kNearestNeighbor, XiKind::kQuadratic}) {
      XiSpec spec;
      spec.kind = kind;
      spec.beta = 1.0;
      spec.dimension = box.dimension();
      const auto exact = brute_force_distribution(box, spec);
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        McmcOptions opt;
        opt.sweeps = 1000000;
        opt.seed = seed;
        const auto st = mcmc_sample(box, spec, opt);
        worst_tv = std::max(worst_tv, total_variation(st.origin_length, exact.stats.origin_length));
      }
    }
  }
  long instances = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  const std::vector<LatticeBox> enumerable{
      LatticeBox::open({2}),    LatticeBox::torus({3}),   LatticeBox::torus({4}),
      LatticeBox::open({2, 2}), LatticeBox::torus({2, 2}), LatticeBox::open({2, 3}),
      LatticeBox::torus({2, 3}), LatticeBox::torus({8}),  LatticeBox::open({3, 3}),
      LatticeBox::torus({3, 3})};
  for (const auto& box : enumerable) {
    for (XiKind kind : {XiKind::kNearestNeighbor, XiKind::kQuadratic, XiKind::kPower}) {
      for (double beta : {0.5, 1.0, 2.0}) {
        XiSpec spec;
        spec.kind = kind;
        spec.beta = beta;
        spec.gamma = 1.5;
        spec.dimension = box.dimension();
        const auto exact = brute_force_distribution(box, spec);
        const auto sac = sac_enumerate(box, spec);
        for (int n = 1; n < box.size(); ++n) {
          worst_gap = std::max(worst_gap, exact.stats.tail(n) - sac.bound(n));
          ++instances;
        }
      }
    }
  }
  const bool ok = worst_tv < 0.01 && worst_gap <= 0.0;
  return {ok, fmt("max TV %.3g (tol 0.01); max P(B>n) - bound %.3g over %ld instances (<= 0)",
                  worst_tv, worst_gap, instances)};
}

Outcome classical_ground_states() {
  PotentialSpec pot = hard_core();
  pot.u1 = 1.0;
  pot.usqrt2 = -0.25;
  const auto box = LatticeBox::torus({4, 4});
  // Lines: empty | chess at mu = 2 usqrt2 - |h|, chess | full at mu = 4 u1 + 2 usqrt2 + |h|.
  std::vector<std::pair<double, double>> grid;
  for (double h : {0.2, -0.2}) {
    const double low = 2 * pot.usqrt2 - std::abs(h);
    const double high = 4 * pot.u1 + 2 * pot.usqrt2 + std::abs(h);
    for (double mu : {-2.0, low, 0.0, 1.0, 2.0, 3.0, high, 5.0}) grid.emplace_back(mu, h);
  }
  for (double mu : {-2.0, -0.5, 1.5, 3.5}) grid.emplace_back(mu, 0.0);
  int agree = 0, ties = 0;
  std::set<RefConfig> seen;
  for (const auto& [mu, h] : grid) {
    const auto ref = reference_energies(mu, h, pot.u1, pot.usqrt2);
    const auto g = classical_ground_bruteforce(box, mu, h, pot);
    std::set<std::vector<int>> expected, found(g.minimizers.begin(), g.minimizers.end());
    for (RefConfig c : ref.argmin) {
      expected.insert(reference_configuration(box, c));
      seen.insert(c);
    }
    const bool same = expected == found && std::abs(g.energy / box.size() - ref.minimum) < 1e-9;
    agree += same;
    ties += ref.argmin.size() > 1;
  }
  const bool ok = agree == static_cast<int>(grid.size()) && seen.size() == 4;
  return {ok, fmt("%d/%zu grid points agree (%d coexistence points), regions covered %zu/4", agree,
                  grid.size(), ties, seen.size())};
}

Outcome incompressibility() {
  const auto box = LatticeBox::torus({2, 3});
  PotentialSpec pot = hard_core();
  pot.u1 = 1.0;
  const double mid = 0.5;
  const auto ground = classical_ground_bruteforce(box, mid, 0.0, pot);
  double n0 = 0;
  for (int v : ground.minimizers.front()) n0 += v;
  const double rho_classical = n0 / box.size();
  std::vector<double> x, y, devs;
  double kappa8 = 0.0;
  for (double beta : {2.0, 4.0, 6.0, 8.0}) {
    ModelParams p;
    p.t = 0.1;
    p.mu = mid;
    p.beta = beta;
    const auto d = density_and_compressibility(box, 1, p, pot);
    devs.push_back(std::abs(d.rho - rho_classical));
    x.push_back(beta);
    y.push_back(std::log(devs.back()));
    kappa8 = d.kappa;
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < devs.size(); ++i) decreasing = decreasing && devs[i] < devs[i - 1];
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = sxy * sxy / (sxx * syy);
  const bool ok = decreasing && slope < 0 && r2 > 0.95 && kappa8 < 1e-2;
  return {ok, fmt("decreasing %s, slope %.3g, R^2 %.4f (> 0.95), kappa(8) %.3g (tol 1e-2)",
                  decreasing ? "yes" : "no", slope, r2, kappa8)};
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const std::string text =
      "engine = worldline\n[box]\ndims = 2x2\n[model]\nt = 0.5\nbeta = 1\n[potential]\n"
      "onsite = inf\nu1 = 0.3\n[scan]\nmu = -0.5,0,0.5\n[run]\nseed = 2026\nthreads = 1\n"
      "[worldline]\nsamples = 2000\n";
  const auto parsed = cli::parse_config(text);
  if (!parsed.ok()) return {false, "config did not validate"};
  const fs::path dir = fs::temp_directory_path() / "bosonlab_acceptance";
  fs::create_directories(dir);
  std::vector<std::string> bytes;
  for (const char* name : {"first.csv", "second.csv"}) {
    const fs::path path = dir / name;
    cli::write_report(cli::run_and_report(*parsed.config), cli::Format::kCsv, path.string());
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    bytes.push_back(os.str());
  }
  fs::remove_all(dir);
  const bool ok = !bytes[0].empty() && bytes[0] == bytes[1];
  return {ok, fmt("two runs wrote %zu and %zu bytes, identical: %s", bytes[0].size(),
                  bytes[1].size(), bytes[0] == bytes[1] ? "yes" : "no")};
}

}  // namespace
}  // namespace bosonlab

int main() {
  using namespace bosonlab;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"operator algebra", operator_algebra},
      {"conservation and gauge", conservation_and_gauge},
      {"spin-boson equivalence", spin_boson},
      {"stochastic identity", stochastic_identity},
      {"Duhamel convergence", duhamel_convergence},
      {"ideal-gas cycle identity", ideal_gas},
      {"polymer reconstruction", polymer_reconstruction},
      {"cluster free energy", cluster_free_energy_check},
      {"cycles oracle", cycles_oracle},
      {"classical ground states", classical_ground_states},
      {"incompressibility", incompressibility},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("criterion %2zu %s  %s: %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
