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

#include "bosonlab_cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "bosonlab/contours.hpp"
#include "bosonlab/cycles.hpp"
#include "bosonlab/errors.hpp"
#include "bosonlab/exactdiag.hpp"
#include "bosonlab/polymer.hpp"
#include "bosonlab/stochastic.hpp"

namespace bosonlab::cli {

namespace {

constexpr long kCliSacBudget = 2000000;

using Row = std::vector<Cell>;

Cell finite(double v, const char* column) {
  if (!std::isfinite(v)) {
    throw DiagnosticError(std::string("non-finite value in column '") + column + "'");
  }
  return v;
}

Cell optional_finite(double v) { return std::isfinite(v) ? Cell(v) : Cell(); }

std::string describe_point(const ModelParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "beta=" << p.beta << ", mu=" << p.mu << ", h=" << p.h << ", t=" << p.t;
  return os.str();
}

double hilbert_dimension(int sites, int nmax) {
  return std::pow(static_cast<double>(nmax + 1), sites);
}

int farthest_site(const LatticeBox& box) {
  int best = 0;
  for (int y = 1; y < box.size(); ++y) {
    if (box.distance(0, y) > box.distance(0, best) + 1e-12) best = y;
  }
  return best;
}

std::vector<Row> run_ed(const RunConfig& c, const ModelParams& p) {
  const LatticeBox box = make_box(c);
  const PotentialSpec pot = make_potential(c);
  const FamilySet fams = make_families(c);
  Method method = c.ed.method;
  if (method == Method::kAuto) {
    method = hilbert_dimension(box.size(), c.box.nmax) <= static_cast<double>(kDefaultDenseLimit)
                 ? Method::kFull
                 : Method::kSector;
  }
  if (method == Method::kSector) {
    const ThermoResult r = sector_thermodynamics(box, c.box.nmax, p, pot, fams);
    return {{"sector", optional_finite(r.Z), finite(r.log_z, "log_z"), finite(r.f, "f"),
             r.rho ? finite(*r.rho, "rho") : Cell(), Cell(), Cell(), Cell()}};
  }
  const FockBasis basis(box, c.box.nmax);
  const Model model = build_interaction(box, basis, p, pot, fams);
  const GibbsEnsemble ens(model.hamiltonian, p.beta);
  const double log_z = ens.log_z();
  const double f = -log_z / (p.beta * box.size());
  const DensityResult d = density_and_compressibility(box, c.box.nmax, p, pot, fams, c.ed.dmu);
  const int y = farthest_site(box);
  const Complex g = odlro_correlator(ens, basis, 0, y);
  if (std::abs(g.imag()) > 1e-10) {
    throw DiagnosticError("odlro correlator has an imaginary part above 1e-10");
  }
  return {{"full", optional_finite(std::exp(log_z)), finite(log_z, "log_z"), finite(f, "f"),
           finite(d.rho, "rho"), finite(d.kappa, "kappa"), finite(g.real(), "odlro"),
           finite(box.distance(0, y), "odlro_distance")}};
}

std::vector<Row> run_cycles(const RunConfig& c, const ModelParams& p, std::uint64_t seed) {
  const LatticeBox box = make_box(c);
  XiSpec xi;
  xi.kind = c.cycles.kind;
  xi.beta = p.beta;
  xi.gamma = c.cycles.gamma;
  xi.cutoff = c.cycles.cutoff;
  xi.dimension = box.dimension();
  xi.validate();
  Method method = c.cycles.method;
  if (method == Method::kAuto) {
    method = box.size() <= kBruteForceSites ? Method::kExact : Method::kMcmc;
  }
  CycleStats stats;
  if (method == Method::kExact) {
    stats = brute_force_distribution(box, xi).stats;
  } else {
    McmcOptions opt;
    opt.sweeps = c.cycles.sweeps;
    opt.seed = seed;
    opt.batches = c.cycles.batches;
    stats = mcmc_sample(box, xi, opt);
  }
  std::optional<SacBound> sac;
  try {
    sac = sac_enumerate(box, xi, 0, kCliSacBudget);
  } catch (const UnsupportedSize&) {
  }
  const LongCycleEstimates est = long_cycle_estimators(stats, c.cycles.n, c.cycles.threshold);
  std::vector<Row> rows;
  for (const auto& [n, e] : est.tail) {
    rows.push_back({method_name(method), n, finite(e.value, "p_tail"),
                    finite(e.error, "p_tail_err"),
                    sac ? finite(sac->bound(n), "sac_bound") : Cell(),
                    finite(est.mean_origin_length.value, "mean_origin_length"),
                    finite(est.mean_origin_length.error, "mean_origin_length_err"), est.threshold,
                    finite(est.long_fraction.value, "long_fraction"),
                    finite(est.long_fraction.error, "long_fraction_err"),
                    finite(stats.acceptance, "acceptance"), stats.samples});
  }
  return rows;
}

std::vector<Row> run_polymer(const RunConfig& c, const ModelParams& p) {
  const LatticeBox box = make_box(c);
  const PotentialSpec pot = make_potential(c);
  const FamilySet fams = make_families(c);
  const ClusterExpansionResult r = cluster_free_energy(box.dimension(), c.box.nmax, p, pot, fams,
                                                       c.polymer.size_cutoff, c.polymer.k_cutoff);
  const InteractionSpec spec = build_interaction_terms(box, c.box.nmax, p, pot, fams);
  const double beta_norm = p.beta * interaction_norm(spec, {c.polymer.r, NormMode::kStar});
  Cell f_exact;
  if (hilbert_dimension(box.size(), c.box.nmax) <= static_cast<double>(kDefaultDenseLimit)) {
    const FockBasis basis(box, c.box.nmax);
    f_exact = finite(thermodynamics(assemble_hamiltonian(basis, spec), p.beta, box).f, "f_exact");
  }
  return {{finite(r.f, "f_cluster"), finite(r.f0, "f0"), finite(r.tail, "tail"), r.diverging,
           r.shapes, r.clusters, finite(beta_norm, "beta_norm"), beta_norm < 1.0, f_exact,
           r.warning}};
}

std::vector<Row> run_worldline(const RunConfig& c, const ModelParams& p, std::uint64_t seed) {
  const LatticeBox box = make_box(c);
  const PotentialSpec pot = make_potential(c);
  const FamilySet fams = make_families(c);
  WorldlineOptions opt;
  opt.samples = c.worldline.samples;
  opt.seed = seed;
  opt.chains = c.worldline.chains;
  opt.particles = c.worldline.particles;
  const WorldlineResult r = sample_worldlines(box, p, pot, opt, fams);
  Cell z_exact;
  if (!c.worldline.particles &&
      hilbert_dimension(box.size(), c.box.nmax) <= static_cast<double>(kDefaultDenseLimit)) {
    const FockBasis basis(box, c.box.nmax);
    const Model m = build_interaction(box, basis, p, pot, fams);
    z_exact = optional_finite(thermodynamics(m.hamiltonian, p.beta, box).Z);
  }
  return {{finite(r.z.value, "z"), finite(r.z.error, "z_err"),
           finite(r.closed_fraction, "closed_fraction"), finite(r.rate, "rate"), r.samples,
           z_exact}};
}

std::vector<Row> run_classical(const RunConfig& c, const ModelParams& p) {
  const LatticeBox box = make_box(c);
  const PotentialSpec pot = make_potential(c);
  const ReferenceEnergies ref = reference_energies(p.mu, p.h, pot.u1, pot.usqrt2);
  std::string argmin;
  for (RefConfig r : ref.argmin) argmin += (argmin.empty() ? "" : "|") + std::string(ref_config_name(r));
  Cell brute;
  Cell minimizers;
  if (box.size() <= c.classical.max_sites) {
    const ClassicalGround g =
        classical_ground_bruteforce(box, p.mu, p.h, pot, c.classical.max_sites);
    brute = finite(g.energy / box.size(), "brute_min_per_site");
    minimizers = static_cast<long>(g.minimizers.size());
  }
  return {{finite(ref.energy[0], "e_empty"), finite(ref.energy[1], "e_chess_a"),
           finite(ref.energy[2], "e_chess_b"), finite(ref.energy[3], "e_full"),
           finite(ref.minimum, "e_min"), argmin, brute, minimizers}};
}

std::vector<Row> run_contours(const RunConfig& c, const ModelParams& p, std::uint64_t seed) {
  const LatticeBox box = make_box(c);
  const PotentialSpec pot = make_potential(c);
  const FamilySet fams = make_families(c);
  double scale = 2.0 * box.dimension() * std::abs(p.t);
  for (double v : {p.mu, p.h, pot.u1, pot.usqrt2}) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  const int slices = c.contours.slices > 0 ? c.contours.slices : default_slice_count(p.beta, scale);

  WorldlineOptions opt;
  opt.samples = c.contours.samples;
  opt.seed = seed;
  opt.particles = c.contours.particles;
  opt.keep = static_cast<int>(std::min<long>(c.contours.samples, 1L << 30));
  const WorldlineResult wr = sample_worldlines(box, p, pot, opt, fams);

  double max_lw = -std::numeric_limits<double>::infinity();
  for (const auto& wl : wr.kept) {
    if (wl.closed) max_lw = std::max(max_lw, wl.log_weight);
  }
  double wsum = 0, contours = 0, excited = 0, winding = 0, admissible = 0;
  std::array<double, 4> region{};
  long closed = 0;
  const double cells = static_cast<double>(box.size()) * slices;
  for (const auto& wl : wr.kept) {
    if (!wl.closed) continue;
    ++closed;
    const double w = std::exp(wl.log_weight - max_lw);
    const ContourSet cs = extract_contours(SpaceTimeConfig::from_worldline(box, wl, slices));
    long ex = 0, wind = 0;
    for (const auto& ct : cs.contours) {
      ex += static_cast<long>(ct.support.size());
      if (ct.winding.back()) ++wind;
    }
    wsum += w;
    contours += w * static_cast<double>(cs.contours.size());
    winding += w * static_cast<double>(wind);
    excited += w * static_cast<double>(ex) / cells;
    admissible += cs.admissible ? w : 0.0;
    for (int j = 0; j < 4; ++j) region[j] += w * static_cast<double>(cs.region_sizes[j]) / cells;
  }
  if (closed == 0) throw DiagnosticError("contours: no closed trajectory among the samples");
  Row row{slices,
          closed,
          finite(contours / wsum, "mean_contours"),
          finite(excited / wsum, "excited_fraction"),
          finite(contours > 0 ? winding / contours : 0.0, "time_winding_fraction"),
          finite(admissible / wsum, "admissible_fraction")};
  for (int j = 0; j < 4; ++j) row.push_back(finite(region[j] / wsum, "region"));
  return {row};
}

}  // namespace

EngineFailure::EngineFailure(const ModelParams& point, const std::string& message)
    : std::runtime_error("engine failed at " + describe_point(point) + ": " + message),
      point_(point) {}

std::uint64_t point_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::string> engine_columns(Engine engine) {
  switch (engine) {
    case Engine::kEd:
      return {"method", "Z", "log_z", "f", "rho", "kappa", "odlro", "odlro_distance"};
    case Engine::kCycles:
      return {"method",    "n",         "p_tail",        "p_tail_err",
              "sac_bound", "mean_origin_length", "mean_origin_length_err", "threshold",
              "long_fraction", "long_fraction_err", "acceptance", "samples"};
    case Engine::kPolymer:
      return {"f_cluster", "f0",        "tail",      "diverging", "shapes",
              "clusters",  "beta_norm", "condition", "f_exact",   "warning"};
    case Engine::kWorldline:
      return {"z", "z_err", "closed_fraction", "rate", "samples", "z_exact"};
    case Engine::kClassical:
      return {"e_empty", "e_chess_a", "e_chess_b", "e_full",
              "e_min",   "argmin",    "brute_min_per_site", "minimizers"};
    case Engine::kContours:
      return {"slices",          "trajectories",       "mean_contours",
              "excited_fraction", "time_winding_fraction", "admissible_fraction",
              "frac_empty",      "frac_chess_a",       "frac_chess_b",
              "frac_full"};
  }
  return {};
}

std::vector<std::vector<Cell>> run_point(const RunConfig& c, const ModelParams& p,
                                         std::uint64_t seed) {
  switch (c.engine) {
    case Engine::kEd:
      return run_ed(c, p);
    case Engine::kCycles:
      return run_cycles(c, p, seed);
    case Engine::kPolymer:
      return run_polymer(c, p);
    case Engine::kWorldline:
      return run_worldline(c, p, seed);
    case Engine::kClassical:
      return run_classical(c, p);
    case Engine::kContours:
      return run_contours(c, p, seed);
  }
  return {};
}

Report run_and_report(const RunConfig& c) {
  const std::vector<ModelParams> points = grid_points(c);
  const std::uint64_t base = c.run.seed.value_or(0);
  std::vector<std::vector<Row>> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = run_point(c, points[i], point_seed(base, i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads =
      static_cast<int>(std::min<std::size_t>(std::max(c.run.threads, 1), points.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw EngineFailure(points[i], e.what());
    }
  }

  Report report;
  report.version = library_version();
  report.engine = engine_name(c.engine);
  RunConfig echo = c;
  echo.run.out.clear();
  report.config_text = emit_config(echo);
  if (c.run.timestamp) report.timestamp = utc_timestamp();
  report.columns = {"point", "beta", "mu", "h", "t"};
  for (auto& col : engine_columns(c.engine)) report.columns.push_back(col);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ModelParams& p = points[i];
    for (auto& r : results[i]) {
      Row row{static_cast<long>(i), p.beta, p.mu, p.h, p.t};
      row.insert(row.end(), r.begin(), r.end());
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace bosonlab::cli
