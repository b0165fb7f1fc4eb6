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

#include "bosonlab/polymer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bosonlab/errors.hpp"
#include "bosonlab/exactdiag.hpp"
#include "bosonlab/stochastic.hpp"

namespace bosonlab {

namespace {

using Mask = std::uint64_t;

constexpr int kMaxPolymerBox = 64;

std::string support_string(const std::vector<int>& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

std::vector<int> sites_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// Exact sub-traces of one interaction and the weights they determine.
class SubsystemTraces {
 public:
  SubsystemTraces(const InteractionSpec& spec, double beta) : spec_(spec), beta_(beta) {
    if (spec.box.size() > kMaxPolymerBox) {
      throw UnsupportedSize("polymer: boxes above 64 sites are not supported");
    }
    if (!(beta > 0)) throw InvalidArgument("polymer: beta must be positive");
    const auto graph = coupling_graph(spec);
    nb_.assign(graph.size(), 0);
    for (std::size_t x = 0; x < graph.size(); ++x) {
      for (int y : graph[x]) nb_[x] |= Mask{1} << y;
    }
    log_z1_.resize(spec.box.size());
    for (int x = 0; x < spec.box.size(); ++x) log_z1_[x] = log_trace(Mask{1} << x);
  }

  double f0(int x) const { return -log_z1_[x] / beta_; }

  Mask closure(Mask m) const {
    Mask out = m;
    for (int x : sites_of(m)) out |= nb_[x];
    return out;
  }

  bool connected(Mask m) const {
    if (m == 0) return false;
    Mask seen = m & -m;
    Mask frontier = seen;
    while (frontier) {
      Mask next = 0;
      for (int x : sites_of(frontier)) next |= nb_[x];
      next &= m & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == m;
  }

  // Connected subsets of `within` that contain `v` and have at least two sites.
  std::vector<Mask> connected_containing(int v, Mask within) const {
    const Mask start = Mask{1} << v;
    std::vector<Mask> out;
    std::unordered_set<Mask> seen{start};
    std::vector<Mask> stack{start};
    while (!stack.empty()) {
      const Mask m = stack.back();
      stack.pop_back();
      if (m != start) out.push_back(m);
      Mask grow = 0;
      for (int x : sites_of(m)) grow |= nb_[x];
      grow &= within & ~m;
      for (int y : sites_of(grow)) {
        const Mask n = m | (Mask{1} << y);
        if (seen.insert(n).second) stack.push_back(n);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Z_S exp(beta F_S), the polymer partition function restricted to S.
  double xi(Mask s) {
    if (s == 0) return 1.0;
    auto it = xi_.find(s);
    if (it != xi_.end()) return it->second;
    double lz = log_trace(s);
    for (int x : sites_of(s)) lz -= log_z1_[x];
    const double v = std::exp(lz);
    xi_.emplace(s, v);
    return v;
  }

  double weight(Mask a) {
    if (std::popcount(a) < 2) return 0.0;
    auto it = w_.find(a);
    if (it != w_.end()) return it->second;
    const int v = std::countr_zero(a);
    double w = xi(a) - xi(a & ~(Mask{1} << v));
    for (Mask p : connected_containing(v, a)) {
      if (p == a) continue;
      w -= weight(p) * xi(a & ~closure(p));
    }
    w_.emplace(a, w);
    return w;
  }

 private:
  double log_trace(Mask s) const {
    const FockBasis basis(spec_.box, sites_of(s), spec_.nmax);
    return thermodynamics(assemble_hamiltonian(basis, spec_), beta_, spec_.box).log_z;
  }

  const InteractionSpec& spec_;
  double beta_;
  std::vector<Mask> nb_;
  std::vector<double> log_z1_;
  std::unordered_map<Mask, double> xi_;
  std::unordered_map<Mask, double> w_;
};

Mask mask_of(const std::vector<int>& support, int n) {
  Mask m = 0;
  for (int x : support) {
    if (x < 0 || x >= n) throw InvalidArgument("polymer: site out of range");
    m |= Mask{1} << x;
  }
  return m;
}

double ursell_from_adjacency(const std::vector<Mask>& adj) {
  const int k = static_cast<int>(adj.size());
  if (k == 0) throw InvalidArgument("ursell_factor: empty cluster");
  if (k > 16) throw UnsupportedSize("ursell_factor: more than 16 polymers");
  const Mask full = (Mask{1} << k) - 1;
  // independent[S]: no edge inside S, so the signed sum over all spanning
  // subgraphs of S is one.
  std::vector<double> independent(full + 1, 0.0), conn(full + 1, 0.0);
  for (Mask s = 1; s <= full; ++s) {
    bool ind = true;
    for (int i : sites_of(s)) {
      if (adj[i] & s) {
        ind = false;
        break;
      }
    }
    independent[s] = ind ? 1.0 : 0.0;
  }
  independent[0] = 1.0;
  for (Mask s = 1; s <= full; ++s) {
    const Mask low = s & -s;
    const Mask rest = s & ~low;
    double c = independent[s];
    // Proper subsets T of S containing the lowest vertex.
    for (Mask sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const Mask t = sub | low;
      if (t != s) c -= conn[t] * independent[s & ~t];
      if (sub == 0) break;
    }
    conn[s] = c;
  }
  return conn[full];
}

// Lattice points as coordinate vectors.
using Point = std::vector<int>;
using Shape = std::vector<Point>;  // sorted

Point add(const Point& a, const Point& b) {
  Point c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Point sub(const Point& a, const Point& b) {
  Point c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

Shape canonical(Shape s) {
  std::sort(s.begin(), s.end());
  const Point base = s.front();
  for (auto& p : s) p = sub(p, base);
  return s;
}

Shape translate(const Shape& s, const Point& by) {
  Shape out;
  out.reserve(s.size());
  for (const auto& p : s) out.push_back(add(p, by));
  std::sort(out.begin(), out.end());
  return out;
}

struct ShapeWeight {
  Shape shape;
  double w;
};

struct ClusterPolymer {
  Shape cells;
  double w;
};

}  // namespace

std::vector<std::vector<int>> coupling_graph(const InteractionSpec& spec) {
  std::vector<std::set<int>> adj(spec.box.size());
  for (const auto& term : spec.terms) {
    if (term.support.size() < 2 || term.block.cwiseAbs().maxCoeff() == 0.0) continue;
    for (int x : term.support) {
      for (int y : term.support) {
        if (x != y) adj[x].insert(y);
      }
    }
  }
  std::vector<std::vector<int>> out(adj.size());
  for (std::size_t x = 0; x < adj.size(); ++x) out[x].assign(adj[x].begin(), adj[x].end());
  return out;
}

double single_site_F0(const InteractionSpec& spec, int site, double beta) {
  if (!(beta > 0)) throw InvalidArgument("single_site_F0: beta must be positive");
  if (site < 0 || site >= spec.box.size()) throw InvalidArgument("single_site_F0: bad site");
  const FockBasis basis(spec.box, std::vector<int>{site}, spec.nmax);
  return -thermodynamics(assemble_hamiltonian(basis, spec), beta, spec.box).log_z / beta;
}

Complex PolymerWeightTable::weight(const std::vector<int>& support) const {
  std::vector<int> key = support;
  std::sort(key.begin(), key.end());
  if (key.size() < 2) return 0.0;
  auto it = weights.find(key);
  if (it == weights.end()) {
    throw MissingWeight("polymer weight table has no entry for support " + support_string(key));
  }
  return it->second;
}

double PolymerWeightTable::f0_total() const {
  double s = 0.0;
  for (double v : f0) s += v;
  return s;
}

void PolymerWeightTable::write_text(std::ostream& os) const {
  const auto old = os.precision(17);
  for (const auto& [support, w] : weights) {
    for (std::size_t i = 0; i < support.size(); ++i) os << (i ? "," : "") << support[i];
    os << ' ' << w.real() << ' ' << w.imag() << '\n';
  }
  os.precision(old);
}

Complex polymer_weight(const InteractionSpec& spec, const std::vector<int>& support, double beta,
                       int max_size) {
  if (support.empty()) throw InvalidArgument("polymer_weight: empty support");
  if (static_cast<int>(support.size()) > max_size) {
    throw UnsupportedSize("polymer_weight: |A| = " + std::to_string(support.size()) +
                          " exceeds the limit " + std::to_string(max_size));
  }
  SubsystemTraces traces(spec, beta);
  const Mask a = mask_of(support, spec.box.size());
  if (std::popcount(a) != static_cast<int>(support.size())) {
    throw InvalidArgument("polymer_weight: repeated site in support");
  }
  if (!traces.connected(a)) {
    throw InvalidArgument("polymer_weight: support " + support_string(support) +
                          " is not connected");
  }
  return traces.weight(a);
}

PolymerWeightTable build_weight_table(const InteractionSpec& spec, double beta, int max_size) {
  if (max_size < 1) throw InvalidArgument("build_weight_table: max_size must be positive");
  SubsystemTraces traces(spec, beta);
  PolymerWeightTable table{spec.box, spec.nmax, beta, max_size, {}, {}, {}, coupling_graph(spec)};
  const int n = spec.box.size();
  table.f0.resize(n);
  for (int x = 0; x < n; ++x) table.f0[x] = traces.f0(x);
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (int v = 0; v < n; ++v) {
    // Subsets whose lowest site is v.
    const Mask above = all & ~((Mask{1} << v) - 1);
    for (Mask p : traces.connected_containing(v, above)) {
      if (std::popcount(p) > max_size) continue;
      table.weights.emplace(sites_of(p), Complex(traces.weight(p), 0.0));
    }
  }
  return table;
}

double reconstruct_Z(const PolymerWeightTable& table) {
  const int n = table.box.size();
  if (n > kMaxPolymerBox) throw UnsupportedSize("reconstruct_Z: boxes above 64 sites");
  std::vector<Mask> nb(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y : table.coupling.at(x)) nb[x] |= Mask{1} << y;
  }
  auto closure = [&](Mask m) {
    Mask out = m;
    for (int x : sites_of(m)) out |= nb[x];
    return out;
  };
  auto connected_containing = [&](int v, Mask within) {
    const Mask start = Mask{1} << v;
    std::vector<Mask> out;
    std::unordered_set<Mask> seen{start};
    std::vector<Mask> stack{start};
    while (!stack.empty()) {
      const Mask m = stack.back();
      stack.pop_back();
      if (m != start) out.push_back(m);
      Mask grow = 0;
      for (int x : sites_of(m)) grow |= nb[x];
      grow &= within & ~m;
      for (int y : sites_of(grow)) {
        const Mask next = m | (Mask{1} << y);
        if (seen.insert(next).second) stack.push_back(next);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::unordered_map<Mask, double> memo;
  auto xi = [&](auto&& self, Mask s) -> double {
    if (s == 0) return 1.0;
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    const int v = std::countr_zero(s);
    double total = self(self, s & ~(Mask{1} << v));
    for (Mask p : connected_containing(v, s)) {
      const Complex w = table.weight(sites_of(p));
      if (w != Complex(0.0)) total += w.real() * self(self, s & ~closure(p));
    }
    memo.emplace(s, total);
    return total;
  };
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  return std::exp(-table.beta * table.f0_total()) * xi(xi, all);
}

double ursell_factor(const std::vector<std::vector<bool>>& incompatible) {
  const std::size_t k = incompatible.size();
  std::vector<Mask> adj(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (incompatible[i].size() != k) throw InvalidArgument("ursell_factor: matrix not square");
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && incompatible[i][j]) {
        if (!incompatible[j][i]) throw InvalidArgument("ursell_factor: matrix not symmetric");
        adj[i] |= Mask{1} << j;
      }
    }
  }
  return ursell_from_adjacency(adj);
}

double ursell_factor(const std::vector<std::vector<int>>& polymers,
                     const std::vector<std::vector<int>>& coupling) {
  const std::size_t k = polymers.size();
  std::vector<std::vector<bool>> inc(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) {
    std::set<int> reach(polymers[i].begin(), polymers[i].end());
    for (int x : polymers[i]) {
      for (int y : coupling.at(x)) reach.insert(y);
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      for (int y : polymers[j]) {
        if (reach.count(y)) {
          inc[i][j] = inc[j][i] = true;
          break;
        }
      }
    }
  }
  return ursell_factor(inc);
}

ClusterExpansionResult cluster_free_energy(int dimension, int nmax, const ModelParams& params,
                                           const PotentialSpec& pot, FamilySet families,
                                           int size_cutoff, int k_cutoff) {
  if (dimension < 1) throw InvalidArgument("cluster_free_energy: dimension must be positive");
  if (size_cutoff < 2 || k_cutoff < 1) {
    throw InvalidArgument("cluster_free_energy: size_cutoff >= 2 and k_cutoff >= 1 required");
  }
  params.validate();
  if (families.contains(Family::kP) && params.h != 0.0) {
    throw InvalidArgument("cluster_free_energy: the staggered field breaks translation invariance");
  }
  const double beta = params.beta;

  // Coupling offsets and single-site free energy, read off a small arena.
  const int reach = std::max(1, static_cast<int>(std::floor(pot.cutoff + 1e-9)));
  const LatticeBox arena = LatticeBox::open(std::vector<int>(dimension, 2 * reach + 1));
  const Point centre(dimension, reach);
  const int c = arena.index(SiteCoord{centre});
  const InteractionSpec arena_spec = build_interaction_terms(arena, nmax, params, pot, families);
  const auto arena_graph = coupling_graph(arena_spec);
  std::vector<Point> offsets;
  for (int y : arena_graph[c]) offsets.push_back(sub(arena.coord(y).coords, centre));
  ClusterExpansionResult res;
  res.f0 = single_site_F0(arena_spec, c, beta);
  res.shells.assign(size_cutoff + 1, 0.0);

  // Connected shapes, canonical up to translation.
  std::set<Shape> found;
  std::vector<Shape> frontier{Shape{Point(dimension, 0)}};
  std::vector<ShapeWeight> shapes;
  for (int size = 2; size <= size_cutoff; ++size) {
    std::set<Shape> next;
    for (const auto& s : frontier) {
      for (const auto& p : s) {
        for (const auto& o : offsets) {
          const Point q = add(p, o);
          if (std::binary_search(s.begin(), s.end(), q)) continue;
          Shape t = s;
          t.insert(std::lower_bound(t.begin(), t.end(), q), q);
          next.insert(canonical(std::move(t)));
        }
      }
    }
    frontier.assign(next.begin(), next.end());
    for (const auto& s : frontier) {
      std::vector<int> lo(dimension, 0), hi(dimension, 0);
      for (const auto& p : s) {
        for (int a = 0; a < dimension; ++a) {
          lo[a] = std::min(lo[a], p[a]);
          hi[a] = std::max(hi[a], p[a]);
        }
      }
      std::vector<int> dims(dimension);
      for (int a = 0; a < dimension; ++a) dims[a] = hi[a] - lo[a] + 1;
      const LatticeBox local = LatticeBox::open(dims);
      const InteractionSpec spec = build_interaction_terms(local, nmax, params, pot, families);
      std::vector<int> support;
      for (const auto& p : s) support.push_back(local.index(SiteCoord{sub(p, lo)}));
      std::sort(support.begin(), support.end());
      const double w = polymer_weight(spec, support, beta, size_cutoff).real();
      if (w != 0.0) shapes.push_back({s, w});
    }
  }
  res.shapes = static_cast<long>(shapes.size());

  // Translates of shapes, registered on demand.
  std::map<Shape, int> ids;
  std::vector<ClusterPolymer> polymers;
  auto id_of = [&](Shape cells, double w) {
    auto [it, inserted] = ids.try_emplace(cells, static_cast<int>(polymers.size()));
    if (inserted) polymers.push_back({std::move(cells), w});
    return it->second;
  };
  auto incompatible = [&](const Shape& a, const Shape& b) {
    for (const auto& p : a) {
      if (std::binary_search(b.begin(), b.end(), p)) return true;
      for (const auto& o : offsets) {
        if (std::binary_search(b.begin(), b.end(), add(p, o))) return true;
      }
    }
    return false;
  };
  std::map<int, std::vector<int>> neighbours_cache;
  auto incompatible_with = [&](int id) -> const std::vector<int>& {
    auto it = neighbours_cache.find(id);
    if (it != neighbours_cache.end()) return it->second;
    std::set<int> out;
    const Shape cells = polymers[id].cells;
    std::vector<Point> touch = {Point(dimension, 0)};
    touch.insert(touch.end(), offsets.begin(), offsets.end());
    for (const auto& p : cells) {
      for (const auto& o : touch) {
        const Point q = add(p, o);
        for (const auto& sw : shapes) {
          // Shapes come in increasing size.
          if (cells.size() + sw.shape.size() > static_cast<std::size_t>(size_cutoff)) break;
          for (const auto& s : sw.shape) out.insert(id_of(translate(sw.shape, sub(q, s)), sw.w));
        }
      }
    }
    return neighbours_cache.emplace(id, std::vector<int>(out.begin(), out.end())).first->second;
  };

  std::set<std::vector<int>> level;
  for (const auto& sw : shapes) {
    for (const auto& s : sw.shape) level.insert({id_of(translate(sw.shape, sub(Point(dimension, 0), s)), sw.w)});
  }
  auto size_of = [&](const std::vector<int>& m) {
    int total = 0;
    for (int id : m) total += static_cast<int>(polymers[id].cells.size());
    return total;
  };
  for (int k = 1; k <= k_cutoff && !level.empty(); ++k) {
    std::set<std::vector<int>> next;
    for (const auto& m : level) {
      const int n = size_of(m);
      std::vector<Mask> adj(m.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
          if (m[i] == m[j] || incompatible(polymers[m[i]].cells, polymers[m[j]].cells)) {
            adj[i] |= Mask{1} << j;
            adj[j] |= Mask{1} << i;
          }
        }
      }
      const double phi = ursell_from_adjacency(adj);
      std::set<Point> uni;
      std::map<int, int> copies;
      double prod = 1.0, mult = 1.0;
      for (int id : m) {
        prod *= polymers[id].w;
        uni.insert(polymers[id].cells.begin(), polymers[id].cells.end());
        mult *= ++copies[id];
      }
      res.shells[n] -= phi * prod / (mult * static_cast<double>(uni.size())) / beta;
      ++res.clusters;
      if (k == k_cutoff) continue;
      for (int member : std::set<int>(m.begin(), m.end())) {
        for (int q : incompatible_with(member)) {
          if (n + static_cast<int>(polymers[q].cells.size()) > size_cutoff) continue;
          std::vector<int> grown = m;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), q), q);
          next.insert(std::move(grown));
        }
      }
    }
    level = std::move(next);
  }

  res.f = res.f0;
  for (double s : res.shells) res.f += s;
  res.tail = std::abs(res.shells[size_cutoff]);
  for (int n = 2; n + 2 <= size_cutoff; ++n) {
    const double a = std::abs(res.shells[n]), b = std::abs(res.shells[n + 1]),
                 d = std::abs(res.shells[n + 2]);
    if (a > 0 && a <= b && b <= d) {
      res.diverging = true;
      res.warning = "cluster shells do not decrease from size " + std::to_string(n) + " to " +
                    std::to_string(n + 2);
      break;
    }
  }
  return res;
}

WeightBoundReport weight_and_condition_check(const InteractionSpec& spec,
                                             const PolymerWeightTable& table, double r) {
  WeightBoundReport rep;
  rep.norm = interaction_norm(spec, {r, NormMode::kStar});
  rep.beta_norm = table.beta * rep.norm;
  rep.condition = rep.beta_norm < 1.0;
  const double per_site = std::log(spec.nmax + 1.0) - r + rep.beta_norm;
  for (const auto& [support, w] : table.weights) {
    const double bound = std::exp(static_cast<double>(support.size()) * per_site);
    const double ratio = std::abs(w) / bound;
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    if (ratio > 1.0) {
      rep.bounds_hold = false;
      rep.violations.push_back(support);
    }
  }
  return rep;
}

std::vector<double> duhamel_pair_weight(const InteractionSpec& spec, int x, int y, double beta,
                                        int m_max) {
  if (x == y) throw InvalidArgument("duhamel_pair_weight: need two distinct sites");
  if (m_max < 1) throw InvalidArgument("duhamel_pair_weight: m_max must be positive");
  std::vector<int> pair{std::min(x, y), std::max(x, y)};
  const FockBasis basis(spec.box, pair, spec.nmax);
  InteractionSpec single{spec.box, spec.nmax, {}};
  InteractionSpec coupling{spec.box, spec.nmax, {}};
  for (const auto& term : spec.terms) {
    (term.support.size() < 2 ? single : coupling).terms.push_back(term);
  }
  const DenseMatrix d = assemble_hamiltonian(basis, single).dense();
  const DenseMatrix off = d - DenseMatrix(d.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 1e-12 || d.diagonal().imag().cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("duhamel_pair_weight: single-site terms must be diagonal");
  }
  const DenseMatrix t = assemble_hamiltonian(basis, coupling).dense();
  const DuhamelResult res = duhamel_series_Z(d.diagonal().real(), t, beta, m_max);
  const double f0 = single_site_F0(spec, pair[0], beta) + single_site_F0(spec, pair[1], beta);
  std::vector<double> out;
  for (int m = 1; m <= m_max; ++m) {
    out.push_back(std::exp(beta * f0) * (res.partial_sums[m] - res.order_terms[0]));
  }
  return out;
}

}  // namespace bosonlab
