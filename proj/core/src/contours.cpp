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

#include "bosonlab/contours.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "bosonlab/errors.hpp"

namespace bosonlab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Closed box C(x) ∩ C(y) in doubled coordinates, one interval per axis.
struct Piece {
  int inside;
  int outside;
  std::vector<std::pair<int, int>> iv;
};

bool intervals_meet(std::pair<int, int> a, std::pair<int, int> b, bool periodic, int length) {
  if (!periodic) return std::max(a.first, b.first) <= std::min(a.second, b.second);
  const int c = 2 * length;
  for (int k = -2; k <= 2; ++k) {
    if (std::max(a.first, b.first + k * c) <= std::min(a.second, b.second + k * c)) return true;
  }
  return false;
}

bool pieces_meet(const Piece& p, const Piece& q, const LatticeBox& lattice) {
  for (int a = 0; a < lattice.dimension(); ++a) {
    if (!intervals_meet(p.iv[a], q.iv[a], lattice.periodic(a), lattice.dims()[a])) return false;
  }
  return true;
}

std::vector<std::vector<int>> offsets(int dim, int reach) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(dim, -reach);
  while (true) {
    out.push_back(d);
    int a = 0;
    while (a < dim && d[a] == reach) d[a++] = -reach;
    if (a == dim) break;
    ++d[a];
  }
  return out;
}

// Cell at x + delta, or -1 when it leaves an open axis.
int offset_cell(const LatticeBox& lattice, const SiteCoord& x, const std::vector<int>& delta) {
  SiteCoord y = x;
  for (int a = 0; a < lattice.dimension(); ++a) {
    int& c = y.coords[a];
    c += delta[a];
    const int L = lattice.dims()[a];
    if (c < 0 || c >= L) {
      if (!lattice.periodic(a)) return -1;
      c = ((c % L) + L) % L;
    }
  }
  return lattice.index(y);
}

std::vector<std::vector<int>> components(const LatticeBox& lattice, const std::vector<char>& in) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(in.size(), 0);
  for (int c = 0; c < lattice.size(); ++c) {
    if (!in[c] || seen[c]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    q.push(c);
    seen[c] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      comp.push_back(u);
      for (int v : lattice.neighbors(u)) {
        if (in[v] && !seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

LatticeBox spacetime_lattice(const LatticeBox& box, int slices) {
  if (slices < 1) throw InvalidArgument("spacetime_lattice: at least one slice");
  std::vector<int> dims = box.dims();
  std::vector<bool> periodic = box.periodic();
  dims.push_back(slices);
  periodic.push_back(true);
  return LatticeBox(std::move(dims), std::move(periodic));
}

int default_slice_count(double beta, double energy_scale) {
  if (!(beta > 0)) throw InvalidArgument("default_slice_count: beta must be positive");
  const double m = std::round(beta * std::abs(energy_scale));
  return static_cast<int>(std::clamp(m, 1.0, 4096.0));
}

SpaceTimeConfig::SpaceTimeConfig(const LatticeBox& box, double beta, int slices)
    : box_(box), lattice_(spacetime_lattice(box, slices)), beta_(beta), slices_(slices),
      values_(static_cast<std::size_t>(box.size()) * slices, 0) {
  if (!(beta > 0)) throw InvalidArgument("SpaceTimeConfig: beta must be positive");
}

void SpaceTimeConfig::mark(int site, int slice, int value) {
  values_[static_cast<std::size_t>(site) * slices_ + slice] |=
      static_cast<std::uint8_t>(1u << std::min(value, 7));
}

SpaceTimeConfig SpaceTimeConfig::from_slices(const LatticeBox& box, double beta,
                                             const std::vector<std::vector<int>>& slices) {
  if (slices.empty()) throw InvalidArgument("SpaceTimeConfig: no slices");
  SpaceTimeConfig st(box, beta, static_cast<int>(slices.size()));
  for (int s = 0; s < st.slices_; ++s) {
    if (static_cast<int>(slices[s].size()) != box.size()) {
      throw InvalidArgument("SpaceTimeConfig: slice length does not match the box");
    }
    for (int x = 0; x < box.size(); ++x) {
      if (slices[s][x] < 0) throw InvalidArgument("SpaceTimeConfig: negative occupation");
      st.mark(x, s, slices[s][x]);
    }
  }
  return st;
}

SpaceTimeConfig SpaceTimeConfig::from_worldline(const LatticeBox& box, const Worldline& wl,
                                                int slices) {
  if (static_cast<int>(wl.initial.occupations.size()) != box.size()) {
    throw InvalidArgument("SpaceTimeConfig: worldline does not match the box");
  }
  SpaceTimeConfig st(box, wl.beta, slices);
  std::vector<int> n = wl.initial.occupations;
  const double h = wl.beta / slices;
  std::size_t j = 0;
  auto apply = [&](const JumpRecord& jr) {
    if (jr.from < 0 || jr.from >= box.size() || jr.to < 0 || jr.to >= box.size() ||
        n[jr.from] <= 0) {
      throw InvalidArgument("SpaceTimeConfig: inconsistent jump record");
    }
    --n[jr.from];
    ++n[jr.to];
  };
  for (int s = 0; s < slices; ++s) {
    const double a = s * h;
    const double b = (s + 1) * h;
    while (j < wl.jumps.size() && wl.jumps[j].time <= a) apply(wl.jumps[j++]);
    for (int x = 0; x < box.size(); ++x) st.mark(x, s, n[x]);
    while (j < wl.jumps.size() && wl.jumps[j].time < b) {
      const JumpRecord& jr = wl.jumps[j++];
      apply(jr);
      st.mark(jr.from, s, n[jr.from]);
      st.mark(jr.to, s, n[jr.to]);
    }
  }
  return st;
}

std::vector<int> classify_cells(const SpaceTimeConfig& stc) {
  const LatticeBox& box = stc.box();
  std::array<std::vector<int>, 4> refs;
  for (int r = 0; r < 4; ++r) refs[r] = reference_configuration(box, static_cast<RefConfig>(r));
  const int m = stc.slices();
  std::vector<int> label(static_cast<std::size_t>(box.size()) * m, kExcited);
  for (int x = 0; x < box.size(); ++x) {
    std::vector<int> ball{x};
    for (int y : box.neighbors(x)) ball.push_back(y);
    for (int s = 0; s < m; ++s) {
      for (int r = 0; r < 4; ++r) {
        const bool match = std::all_of(ball.begin(), ball.end(), [&](int y) {
          return stc.values(y, s) == (1u << refs[r][y]);
        });
        if (match) {
          label[static_cast<std::size_t>(x) * m + s] = r;
          break;
        }
      }
    }
  }
  return label;
}

std::vector<BoundaryComponent> boundary_components(const LatticeBox& lattice,
                                                   const std::vector<int>& cells,
                                                   const std::vector<int>& cell_labels) {
  if (cells.empty()) throw InvalidArgument("boundary_components: empty cell set");
  const int nu = lattice.dimension();
  std::vector<char> in(lattice.size(), 0);
  for (int c : cells) {
    if (c < 0 || c >= lattice.size()) throw InvalidArgument("boundary_components: bad cell");
    in[c] = 1;
  }
  const auto unit = offsets(nu, 1);
  const auto near = offsets(nu, 2);

  std::vector<Piece> pieces;
  std::vector<std::vector<int>> by_anchor(lattice.size());
  for (int x : cells) {
    if (in[x] == 2) continue;  // duplicate entry
    in[x] = 2;
    const SiteCoord cx = lattice.coord(x);
    for (const auto& d : unit) {
      if (std::all_of(d.begin(), d.end(), [](int v) { return v == 0; })) continue;
      const int y = offset_cell(lattice, cx, d);
      if (y < 0 || in[y]) continue;
      Piece p{x, y, std::vector<std::pair<int, int>>(nu)};
      for (int a = 0; a < nu; ++a) {
        const int c2 = 2 * cx.coords[a];
        p.iv[a] = d[a] == 0 ? std::make_pair(c2 - 1, c2 + 1)
                            : std::make_pair(c2 + d[a], c2 + d[a]);
      }
      by_anchor[x].push_back(static_cast<int>(pieces.size()));
      pieces.push_back(std::move(p));
    }
  }

  UnionFind uf(pieces.size());
  for (int x : cells) {
    if (by_anchor[x].empty()) continue;
    const SiteCoord cx = lattice.coord(x);
    std::vector<int> around;
    for (const auto& d : near) {
      const int z = offset_cell(lattice, cx, d);
      if (z >= 0) around.push_back(z);
    }
    std::sort(around.begin(), around.end());
    around.erase(std::unique(around.begin(), around.end()), around.end());
    for (int z : around) {
      if (z < x) continue;
      for (int i : by_anchor[x]) {
        for (int k : by_anchor[z]) {
          if (i != k && pieces_meet(pieces[i], pieces[k], lattice)) uf.unite(i, k);
        }
      }
    }
  }

  std::map<std::size_t, std::size_t> comp_of;
  std::vector<BoundaryComponent> out;
  std::vector<std::set<std::vector<std::pair<int, int>>>> distinct;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::size_t root = uf.find(i);
    auto [it, inserted] = comp_of.try_emplace(root, out.size());
    if (inserted) {
      out.emplace_back();
      distinct.emplace_back();
    }
    const std::size_t c = it->second;
    // Normalise periodic coordinates so coinciding pieces count once.
    auto key = pieces[i].iv;
    for (int a = 0; a < nu; ++a) {
      if (!lattice.periodic(a)) continue;
      const int per = 2 * lattice.dims()[a];
      const int shift = ((key[a].first % per) + per) % per - key[a].first;
      key[a].first += shift;
      key[a].second += shift;
    }
    distinct[c].insert(std::move(key));
    if (!cell_labels.empty()) {
      const int lab = cell_labels.at(pieces[i].outside);
      if (lab != kExcited) out[c].labels.insert(static_cast<RefConfig>(lab));
    }
  }
  for (std::size_t c = 0; c < out.size(); ++c) out[c].pieces = static_cast<int>(distinct[c].size());
  return out;
}

std::vector<bool> detect_winding(const LatticeBox& lattice, const std::vector<int>& support) {
  const int nu = lattice.dimension();
  std::vector<bool> wind(nu, false);
  std::vector<char> in(lattice.size(), 0);
  for (int c : support) in.at(c) = 1;
  std::vector<std::vector<long>> lift(lattice.size());
  std::vector<char> seen(lattice.size(), 0);
  for (int root : support) {
    if (seen[root]) continue;
    seen[root] = 1;
    lift[root].assign(nu, 0);
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int a = 0; a < nu; ++a) {
        if (!lattice.periodic(a)) continue;
        for (int step : {+1, -1}) {
          const int v = lattice.shifted(u, a, step);
          if (v < 0 || !in[v]) continue;
          std::vector<long> l = lift[u];
          l[a] += step;
          if (!seen[v]) {
            seen[v] = 1;
            lift[v] = std::move(l);
            q.push(v);
          } else {
            for (int b = 0; b < nu; ++b) {
              if (l[b] != lift[v][b]) wind[b] = true;
            }
          }
        }
      }
    }
  }
  return wind;
}

ContourSet extract_contours(const SpaceTimeConfig& stc) {
  const LatticeBox& lattice = stc.lattice();
  ContourSet out;
  out.cell_labels = classify_cells(stc);
  std::vector<char> excited(lattice.size(), 0);
  for (int c = 0; c < lattice.size(); ++c) excited[c] = out.cell_labels[c] == kExcited;

  for (auto& supp : components(lattice, excited)) {
    Contour k;
    k.boundaries = boundary_components(lattice, supp, out.cell_labels);
    k.winding = detect_winding(lattice, supp);
    k.labelled = std::all_of(k.boundaries.begin(), k.boundaries.end(),
                             [](const BoundaryComponent& b) { return b.labels.size() == 1; });
    if (!k.labelled) {
      out.admissible = false;
      std::ostringstream os;
      os << "contour at cell " << supp.front() << " has a boundary component with ";
      bool unlabeled = false;
      for (const auto& b : k.boundaries) unlabeled = unlabeled || b.labels.empty();
      os << (unlabeled ? "no adjacent reference label" : "conflicting labels");
      out.problems.push_back(os.str());
    }
    k.support = std::move(supp);
    out.contours.push_back(std::move(k));
  }

  std::vector<char> calm(lattice.size(), 0);
  for (int c = 0; c < lattice.size(); ++c) calm[c] = !excited[c];
  for (const auto& w : components(lattice, calm)) {
    std::set<int> labels;
    for (int c : w) labels.insert(out.cell_labels[c]);
    if (labels.size() == 1) {
      out.region_sizes[*labels.begin()] += static_cast<long>(w.size());
    } else {
      out.admissible = false;
      std::ostringstream os;
      os << "complement component at cell " << w.front() << " carries " << labels.size()
         << " different labels";
      out.problems.push_back(os.str());
    }
  }
  return out;
}

}  // namespace bosonlab
