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

#include "bosonlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include "bosonlab/errors.hpp"

namespace bosonlab {

LatticeBox::LatticeBox(std::vector<int> dims, std::vector<bool> periodic)
    : dims_(std::move(dims)), periodic_(std::move(periodic)) {
  if (dims_.empty()) throw InvalidArgument("LatticeBox: empty dims");
  if (periodic_.size() == 1 && dims_.size() > 1) {
    periodic_.assign(dims_.size(), periodic_[0]);
  }
  if (periodic_.size() != dims_.size()) {
    throw InvalidArgument("LatticeBox: periodic flags do not match dims");
  }
  for (int L : dims_) {
    if (L < 1) throw InvalidArgument("LatticeBox: dimension must be >= 1");
  }
  const int d = dimension();
  strides_.assign(d, 1);
  for (int a = d - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * dims_[a + 1];
  size_ = strides_[0] * dims_[0];

  neighbors_.resize(size_);
  for (int s = 0; s < size_; ++s) {
    auto& nb = neighbors_[s];
    for (int a = 0; a < d; ++a) {
      for (int step : {+1, -1}) {
        const int y = shifted(s, a, step);
        if (y < 0 || y == s) continue;
        if (std::find(nb.begin(), nb.end(), y) == nb.end()) nb.push_back(y);
      }
    }
    std::sort(nb.begin(), nb.end());
  }
}

LatticeBox LatticeBox::torus(std::vector<int> dims) {
  std::vector<bool> p(dims.size(), true);
  return LatticeBox(std::move(dims), std::move(p));
}

LatticeBox LatticeBox::open(std::vector<int> dims) {
  std::vector<bool> p(dims.size(), false);
  return LatticeBox(std::move(dims), std::move(p));
}

bool LatticeBox::fully_periodic() const {
  return std::all_of(periodic_.begin(), periodic_.end(), [](bool p) { return p; });
}

bool LatticeBox::has_odd_periodic_axis() const {
  for (int a = 0; a < dimension(); ++a) {
    if (periodic_[a] && dims_[a] % 2 == 1) return true;
  }
  return false;
}

SiteCoord LatticeBox::coord(int site) const {
  if (site < 0 || site >= size_) throw InvalidArgument("LatticeBox: site index out of range");
  SiteCoord x;
  x.coords.resize(dims_.size());
  for (int a = 0; a < dimension(); ++a) {
    x.coords[a] = (site / strides_[a]) % dims_[a];
  }
  return x;
}

bool LatticeBox::contains(const SiteCoord& x) const {
  if (x.coords.size() != dims_.size()) return false;
  for (int a = 0; a < dimension(); ++a) {
    if (x.coords[a] < 0 || x.coords[a] >= dims_[a]) return false;
  }
  return true;
}

int LatticeBox::index(const SiteCoord& x) const {
  if (!contains(x)) throw InvalidArgument("LatticeBox: site outside the box");
  int s = 0;
  for (int a = 0; a < dimension(); ++a) s += x.coords[a] * strides_[a];
  return s;
}

SiteCoord LatticeBox::reduce(SiteCoord x) const {
  if (x.coords.size() != dims_.size()) {
    throw InvalidArgument("LatticeBox: coordinate has wrong dimension");
  }
  for (int a = 0; a < dimension(); ++a) {
    int& c = x.coords[a];
    if (periodic_[a]) {
      c %= dims_[a];
      if (c < 0) c += dims_[a];
    } else if (c < 0 || c >= dims_[a]) {
      throw InvalidArgument("LatticeBox: coordinate outside open axis");
    }
  }
  return x;
}

std::vector<int> LatticeBox::displacement(int x, int y) const {
  const SiteCoord cx = coord(x);
  const SiteCoord cy = coord(y);
  std::vector<int> delta(dims_.size());
  for (int a = 0; a < dimension(); ++a) {
    int dd = cy.coords[a] - cx.coords[a];
    if (periodic_[a]) {
      const int L = dims_[a];
      dd %= L;
      if (dd < 0) dd += L;
      if (dd > L / 2) dd -= L;
    }
    delta[a] = dd;
  }
  return delta;
}

double LatticeBox::distance(int x, int y) const {
  double s = 0.0;
  for (int dd : displacement(x, y)) s += static_cast<double>(dd) * dd;
  return std::sqrt(s);
}

double LatticeBox::distance(const SiteCoord& x, const SiteCoord& y) const {
  return distance(index(x), index(y));
}

bool LatticeBox::adjacent(int x, int y) const {
  const auto& nb = neighbors(x);
  return std::binary_search(nb.begin(), nb.end(), y);
}

int LatticeBox::shifted(int site, int axis, int step) const {
  SiteCoord x = coord(site);
  int& c = x.coords.at(axis);
  c += step;
  if (c < 0 || c >= dims_[axis]) {
    if (!periodic_[axis]) return -1;
    c = ((c % dims_[axis]) + dims_[axis]) % dims_[axis];
  }
  return index(x);
}

int LatticeBox::staggered_sign(int site) const {
  return bosonlab::staggered_sign(coord(site));
}

std::string LatticeBox::describe() const {
  std::ostringstream os;
  for (int a = 0; a < dimension(); ++a) {
    if (a) os << 'x';
    os << dims_[a];
  }
  os << (fully_periodic() ? " torus" : " box");
  if (!fully_periodic()) {
    os << " (periodic:";
    for (bool p : periodic_) os << ' ' << (p ? 1 : 0);
    os << ')';
  }
  return os.str();
}

LatticeBox build_box(std::vector<int> dims, std::vector<bool> periodic) {
  return LatticeBox(std::move(dims), std::move(periodic));
}

double distance(const LatticeBox& box, const SiteCoord& x, const SiteCoord& y) {
  return box.distance(x, y);
}

std::vector<SiteCoord> neighbors(const LatticeBox& box, const SiteCoord& x) {
  std::vector<SiteCoord> out;
  for (int y : box.neighbors(box.index(x))) out.push_back(box.coord(y));
  return out;
}

int staggered_sign(const SiteCoord& x) {
  long norm1 = 0;
  for (int c : x.coords) norm1 += std::abs(c);
  return (norm1 % 2 == 0) ? 1 : -1;
}

bool is_connected(const LatticeBox& box, std::span<const int> sites) {
  if (sites.empty()) return false;
  std::vector<int> set(sites.begin(), sites.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  std::vector<char> seen(set.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int y : box.neighbors(set[i])) {
      auto it = std::lower_bound(set.begin(), set.end(), y);
      if (it == set.end() || *it != y) continue;
      const auto j = static_cast<std::size_t>(it - set.begin());
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        stack.push_back(static_cast<int>(j));
      }
    }
  }
  return reached == set.size();
}

namespace {

std::vector<int> bfs_distances(const LatticeBox& box, int source) {
  std::vector<int> dist(box.size(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : box.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

int connected_span_size(const LatticeBox& box, std::span<const int> sites, int limit) {
  std::vector<int> terminals(sites.begin(), sites.end());
  if (terminals.empty()) throw InvalidArgument("connected_span_size: empty site set");
  for (int s : terminals) {
    if (s < 0 || s >= box.size()) throw InvalidArgument("connected_span_size: site outside box");
  }
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  const int k = static_cast<int>(terminals.size());
  if (k > limit) {
    throw UnsupportedSize("connected_span_size: " + std::to_string(k) +
                          " sites exceeds the exact search limit " + std::to_string(limit));
  }
  if (k == 1) return 1;

  // Dreyfus-Wagner with unit edge weights: dp[S][v] is the minimal number of
  // edges of a tree spanning terminals S together with v.
  const int n = box.size();
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  const int full = (1 << k) - 1;
  std::vector<std::vector<int>> dp(full + 1, std::vector<int>(n, kInf));
  for (int i = 0; i < k; ++i) {
    auto d = bfs_distances(box, terminals[i]);
    for (int v = 0; v < n; ++v) dp[1 << i][v] = d[v] < 0 ? kInf : d[v];
  }
  for (int S = 1; S <= full; ++S) {
    if ((S & (S - 1)) == 0) continue;
    auto& cur = dp[S];
    for (int sub = (S - 1) & S; sub > 0; sub = (sub - 1) & S) {
      if (sub < (S ^ sub)) continue;  // each split once
      const auto& a = dp[sub];
      const auto& b = dp[S ^ sub];
      for (int v = 0; v < n; ++v) cur[v] = std::min(cur[v], a[v] + b[v]);
    }
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int v = 0; v < n; ++v) {
      if (cur[v] < kInf) pq.emplace(cur[v], v);
    }
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d != cur[u]) continue;
      for (int v : box.neighbors(u)) {
        if (d + 1 < cur[v]) {
          cur[v] = d + 1;
          pq.emplace(d + 1, v);
        }
      }
    }
  }
  const int edges = *std::min_element(dp[full].begin(), dp[full].end());
  if (edges >= kInf) throw InvalidArgument("connected_span_size: sites are not connectable");
  return edges + 1;
}

}  // namespace bosonlab
