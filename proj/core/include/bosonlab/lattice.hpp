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

#ifndef BOSONLAB_LATTICE_HPP
#define BOSONLAB_LATTICE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bosonlab {

/// Integer coordinates of a site in Z^d.
struct SiteCoord {
  std::vector<int> coords;

  bool operator==(const SiteCoord&) const = default;
};

/// A finite box in Z^d with per-axis periodic or open boundaries.
///
/// Sites are enumerated row-major (the last axis varies fastest), so site
/// indices are stable for a given (dims, periodic) pair. Nearest-neighbour
/// lists are precomputed and deduplicated: on a periodic axis of length 2 the
/// two images of a neighbour coincide, and on length 1 the site would be its
/// own neighbour, which is dropped.
class LatticeBox {
 public:
  LatticeBox(std::vector<int> dims, std::vector<bool> periodic);

  static LatticeBox torus(std::vector<int> dims);
  static LatticeBox open(std::vector<int> dims);

  int dimension() const { return static_cast<int>(dims_.size()); }
  int size() const { return size_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<bool>& periodic() const { return periodic_; }
  bool periodic(int axis) const { return periodic_.at(axis); }
  bool fully_periodic() const;

  /// True when some periodic axis has odd length; chessboard reference
  /// configurations are frustrated on such boxes.
  bool has_odd_periodic_axis() const;

  SiteCoord coord(int site) const;
  int index(const SiteCoord& x) const;
  bool contains(const SiteCoord& x) const;

  /// Wraps periodic axes into [0, L). Throws for open axes out of range.
  SiteCoord reduce(SiteCoord x) const;

  /// Signed per-axis displacement y - x, minimal image on periodic axes.
  std::vector<int> displacement(int x, int y) const;
  double distance(int x, int y) const;
  double distance(const SiteCoord& x, const SiteCoord& y) const;

  const std::vector<int>& neighbors(int site) const { return neighbors_.at(site); }
  bool adjacent(int x, int y) const;

  /// Site reached by one step along `axis` in direction `step` (+1/-1), or -1
  /// when the step leaves an open box.
  int shifted(int site, int axis, int step) const;

  int staggered_sign(int site) const;

  std::string describe() const;

  bool operator==(const LatticeBox& other) const {
    return dims_ == other.dims_ && periodic_ == other.periodic_;
  }

 private:
  std::vector<int> dims_;
  std::vector<bool> periodic_;
  std::vector<int> strides_;
  int size_ = 0;
  std::vector<std::vector<int>> neighbors_;
};

LatticeBox build_box(std::vector<int> dims, std::vector<bool> periodic);

double distance(const LatticeBox& box, const SiteCoord& x, const SiteCoord& y);

std::vector<SiteCoord> neighbors(const LatticeBox& box, const SiteCoord& x);

/// (-1)^{|x|_1}.
int staggered_sign(const SiteCoord& x);

inline constexpr int kDefaultSpanSearchLimit = 6;

/// Cardinality of the smallest nearest-neighbour connected set containing
/// `sites`. Exact (Steiner tree dynamic programme over terminal subsets).
int connected_span_size(const LatticeBox& box, std::span<const int> sites,
                        int limit = kDefaultSpanSearchLimit);

/// True iff `sites` is connected under nearest-neighbour adjacency.
bool is_connected(const LatticeBox& box, std::span<const int> sites);

}  // namespace bosonlab

#endif  // BOSONLAB_LATTICE_HPP
