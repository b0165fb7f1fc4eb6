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

#ifndef BOSONLAB_CONTOURS_HPP
#define BOSONLAB_CONTOURS_HPP

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bosonlab/lattice.hpp"
#include "bosonlab/model.hpp"
#include "bosonlab/stochastic.hpp"

namespace bosonlab {

/// The box times M periodic time slices; cell (x, s) has index x * M + s.
LatticeBox spacetime_lattice(const LatticeBox& box, int slices);

/// M with beta / M times `energy_scale` close to one (at least 1).
int default_slice_count(double beta, double energy_scale);

/// A worldline seen through M time windows: for every site and slice, the
/// set of occupation values taken during the open window
/// ((s) beta/M, (s+1) beta/M).
class SpaceTimeConfig {
 public:
  static SpaceTimeConfig from_worldline(const LatticeBox& box, const Worldline& wl, int slices);
  /// Piecewise-constant configuration, one occupation vector per slice.
  static SpaceTimeConfig from_slices(const LatticeBox& box, double beta,
                                     const std::vector<std::vector<int>>& slices);

  const LatticeBox& box() const { return box_; }
  const LatticeBox& lattice() const { return lattice_; }
  int slices() const { return slices_; }
  double beta() const { return beta_; }
  double slice_height() const { return beta_ / slices_; }

  /// Bit v is set when n = v occurs in the window (values >= 7 share bit 7).
  std::uint8_t values(int site, int slice) const {
    return values_[static_cast<std::size_t>(site) * slices_ + slice];
  }

 private:
  SpaceTimeConfig(const LatticeBox& box, double beta, int slices);
  void mark(int site, int slice, int value);

  LatticeBox box_;
  LatticeBox lattice_;
  double beta_;
  int slices_;
  std::vector<std::uint8_t> values_;
};

inline constexpr int kExcited = -1;

/// Per cell: a RefConfig value, or kExcited. A cell takes the first
/// reference (empty, chessboard A, chessboard B, full) that agrees with the
/// configuration on the ball |y - x| <= 1 for the whole window.
std::vector<int> classify_cells(const SpaceTimeConfig& stc);

struct BoundaryComponent {
  /// Number of unit faces, edges and corners C(x) ∩ C(y) making it up.
  int pieces = 0;
  /// Labels of the non-excited outside cells touching it.
  std::set<RefConfig> labels;
};

/// Connected components of the boundary of a cell set: the union of the
/// closed intersections C(x) ∩ C(y), x in A, y not in A. `cell_labels` may
/// be empty, in which case no labels are collected.
std::vector<BoundaryComponent> boundary_components(const LatticeBox& lattice,
                                                   const std::vector<int>& cells,
                                                   const std::vector<int>& cell_labels = {});

struct Contour {
  std::vector<int> support;  // sorted cell indices
  std::vector<BoundaryComponent> boundaries;
  /// Per space-time axis (time last).
  std::vector<bool> winding;
  /// Every boundary component carries exactly one label.
  bool labelled = false;
};

struct ContourSet {
  std::vector<Contour> contours;
  std::vector<int> cell_labels;
  bool admissible = true;
  std::vector<std::string> problems;
  /// |W_j| for each reference label.
  std::array<long, 4> region_sizes{};
};

ContourSet extract_contours(const SpaceTimeConfig& stc);

/// Per axis: does `support` contain a non-contractible loop around it?
std::vector<bool> detect_winding(const LatticeBox& lattice, const std::vector<int>& support);

}  // namespace bosonlab

#endif  // BOSONLAB_CONTOURS_HPP
