// Copyright 2026 The dpdbscan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPDBSCAN_GRID_HPP_
#define DPDBSCAN_GRID_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dpdbscan {

// Mixed-radix linear index of a cell. The first coordinate is the most
// significant digit, so id order equals lexicographic coordinate order.
using CellId = std::uint64_t;

struct CellIndex {
  std::vector<std::int64_t> coords;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

// Uniform decomposition of [0,1]^d into half-open cubes of width
// w = eta' * alpha / sqrt(d). Boundary cells may extend past 1.
class GridSpec {
 public:
  // Largest universe the grid will index.
  static constexpr std::uint64_t kMaxUniverse = std::uint64_t{1} << 62;

  GridSpec(int dim, double alpha, double eta_prime = 1.0);

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double eta_prime() const { return eta_prime_; }
  double width() const { return width_; }
  std::int64_t cells_per_axis() const { return cells_per_axis_; }
  std::uint64_t universe_size() const { return universe_size_; }

  // (alpha / w)^2 = d / eta'^2. Two cells whose gap, measured in whole cells,
  // has squared norm below this value are closer than alpha.
  double reach_squared() const { return reach_squared_; }
  // ceil(alpha / w): the largest per-axis offset of an alpha-neighbor.
  std::int64_t offset_radius() const { return offset_radius_; }

  bool contains(const CellIndex& cell) const;
  CellId to_id(const CellIndex& cell) const;
  CellIndex from_id(CellId id) const;
  void decode(CellId id, std::span<std::int64_t> coords) const;

  // Closed box of a cell clipped to the unit cube, as (lo, hi) per axis.
  void cell_box(const CellIndex& cell, std::span<double> lo,
                std::span<double> hi) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dim_;
  double alpha_;
  double eta_prime_;
  double width_;
  std::int64_t cells_per_axis_;
  std::uint64_t universe_size_;
  double reach_squared_;
  std::int64_t offset_radius_;
};

// Throws DomainError if any coordinate is outside [0,1] or not finite.
// Coordinates equal to 1.0 map to the last cell.
CellIndex cell_of(const GridSpec& grid, std::span<const double> p);
CellId cell_id_of(const GridSpec& grid, std::span<const double> p);

// Euclidean distance between the closed boxes of two cells.
double min_cell_distance(const GridSpec& grid, const CellIndex& a,
                         const CellIndex& b);

// min_cell_distance(a, b) < alpha, evaluated in whole-cell units so that the
// boundary case (distance exactly alpha) is decided without round-off.
bool cells_within_alpha(const GridSpec& grid, const CellIndex& a,
                        const CellIndex& b);

// Cells whose closed box meets the alpha-neighborhood of some location in
// `cell`, including `cell` itself, in lexicographic order.
std::vector<CellIndex> neighborhood(const GridSpec& grid,
                                    const CellIndex& cell);

// Relative offsets of an interior cell's alpha-neighborhood, precomputed once
// per grid. Used by every scan that visits neighbors by id.
class NeighborStencil {
 public:
  explicit NeighborStencil(const GridSpec& grid);

  // Number of cells in an interior neighborhood (kappa).
  std::size_t size() const { return deltas_.size(); }
  const GridSpec& grid() const { return grid_; }
  std::span<const std::int64_t> offset(std::size_t k) const {
    return {offsets_.data() + k * static_cast<std::size_t>(grid_.dim()),
            static_cast<std::size_t>(grid_.dim())};
  }

  // Calls f(neighbor_id) for every in-domain neighbor of `id`, in
  // lexicographic order. `scratch` must hold grid.dim() coordinates.
  template <typename F>
  void for_each_neighbor(CellId id, std::span<std::int64_t> scratch,
                         F&& f) const {
    grid_.decode(id, scratch);
    const std::size_t d = static_cast<std::size_t>(grid_.dim());
    const std::int64_t k = grid_.cells_per_axis();
    for (std::size_t s = 0; s < deltas_.size(); ++s) {
      const std::int64_t* off = offsets_.data() + s * d;
      bool inside = true;
      for (std::size_t i = 0; i < d; ++i) {
        const std::int64_t c = scratch[i] + off[i];
        if (c < 0 || c >= k) {
          inside = false;
          break;
        }
      }
      if (inside) {
        f(static_cast<CellId>(static_cast<std::int64_t>(id) + deltas_[s]));
      }
    }
  }

 private:
  GridSpec grid_;
  std::vector<std::int64_t> offsets_;
  std::vector<std::int64_t> deltas_;
};

// kappa for the grid: |neighborhood(interior cell)|.
std::size_t kappa(const GridSpec& grid);

}  // namespace dpdbscan

#endif  // DPDBSCAN_GRID_HPP_
