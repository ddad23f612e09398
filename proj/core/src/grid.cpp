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

#include "dpdbscan/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpdbscan/errors.hpp"

namespace dpdbscan {
namespace {

std::int64_t axis_cell_count(double width) {
  const double inv = 1.0 / width;
  const double nearest = std::round(inv);
  // Snap 1/w that is an integer up to round-off (e.g. w = 0.25 computed as
  // 0.25000000000000006) so the grid has no sliver cell.
  if (std::abs(inv - nearest) <= 1e-9 * nearest) {
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(nearest));
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(inv)));
}

// Squared gap between two cells in whole-cell units.
std::int64_t gap_squared(std::span<const std::int64_t> a,
                         std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t g = std::max<std::int64_t>(0, std::abs(a[i] - b[i]) - 1);
    s += g * g;
  }
  return s;
}

}  // namespace

GridSpec::GridSpec(int dim, double alpha, double eta_prime)
    : dim_(dim), alpha_(alpha), eta_prime_(eta_prime) {
  if (dim < 1) throw ParameterError("GridSpec: dimension must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("GridSpec: alpha must lie in (0, 1) in normalized units, got " +
                         std::to_string(alpha));
  }
  if (!(eta_prime > 0.0 && eta_prime <= 1.0)) {
    throw ParameterError("GridSpec: eta' must lie in (0, 1]");
  }
  width_ = eta_prime * alpha / std::sqrt(static_cast<double>(dim));
  cells_per_axis_ = axis_cell_count(width_);
  reach_squared_ = static_cast<double>(dim) / (eta_prime * eta_prime);
  offset_radius_ = static_cast<std::int64_t>(std::ceil(std::sqrt(reach_squared_)));

  std::uint64_t universe = 1;
  const auto k = static_cast<std::uint64_t>(cells_per_axis_);
  for (int i = 0; i < dim; ++i) {
    if (universe > kMaxUniverse / k) {
      throw CapacityError("GridSpec: " + std::to_string(cells_per_axis_) + "^" +
                          std::to_string(dim) +
                          " cells exceed the indexable universe; increase alpha or eta'");
    }
    universe *= k;
  }
  universe_size_ = universe;
}

bool GridSpec::contains(const CellIndex& cell) const {
  if (static_cast<int>(cell.coords.size()) != dim_) return false;
  return std::all_of(cell.coords.begin(), cell.coords.end(), [&](std::int64_t c) {
    return c >= 0 && c < cells_per_axis_;
  });
}

CellId GridSpec::to_id(const CellIndex& cell) const {
  if (!contains(cell)) throw ParameterError("GridSpec::to_id: cell outside grid");
  CellId id = 0;
  for (const std::int64_t c : cell.coords) {
    id = id * static_cast<CellId>(cells_per_axis_) + static_cast<CellId>(c);
  }
  return id;
}

void GridSpec::decode(CellId id, std::span<std::int64_t> coords) const {
  const auto k = static_cast<CellId>(cells_per_axis_);
  for (int i = dim_ - 1; i >= 0; --i) {
    coords[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(id % k);
    id /= k;
  }
}

CellIndex GridSpec::from_id(CellId id) const {
  if (id >= universe_size_) throw ParameterError("GridSpec::from_id: id out of range");
  CellIndex cell{std::vector<std::int64_t>(static_cast<std::size_t>(dim_))};
  decode(id, cell.coords);
  return cell;
}

void GridSpec::cell_box(const CellIndex& cell, std::span<double> lo,
                        std::span<double> hi) const {
  for (int i = 0; i < dim_; ++i) {
    const auto c = static_cast<double>(cell.coords[static_cast<std::size_t>(i)]);
    lo[static_cast<std::size_t>(i)] = std::min(1.0, c * width_);
    hi[static_cast<std::size_t>(i)] = std::min(1.0, (c + 1.0) * width_);
  }
}

CellIndex cell_of(const GridSpec& grid, std::span<const double> p) {
  if (static_cast<int>(p.size()) != grid.dim()) {
    throw ParameterError("cell_of: point dimension does not match grid");
  }
  CellIndex cell{std::vector<std::int64_t>(p.size())};
  const std::int64_t last = grid.cells_per_axis() - 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError("cell_of: coordinate " + std::to_string(x) +
                        " outside [0, 1]; rescale the data first");
    }
    cell.coords[i] =
        std::min(last, static_cast<std::int64_t>(std::floor(x / grid.width())));
  }
  return cell;
}

CellId cell_id_of(const GridSpec& grid, std::span<const double> p) {
  const auto k = static_cast<CellId>(grid.cells_per_axis());
  const std::int64_t last = grid.cells_per_axis() - 1;
  const double w = grid.width();
  CellId id = 0;
  for (const double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError("cell_of: coordinate " + std::to_string(x) +
                        " outside [0, 1]; rescale the data first");
    }
    const std::int64_t c = std::min(last, static_cast<std::int64_t>(x / w));
    id = id * k + static_cast<CellId>(c);
  }
  return id;
}

double min_cell_distance(const GridSpec& grid, const CellIndex& a,
                         const CellIndex& b) {
  return grid.width() *
         std::sqrt(static_cast<double>(gap_squared(a.coords, b.coords)));
}

bool cells_within_alpha(const GridSpec& grid, const CellIndex& a,
                        const CellIndex& b) {
  return static_cast<double>(gap_squared(a.coords, b.coords)) <
         grid.reach_squared();
}

NeighborStencil::NeighborStencil(const GridSpec& grid) : grid_(grid) {
  const std::size_t d = static_cast<std::size_t>(grid.dim());
  const std::int64_t r = grid.offset_radius();
  const std::int64_t k = grid.cells_per_axis();
  std::vector<std::int64_t> off(d, -r);
  const std::vector<std::int64_t> origin(d, 0);
  // Odometer over [-r, r]^d in lexicographic order.
  while (true) {
    if (static_cast<double>(gap_squared(off, origin)) < grid.reach_squared()) {
      std::int64_t delta = 0;
      for (std::size_t i = 0; i < d; ++i) delta = delta * k + off[i];
      offsets_.insert(offsets_.end(), off.begin(), off.end());
      deltas_.push_back(delta);
    }
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (off[i] < r) {
        ++off[i];
        break;
      }
      off[i] = -r;
      if (i == 0) return;
    }
  }
}

std::vector<CellIndex> neighborhood(const GridSpec& grid,
                                    const CellIndex& cell) {
  if (!grid.contains(cell)) throw ParameterError("neighborhood: cell outside grid");
  const NeighborStencil stencil(grid);
  std::vector<CellIndex> out;
  std::vector<std::int64_t> scratch(static_cast<std::size_t>(grid.dim()));
  stencil.for_each_neighbor(grid.to_id(cell), scratch,
                            [&](CellId id) { out.push_back(grid.from_id(id)); });
  return out;
}

std::size_t kappa(const GridSpec& grid) { return NeighborStencil(grid).size(); }

}  // namespace dpdbscan
