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

#ifndef DPDBSCAN_HISTOGRAM_HPP_
#define DPDBSCAN_HISTOGRAM_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dpdbscan/grid.hpp"
#include "dpdbscan/noise.hpp"
#include "dpdbscan/point_set.hpp"

namespace dpdbscan {

enum class HistogramMode { kNaive, kLinear };

std::string_view to_string(HistogramMode mode);
HistogramMode parse_histogram_mode(std::string_view name);

struct CellCount {
  CellId cell;
  std::int64_t count;
};

// Exact per-cell counts of the occupied cells, sorted by cell id.
class FrequencyMap {
 public:
  FrequencyMap(std::uint64_t universe_size, std::vector<CellCount> entries);

  std::uint64_t universe_size() const { return universe_size_; }
  const std::vector<CellCount>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // Number of points counted.
  std::uint64_t total() const { return total_; }
  bool contains(CellId cell) const;
  std::int64_t count(CellId cell) const;

 private:
  std::uint64_t universe_size_;
  std::vector<CellCount> entries_;
  std::uint64_t total_ = 0;
};

// Single pass over the points. Throws DomainError for points outside [0,1]^d.
FrequencyMap exact_counts(const PointSet& points, const GridSpec& grid);

struct HistEntry {
  CellId cell;
  double value;
};

// A released noisy histogram. Cells without an entry read as 0. For the naive
// release every cell of the universe has an entry (possibly negative); for the
// linear release every stored value is >= theta.
class SparseHistogram {
 public:
  SparseHistogram(GridSpec grid, HistogramMode mode, double theta,
                  double epsilon_spent, std::vector<HistEntry> entries);

  const GridSpec& grid() const { return grid_; }
  HistogramMode mode() const { return mode_; }
  double theta() const { return theta_; }
  double epsilon_spent() const { return epsilon_spent_; }
  std::uint64_t universe_size() const { return grid_.universe_size(); }
  const std::vector<HistEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  double value(CellId cell) const;

  // FNV-1a over the released content; identical releases share it.
  std::uint64_t fingerprint() const;
  std::string fingerprint_hex() const;

 private:
  GridSpec grid_;
  HistogramMode mode_;
  double theta_;
  double epsilon_spent_;
  std::vector<HistEntry> entries_;
};

struct HistogramOptions {
  // Largest universe the dense release will materialize.
  std::uint64_t max_dense_cells = 100'000'000;
};

// x_i + Lap(1/eps) for every cell of the universe. O(|X|) time and space.
// Throws CapacityError when the universe exceeds options.max_dense_cells.
SparseHistogram build_naive(const FrequencyMap& freqs, const GridSpec& grid,
                            double eps, Rng& rng,
                            const HistogramOptions& options = {});

// High-pass-filter release: same law as build_naive followed by zeroing every
// value below theta, in O(n + m) expected time where m ~ Bin(M, e^{-eps theta}/2)
// is the number of empty cells that surface above the threshold.
SparseHistogram build_linear(const FrequencyMap& freqs, const GridSpec& grid,
                             double eps, double theta, Rng& rng);

// (1/eps) ln(|X| / n), or 0 when n > |X| / 2 (dense release preferred).
// n = 0 is treated as n = 1.
double choose_theta(std::uint64_t universe_size, std::uint64_t n, double eps);

// One line per entry: c_0,...,c_{d-1},value in lexicographic cell order.
void write_histogram_dump(std::ostream& out, const SparseHistogram& hist);

}  // namespace dpdbscan

#endif  // DPDBSCAN_HISTOGRAM_HPP_
