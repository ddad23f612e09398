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

#include "dpdbscan/histogram.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "dpdbscan/errors.hpp"

namespace dpdbscan {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    h ^= (word >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
}

// m distinct cells drawn uniformly from the universe minus the occupied cells.
std::vector<CellId> sample_empty_cells(Rng& rng, const FrequencyMap& freqs,
                                       std::uint64_t m) {
  const std::uint64_t universe = freqs.universe_size();
  const std::uint64_t empty = universe - freqs.size();
  std::vector<CellId> out;
  if (m == 0) return out;
  out.reserve(m);

  if (empty <= 4 * m) {
    // Dense regime: enumerate the complement and take a partial shuffle.
    std::vector<CellId> pool;
    pool.reserve(empty);
    auto it = freqs.entries().begin();
    for (CellId id = 0; id < universe; ++id) {
      if (it != freqs.entries().end() && it->cell == id) {
        ++it;
        continue;
      }
      pool.push_back(id);
    }
    for (std::uint64_t i = 0; i < m; ++i) {
      const std::uint64_t j = i + uniform_index(rng, empty - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

  // Sparse regime: rejection over the implicit universe, expected O(m) draws.
  std::unordered_set<CellId> seen;
  seen.reserve(static_cast<std::size_t>(m) * 2);
  while (out.size() < m) {
    const CellId id = uniform_index(rng, universe);
    if (freqs.contains(id)) continue;
    if (!seen.insert(id).second) continue;
    out.push_back(id);
  }
  return out;
}

}  // namespace

std::string_view to_string(HistogramMode mode) {
  return mode == HistogramMode::kNaive ? "naive" : "linear";
}

HistogramMode parse_histogram_mode(std::string_view name) {
  if (name == "naive") return HistogramMode::kNaive;
  if (name == "linear") return HistogramMode::kLinear;
  throw ParameterError("unknown histogram mode '" + std::string(name) + "'");
}

FrequencyMap::FrequencyMap(std::uint64_t universe_size, std::vector<CellCount> entries)
    : universe_size_(universe_size), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const CellCount& a, const CellCount& b) { return a.cell < b.cell; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].cell >= universe_size_) {
      throw ParameterError("FrequencyMap: cell id outside the universe");
    }
    if (entries_[i].count <= 0) throw ParameterError("FrequencyMap: counts must be positive");
    if (i > 0 && entries_[i].cell == entries_[i - 1].cell) {
      throw ParameterError("FrequencyMap: duplicate cell");
    }
    total_ += static_cast<std::uint64_t>(entries_[i].count);
  }
}

bool FrequencyMap::contains(CellId cell) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), cell,
      [](const CellCount& e, CellId id) { return e.cell < id; });
  return it != entries_.end() && it->cell == cell;
}

std::int64_t FrequencyMap::count(CellId cell) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), cell,
      [](const CellCount& e, CellId id) { return e.cell < id; });
  return it != entries_.end() && it->cell == cell ? it->count : 0;
}

FrequencyMap exact_counts(const PointSet& points, const GridSpec& grid) {
  if (!points.empty() && points.dim() != grid.dim()) {
    throw ParameterError("exact_counts: point dimension does not match grid");
  }
  std::unordered_map<CellId, std::int64_t> counts;
  counts.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    ++counts[cell_id_of(grid, points[i])];
  }
  std::vector<CellCount> entries;
  entries.reserve(counts.size());
  for (const auto& [cell, count] : counts) entries.push_back({cell, count});
  return FrequencyMap(grid.universe_size(), std::move(entries));
}

SparseHistogram::SparseHistogram(GridSpec grid, HistogramMode mode, double theta,
                                 double epsilon_spent, std::vector<HistEntry> entries)
    : grid_(std::move(grid)),
      mode_(mode),
      theta_(theta),
      epsilon_spent_(epsilon_spent),
      entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const HistEntry& a, const HistEntry& b) { return a.cell < b.cell; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].cell >= grid_.universe_size()) {
      throw ParameterError("SparseHistogram: cell id outside the universe");
    }
    if (i > 0 && entries_[i].cell == entries_[i - 1].cell) {
      throw ParameterError("SparseHistogram: duplicate cell");
    }
  }
}

double SparseHistogram::value(CellId cell) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), cell,
      [](const HistEntry& e, CellId id) { return e.cell < id; });
  return it != entries_.end() && it->cell == cell ? it->value : 0.0;
}

std::uint64_t SparseHistogram::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, static_cast<std::uint64_t>(grid_.dim()));
  fnv_mix(h, grid_.universe_size());
  fnv_mix(h, std::bit_cast<std::uint64_t>(grid_.width()));
  fnv_mix(h, mode_ == HistogramMode::kNaive ? 0 : 1);
  fnv_mix(h, std::bit_cast<std::uint64_t>(theta_));
  fnv_mix(h, std::bit_cast<std::uint64_t>(epsilon_spent_));
  for (const HistEntry& e : entries_) {
    fnv_mix(h, e.cell);
    fnv_mix(h, std::bit_cast<std::uint64_t>(e.value));
  }
  return h;
}

std::string SparseHistogram::fingerprint_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, fingerprint());
  return buf;
}

SparseHistogram build_naive(const FrequencyMap& freqs, const GridSpec& grid,
                            double eps, Rng& rng, const HistogramOptions& options) {
  if (!(eps > 0.0)) throw ParameterError("build_naive: epsilon must be > 0");
  if (freqs.universe_size() != grid.universe_size()) {
    throw ParameterError("build_naive: frequency map built over a different grid");
  }
  const std::uint64_t universe = grid.universe_size();
  if (universe > options.max_dense_cells) {
    throw CapacityError("build_naive: universe of " + std::to_string(universe) +
                        " cells exceeds the dense limit of " +
                        std::to_string(options.max_dense_cells) +
                        "; use the linear-time histogram");
  }
  std::vector<HistEntry> entries;
  entries.reserve(universe);
  const double scale = 1.0 / eps;
  auto it = freqs.entries().begin();
  for (CellId id = 0; id < universe; ++id) {
    double x = 0.0;
    if (it != freqs.entries().end() && it->cell == id) {
      x = static_cast<double>(it->count);
      ++it;
    }
    entries.push_back({id, x + sample_laplace(rng, scale)});
  }
  return SparseHistogram(grid, HistogramMode::kNaive, 0.0, eps, std::move(entries));
}

SparseHistogram build_linear(const FrequencyMap& freqs, const GridSpec& grid,
                             double eps, double theta, Rng& rng) {
  if (!(eps > 0.0)) throw ParameterError("build_linear: epsilon must be > 0");
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ParameterError("build_linear: theta must be positive and finite");
  }
  if (freqs.universe_size() != grid.universe_size()) {
    throw ParameterError("build_linear: frequency map built over a different grid");
  }
  const double scale = 1.0 / eps;
  std::vector<HistEntry> entries;
  entries.reserve(freqs.size());
  for (const CellCount& c : freqs.entries()) {
    const double noisy = static_cast<double>(c.count) + sample_laplace(rng, scale);
    if (noisy >= theta) entries.push_back({c.cell, noisy});
  }

  const std::uint64_t empty = grid.universe_size() - freqs.size();
  const double p = 0.5 * std::exp(-eps * theta);
  const std::uint64_t m = sample_binomial(rng, empty, p);
  const std::uint64_t n = freqs.total();
  if (m > 64 * n && m > 1'000'000) {
    throw ResourceError("build_linear: " + std::to_string(m) +
                        " empty cells crossed theta; raise theta");
  }
  for (const CellId cell : sample_empty_cells(rng, freqs, m)) {
    entries.push_back({cell, sample_clipped_laplace(rng, eps, theta)});
  }
  return SparseHistogram(grid, HistogramMode::kLinear, theta, eps, std::move(entries));
}

double choose_theta(std::uint64_t universe_size, std::uint64_t n, double eps) {
  if (!(eps > 0.0)) throw ParameterError("choose_theta: epsilon must be > 0");
  const std::uint64_t effective_n = std::max<std::uint64_t>(n, 1);
  if (2 * effective_n > universe_size) return 0.0;
  return std::max(0.0, std::log(static_cast<double>(universe_size) /
                                static_cast<double>(effective_n)) / eps);
}

void write_histogram_dump(std::ostream& out, const SparseHistogram& hist) {
  std::vector<std::int64_t> coords(static_cast<std::size_t>(hist.grid().dim()));
  char buf[32];
  for (const HistEntry& e : hist.entries()) {
    hist.grid().decode(e.cell, coords);
    for (const std::int64_t c : coords) out << c << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", e.value);
    out << buf << '\n';
  }
}

}  // namespace dpdbscan
