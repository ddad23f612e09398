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

#ifndef DPDBSCAN_DP_DBSCAN_HPP_
#define DPDBSCAN_DP_DBSCAN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpdbscan/grid.hpp"
#include "dpdbscan/histogram.hpp"
#include "dpdbscan/noise.hpp"
#include "dpdbscan/oracle.hpp"
#include "dpdbscan/point_set.hpp"
#include "dpdbscan/span_set.hpp"

namespace dpdbscan {

enum class HistogramChoice { kAuto, kNaive, kLinear };

HistogramChoice parse_histogram_choice(std::string_view name);

struct PipelineOptions {
  HistogramChoice histogram = HistogramChoice::kAuto;
  // Threshold for the linear release; chosen from n and |X| when absent.
  std::optional<double> theta;
  HistogramOptions limits;
  // Shift MinPts by Gamma instead of tau = 2 Gamma. Experimental; voids the
  // second sandwich condition's proof.
  bool one_sided_shift = false;
  // Recorded in provenance only.
  std::optional<std::uint64_t> seed;
};

// The DP output of the pipeline plus the public parameters that describe it.
// Everything downstream of this struct is post-processing.
struct ReleasedHistogram {
  SparseHistogram histogram;
  PrivacyParams privacy;  // theta holds the threshold actually used
  ApproxBounds bounds;
  bool one_sided_shift = false;
  std::optional<std::uint64_t> seed;
};

// Counts the points per cell and releases the noisy histogram. This is the
// only step that reads the points; it spends privacy.epsilon once.
ReleasedHistogram release_histogram(const PointSet& points, const GridSpec& grid,
                                    const PrivacyParams& privacy, Rng& rng,
                                    const PipelineOptions& options = {});

// Sum of released counts over neighborhood(cell), absent cells counting 0,
// plus big_gamma.
double noisy_ub(const SparseHistogram& hist, const CellIndex& cell, double big_gamma);

// {X : noisy_ub(X) >= min_pts_effective}, sorted by id. Visits only cells
// near stored entries unless big_gamma alone reaches the threshold, in which
// case the whole universe qualifies and is enumerated (subject to `limits`).
std::vector<CellId> find_core_cells(const SparseHistogram& hist,
                                    double min_pts_effective, double big_gamma,
                                    const HistogramOptions& limits = {});

// Connected components of `core_cells` under min_cell_distance < alpha. Span
// ids follow the lexicographically least cell of each component.
SpanSet merge_cells(std::span<const CellId> core_cells, const GridSpec& grid,
                    Provenance provenance = {});

// Thresholds the released histogram at min_pts + tau and merges. Free of
// privacy cost; may be repeated for any number of min_pts values.
SpanSet extract_spans(const ReleasedHistogram& released, double min_pts,
                      const HistogramOptions& limits = {});

// The whole mechanism: grid of width eta' alpha / sqrt(d), DP histogram,
// core-cell superset, merge.
SpanSet run(const PointSet& points, const DbscanParams& dbscan,
            const PrivacyParams& privacy, double eta_prime, Rng& rng,
            const PipelineOptions& options = {});

// Span id of the point's cell or 0.
int classify(const SpanSet& spans, std::span<const double> point);

}  // namespace dpdbscan

#endif  // DPDBSCAN_DP_DBSCAN_HPP_
