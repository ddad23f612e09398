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

#include "dpdbscan/dp_dbscan.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "dpdbscan/detail/union_find.hpp"
#include "dpdbscan/errors.hpp"

namespace dpdbscan {

HistogramChoice parse_histogram_choice(std::string_view name) {
  if (name == "auto") return HistogramChoice::kAuto;
  if (name == "naive") return HistogramChoice::kNaive;
  if (name == "linear") return HistogramChoice::kLinear;
  throw ParameterError("histogram mode must be auto, naive or linear, got '" +
                       std::string(name) + "'");
}

ReleasedHistogram release_histogram(const PointSet& points, const GridSpec& grid,
                                    const PrivacyParams& privacy, Rng& rng,
                                    const PipelineOptions& options) {
  privacy.validate();
  const FrequencyMap freqs = exact_counts(points, grid);

  double theta = 0.0;
  bool linear = false;
  switch (options.histogram) {
    case HistogramChoice::kNaive:
      if (options.theta && *options.theta != 0.0) {
        throw ParameterError("a theta override requires the linear histogram");
      }
      break;
    case HistogramChoice::kLinear:
      theta = options.theta ? *options.theta
                            : choose_theta(grid.universe_size(), freqs.total(), privacy.epsilon);
      if (!(theta > 0.0)) {
        throw ParameterError(
            "linear histogram needs theta > 0; the data is dense in the grid, so "
            "pass an explicit theta or use the naive histogram");
      }
      linear = true;
      break;
    case HistogramChoice::kAuto:
      theta = options.theta ? *options.theta
                            : choose_theta(grid.universe_size(), freqs.total(), privacy.epsilon);
      linear = theta > 0.0;
      break;
  }

  PrivacyParams used = privacy;
  used.theta = theta;
  SparseHistogram hist =
      linear ? build_linear(freqs, grid, privacy.epsilon, theta, rng)
             : build_naive(freqs, grid, privacy.epsilon, rng, options.limits);
  const ApproxBounds bounds =
      make_approx_bounds(kappa(grid), grid.eta_prime(),
                         static_cast<double>(grid.universe_size()), used,
                         linear ? GammaKind::kLinearHist : GammaKind::kLaplace);
  return {std::move(hist), used, bounds, options.one_sided_shift, options.seed};
}

double noisy_ub(const SparseHistogram& hist, const CellIndex& cell, double big_gamma) {
  const GridSpec& grid = hist.grid();
  if (!grid.contains(cell)) throw ParameterError("noisy_ub: cell outside grid");
  const NeighborStencil stencil(grid);
  std::vector<std::int64_t> scratch(static_cast<std::size_t>(grid.dim()));
  double sum = 0.0;
  stencil.for_each_neighbor(grid.to_id(cell), scratch,
                            [&](CellId nb) { sum += hist.value(nb); });
  return sum + big_gamma;
}

std::vector<CellId> find_core_cells(const SparseHistogram& hist,
                                    double min_pts_effective, double big_gamma,
                                    const HistogramOptions& limits) {
  if (!(min_pts_effective >= 1.0)) {
    throw ParameterError("find_core_cells: effective MinPts must be >= 1");
  }
  const GridSpec& grid = hist.grid();
  const NeighborStencil stencil(grid);
  std::vector<std::int64_t> scratch(static_cast<std::size_t>(grid.dim()));
  const std::uint64_t universe = grid.universe_size();
  const bool all_cells_eligible = big_gamma >= min_pts_effective;
  const bool dense = all_cells_eligible || 2 * hist.size() >= universe;
  std::vector<CellId> core;

  // Each entry adds its value to the neighborhood sums of its neighbors; the
  // relation is symmetric, so every sum accumulates in lexicographic order.
  if (dense) {
    if (universe > limits.max_dense_cells) {
      throw CapacityError("find_core_cells: every cell reaches the threshold and the "
                          "universe is too large to enumerate");
    }
    std::vector<double> sums(universe, 0.0);
    for (const HistEntry& e : hist.entries()) {
      stencil.for_each_neighbor(e.cell, scratch, [&](CellId nb) { sums[nb] += e.value; });
    }
    for (CellId id = 0; id < universe; ++id) {
      if (sums[id] + big_gamma >= min_pts_effective) core.push_back(id);
    }
    return core;
  }

  std::unordered_map<CellId, double> sums;
  sums.reserve(hist.size() * stencil.size());
  for (const HistEntry& e : hist.entries()) {
    stencil.for_each_neighbor(e.cell, scratch, [&](CellId nb) { sums[nb] += e.value; });
  }
  for (const auto& [id, sum] : sums) {
    if (sum + big_gamma >= min_pts_effective) core.push_back(id);
  }
  std::sort(core.begin(), core.end());
  return core;
}

SpanSet merge_cells(std::span<const CellId> core_cells, const GridSpec& grid,
                    Provenance provenance) {
  std::vector<CellId> cells(core_cells.begin(), core_cells.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  const NeighborStencil stencil(grid);
  std::vector<std::int64_t> scratch(static_cast<std::size_t>(grid.dim()));
  detail::UnionFind uf(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] >= grid.universe_size()) throw ParameterError("merge_cells: cell outside grid");
    stencil.for_each_neighbor(cells[i], scratch, [&](CellId nb) {
      if (nb <= cells[i]) return;
      const auto it = std::lower_bound(cells.begin(), cells.end(), nb);
      if (it != cells.end() && *it == nb) {
        uf.unite(i, static_cast<std::size_t>(it - cells.begin()));
      }
    });
  }

  std::vector<Span> spans;
  std::unordered_map<std::size_t, std::size_t> root_to_span;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto [it, inserted] = root_to_span.emplace(uf.find(i), spans.size());
    if (inserted) spans.push_back({static_cast<int>(spans.size()) + 1, {}});
    spans[it->second].cells.push_back(cells[i]);
  }
  return SpanSet(grid, std::move(spans), std::move(provenance));
}

SpanSet extract_spans(const ReleasedHistogram& released, double min_pts,
                      const HistogramOptions& limits) {
  if (!(min_pts >= 1.0)) throw ParameterError("MinPts must be >= 1");
  const ApproxBounds& b = released.bounds;
  const SparseHistogram& hist = released.histogram;
  const double shift = released.one_sided_shift ? b.big_gamma : b.tau;
  const double effective = min_pts + shift;

  Provenance prov;
  prov.alpha = hist.grid().alpha();
  prov.min_pts = min_pts;
  prov.min_pts_effective = effective;
  prov.epsilon = released.privacy.epsilon;
  prov.beta = released.privacy.beta;
  prov.theta = released.privacy.theta;
  prov.eta_prime = hist.grid().eta_prime();
  prov.width = hist.grid().width();
  prov.kappa = b.kappa;
  prov.gamma = b.gamma;
  prov.big_gamma = b.big_gamma;
  prov.tau = b.tau;
  prov.rho = b.rho;
  prov.gamma_kind = std::string(to_string(b.kind));
  prov.histogram_mode = std::string(to_string(hist.mode()));
  prov.histogram_fingerprint = hist.fingerprint_hex();
  prov.seed = released.seed;

  const std::vector<CellId> core = find_core_cells(hist, effective, b.big_gamma, limits);
  return merge_cells(core, hist.grid(), std::move(prov));
}

SpanSet run(const PointSet& points, const DbscanParams& dbscan,
            const PrivacyParams& privacy, double eta_prime, Rng& rng,
            const PipelineOptions& options) {
  dbscan.validate();
  privacy.validate();
  const int dim = points.empty() ? std::max(points.dim(), 1) : points.dim();
  const GridSpec grid(dim, dbscan.alpha, eta_prime);
  const ReleasedHistogram released = release_histogram(points, grid, privacy, rng, options);
  return extract_spans(released, dbscan.min_pts, options.limits);
}

int classify(const SpanSet& spans, std::span<const double> point) {
  return spans.classify(point);
}

}  // namespace dpdbscan
