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

#include "dpdbscan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "dpdbscan/detail/union_find.hpp"
#include "dpdbscan/errors.hpp"

namespace dpdbscan {
namespace {

// Relative slack for the relaxed threshold MinPts - tau, which went through
// an addition and a subtraction of tau in floating point.
constexpr double kThresholdSlack = 1e-9;

bool box_in_ball(std::span<const double> lo, std::span<const double> hi,
                 std::span<const double> center, double radius_sq) {
  double far = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double a = center[i] - lo[i];
    const double b = hi[i] - center[i];
    far += std::max(a * a, b * b);
  }
  return far < radius_sq;
}

}  // namespace

void DbscanParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  if (!(min_pts >= 1.0)) throw ParameterError("MinPts must be >= 1");
}

Labeling exact_dbscan(const PointSet& points, const DbscanParams& params) {
  if (!(params.alpha > 0.0)) throw ParameterError("exact_dbscan: alpha must be > 0");
  if (!(params.min_pts > 0.0)) throw ParameterError("exact_dbscan: MinPts must be > 0");
  const std::size_t n = points.size();
  const double radius_sq = params.alpha * params.alpha;

  std::vector<std::size_t> counts(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (squared_distance(points[i], points[j]) < radius_sq) {
        ++counts[i];
        ++counts[j];
      }
    }
  }
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) {
    core[i] = static_cast<double>(counts[i]) >= params.min_pts;
  }

  detail::UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (core[j] && squared_distance(points[i], points[j]) < radius_sq) uf.unite(i, j);
    }
  }

  Labeling out;
  out.labels.assign(n, 0);
  std::map<std::size_t, int> root_to_label;
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    const auto [it, inserted] = root_to_label.emplace(uf.find(i), out.num_clusters + 1);
    if (inserted) ++out.num_clusters;
    out.labels[i] = it->second;
  }
  return out;
}

TrueSpans::TrueSpans(const PointSet& points, const Labeling& labeling, double radius)
    : points_(&points), radius_(radius) {
  if (labeling.labels.size() != points.size()) {
    throw ParameterError("TrueSpans: labeling and points differ in length");
  }
  centers_.resize(static_cast<std::size_t>(labeling.num_clusters));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int label = labeling.labels[i];
    if (label > 0) centers_[static_cast<std::size_t>(label - 1)].push_back(i);
  }
}

const std::vector<std::size_t>& TrueSpans::centers(int id) const {
  if (id < 1 || id > num_clusters()) throw ParameterError("TrueSpans: no such cluster");
  return centers_[static_cast<std::size_t>(id - 1)];
}

bool TrueSpans::contains(int id, std::span<const double> location) const {
  const double radius_sq = radius_ * radius_;
  for (const std::size_t c : centers(id)) {
    if (squared_distance((*points_)[c], location) < radius_sq) return true;
  }
  return false;
}

int TrueSpans::find(std::span<const double> location) const {
  for (int id = 1; id <= num_clusters(); ++id) {
    if (contains(id, location)) return id;
  }
  return 0;
}

TrueSpans true_spans(const PointSet& points, const Labeling& labeling, double alpha) {
  return TrueSpans(points, labeling, alpha);
}

SandwichReport sandwich_check(const SpanSet& spans, const PointSet& points,
                              const DbscanParams& params, double rho, double tau) {
  if (!(tau >= 0.0) || !(tau < params.min_pts)) {
    throw ParameterError("sandwich_check: requires 0 <= tau < MinPts");
  }
  if (!(rho > 0.0)) throw ParameterError("sandwich_check: rho must be > 0");
  const GridSpec& grid = spans.grid();
  const double slack = kThresholdSlack * std::max(1.0, params.min_pts);

  // Condition 1: each (alpha, MinPts)-cluster falls in one span.
  const Labeling small = exact_dbscan(points, params);
  std::vector<int> home(static_cast<std::size_t>(small.num_clusters), -1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int label = small.labels[i];
    if (label == 0) continue;
    const int span = spans.classify(points[i]);
    int& h = home[static_cast<std::size_t>(label - 1)];
    if (span == 0 || (h != -1 && h != span)) {
      return {SandwichStatus::kViolatedCondition1,
              "cluster " + std::to_string(label) + " is not inside a single span"};
    }
    h = span;
  }

  if (spans.empty()) return {};

  // Condition 2: each span inside the span of one relaxed cluster.
  const double relaxed_alpha = rho * params.alpha;
  const Labeling large =
      exact_dbscan(points, {relaxed_alpha, params.min_pts - tau - slack});
  const TrueSpans relaxed(points, large, relaxed_alpha);
  const double radius_sq = relaxed_alpha * relaxed_alpha;
  const std::size_t d = static_cast<std::size_t>(grid.dim());
  std::vector<double> lo(d), hi(d), sample(d);
  std::vector<int> lattice(d);

  const auto cell_inside = [&](const CellIndex& cell, int cluster) {
    grid.cell_box(cell, lo, hi);
    const auto& centers = relaxed.centers(cluster);
    for (const std::size_t c : centers) {
      if (box_in_ball(lo, hi, points[c], radius_sq)) return true;
    }
    // 5^d lattice fallback for boxes covered only by a union of balls.
    std::fill(lattice.begin(), lattice.end(), 0);
    while (true) {
      for (std::size_t i = 0; i < d; ++i) {
        sample[i] = lo[i] + (hi[i] - lo[i]) * lattice[i] / 4.0;
      }
      if (!relaxed.contains(cluster, sample)) return false;
      std::size_t i = 0;
      while (i < d && ++lattice[i] == 5) lattice[i++] = 0;
      if (i == d) return true;
    }
  };

  for (const Span& span : spans.spans()) {
    std::set<int> candidates;
    for (int c = 1; c <= large.num_clusters; ++c) candidates.insert(c);
    for (const CellId id : span.cells) {
      const CellIndex cell = grid.from_id(id);
      for (auto it = candidates.begin(); it != candidates.end();) {
        it = cell_inside(cell, *it) ? std::next(it) : candidates.erase(it);
      }
      if (candidates.empty()) {
        return {SandwichStatus::kViolatedCondition2,
                "span " + std::to_string(span.id) +
                    " is not inside the span of any single relaxed cluster"};
      }
    }
  }
  return {};
}

}  // namespace dpdbscan
