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

#ifndef DPDBSCAN_ORACLE_HPP_
#define DPDBSCAN_ORACLE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dpdbscan/point_set.hpp"
#include "dpdbscan/span_set.hpp"

namespace dpdbscan {

struct DbscanParams {
  double alpha = 0.1;
  // Real-valued so that shifted thresholds (MinPts + tau) are representable.
  double min_pts = 1.0;

  // User-facing check: 0 < alpha < 1 and min_pts >= 1.
  void validate() const;
};

// Per-point cluster ids: 0 is noise, clusters are numbered 1..num_clusters in
// order of their lowest point index.
struct Labeling {
  std::vector<int> labels;
  int num_clusters = 0;
};

// Exact DBSCAN by pairwise distances, O(n^2). A point is core when at least
// min_pts points (itself included) lie at distance < alpha. Only core points
// are labeled; border points are noise. Accepts any alpha > 0 and
// min_pts > 0 so relaxed clusterings can be computed.
Labeling exact_dbscan(const PointSet& points, const DbscanParams& params);

// Span(C) = union of open balls of `radius` around the core points of C.
class TrueSpans {
 public:
  TrueSpans(const PointSet& points, const Labeling& labeling, double radius);

  int num_clusters() const { return static_cast<int>(centers_.size()); }
  double radius() const { return radius_; }
  // Indices of the core points of cluster `id` (1-based).
  const std::vector<std::size_t>& centers(int id) const;
  bool contains(int id, std::span<const double> location) const;
  // First cluster whose span contains the location, or 0.
  int find(std::span<const double> location) const;

 private:
  const PointSet* points_;
  double radius_;
  std::vector<std::vector<std::size_t>> centers_;
};

TrueSpans true_spans(const PointSet& points, const Labeling& labeling,
                     double alpha);

enum class SandwichStatus { kOk, kViolatedCondition1, kViolatedCondition2 };

struct SandwichReport {
  SandwichStatus status = SandwichStatus::kOk;
  std::string detail;
  bool ok() const { return status == SandwichStatus::kOk; }
};

// Checks that `spans` are (rho, tau)-approximate for (params.alpha,
// params.min_pts) on `points`:
//  1. every (alpha, min_pts)-cluster lies inside a single span;
//  2. every span lies inside Span(C2) for a single (rho alpha, min_pts - tau)
//     cluster C2, with balls of radius rho * alpha.
// A cell passes condition 2 for C2 when one core point of C2 holds all of the
// cell's corners in its open ball (exact), or else when every point of a 5^d
// lattice over the cell is covered by C2's balls.
// Throws ParameterError unless 0 <= tau < min_pts and rho > 0.
SandwichReport sandwich_check(const SpanSet& spans, const PointSet& points,
                              const DbscanParams& params, double rho,
                              double tau);

}  // namespace dpdbscan

#endif  // DPDBSCAN_ORACLE_HPP_
