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

#ifndef DPDBSCAN_SPAN_SET_HPP_
#define DPDBSCAN_SPAN_SET_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dpdbscan/grid.hpp"
#include "dpdbscan/noise.hpp"

namespace dpdbscan {

// Everything needed to interpret (and audit) a released span set. Nothing in
// here is computed from the raw points except through the released histogram
// and the optional seed.
struct Provenance {
  double alpha = 0.0;  // normalized units
  double min_pts = 0.0;
  double min_pts_effective = 0.0;  // min_pts + tau
  double epsilon = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  double eta_prime = 1.0;
  double width = 0.0;
  std::size_t kappa = 0;
  double gamma = 0.0;
  double big_gamma = 0.0;
  double tau = 0.0;
  double rho = 0.0;
  std::string gamma_kind;
  std::string histogram_mode;
  std::string histogram_fingerprint;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Span {
  int id = 0;
  std::vector<CellId> cells;  // sorted

  friend bool operator==(const Span&, const Span&) = default;
};

// Disjoint unions of grid cells with ids 1..k. This is the released object.
class SpanSet {
 public:
  // Throws ParameterError if a cell is outside the grid or in two spans.
  SpanSet(GridSpec grid, std::vector<Span> spans, Provenance provenance = {});

  const GridSpec& grid() const { return grid_; }
  const std::vector<Span>& spans() const { return spans_; }
  const Provenance& provenance() const { return provenance_; }
  std::size_t size() const { return spans_.size(); }
  bool empty() const { return spans_.empty(); }

  // Id of the span that holds `cell`, or 0.
  int span_of_cell(CellId cell) const;

  // Id of the span whose cells contain the point, or 0 for noise. Throws
  // DomainError for points outside [0,1]^d.
  int classify(std::span<const double> point) const;

  // Empty string when the structural invariants hold: ids are 1..k, spans
  // are disjoint, each span is alpha-connected, and distinct spans are at
  // least alpha apart. Otherwise a description of the first violation.
  std::string check_invariants() const;

  friend bool operator==(const SpanSet& a, const SpanSet& b);

 private:
  GridSpec grid_;
  std::vector<Span> spans_;
  Provenance provenance_;
  std::unordered_map<CellId, int> owner_;
};

}  // namespace dpdbscan

#endif  // DPDBSCAN_SPAN_SET_HPP_
