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

#include "dpdbscan/span_set.hpp"

#include <algorithm>
#include <string>

#include "dpdbscan/detail/union_find.hpp"
#include "dpdbscan/errors.hpp"

namespace dpdbscan {

SpanSet::SpanSet(GridSpec grid, std::vector<Span> spans, Provenance provenance)
    : grid_(std::move(grid)), spans_(std::move(spans)), provenance_(std::move(provenance)) {
  for (Span& span : spans_) {
    std::sort(span.cells.begin(), span.cells.end());
    for (const CellId cell : span.cells) {
      if (cell >= grid_.universe_size()) {
        throw ParameterError("SpanSet: cell id outside the grid");
      }
      if (!owner_.emplace(cell, span.id).second) {
        throw ParameterError("SpanSet: cell " + std::to_string(cell) +
                             " belongs to more than one span");
      }
    }
  }
}

int SpanSet::span_of_cell(CellId cell) const {
  const auto it = owner_.find(cell);
  return it == owner_.end() ? 0 : it->second;
}

int SpanSet::classify(std::span<const double> point) const {
  return span_of_cell(cell_id_of(grid_, point));
}

std::string SpanSet::check_invariants() const {
  const NeighborStencil stencil(grid_);
  std::vector<std::int64_t> scratch(static_cast<std::size_t>(grid_.dim()));
  for (std::size_t s = 0; s < spans_.size(); ++s) {
    const Span& span = spans_[s];
    if (span.id != static_cast<int>(s) + 1) {
      return "span ids are not 1..k in order";
    }
    if (span.cells.empty()) return "span " + std::to_string(span.id) + " is empty";
    detail::UnionFind uf(span.cells.size());
    for (std::size_t i = 0; i < span.cells.size(); ++i) {
      std::string failure;
      stencil.for_each_neighbor(span.cells[i], scratch, [&](CellId nb) {
        const int other = span_of_cell(nb);
        if (other == 0) return;
        if (other != span.id) {
          failure = "spans " + std::to_string(span.id) + " and " +
                    std::to_string(other) + " are closer than alpha";
          return;
        }
        const auto j = static_cast<std::size_t>(
            std::lower_bound(span.cells.begin(), span.cells.end(), nb) -
            span.cells.begin());
        uf.unite(i, j);
      });
      if (!failure.empty()) return failure;
    }
    const std::size_t root = uf.find(0);
    for (std::size_t i = 1; i < span.cells.size(); ++i) {
      if (uf.find(i) != root) {
        return "span " + std::to_string(span.id) + " is not alpha-connected";
      }
    }
  }
  return {};
}

bool operator==(const SpanSet& a, const SpanSet& b) {
  return a.grid_ == b.grid_ && a.spans_ == b.spans_ && a.provenance_ == b.provenance_;
}

}  // namespace dpdbscan
