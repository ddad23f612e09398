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

#ifndef DPDBSCAN_EVAL_HPP_
#define DPDBSCAN_EVAL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "dpdbscan/oracle.hpp"
#include "dpdbscan/point_set.hpp"
#include "dpdbscan/span_set.hpp"

namespace dpdbscan {

// Co-occurrence counts of two labelings over the same points. Label values
// are arbitrary integers; rows and columns follow ascending label order.
class ContingencyTable {
 public:
  ContingencyTable(std::span<const int> a, std::span<const int> b);

  std::size_t rows() const { return row_sums_.size(); }
  std::size_t cols() const { return col_sums_.size(); }
  std::int64_t count(std::size_t i, std::size_t j) const { return counts_[i * cols() + j]; }
  const std::vector<std::int64_t>& row_sums() const { return row_sums_; }
  const std::vector<std::int64_t>& col_sums() const { return col_sums_; }
  std::int64_t total() const { return total_; }

  // True when the table is a permutation matrix (perfect agreement).
  bool is_bijection() const;

 private:
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> row_sums_;
  std::vector<std::int64_t> col_sums_;
  std::int64_t total_ = 0;
};

// Adjusted Rand index. Noise (0) is an ordinary label. Throws ParameterError
// when the lengths differ.
double ari(std::span<const int> a, std::span<const int> b);
double ari(const Labeling& a, const Labeling& b);

// Adjusted mutual information with the arithmetic-mean entropy normalizer.
double ami(std::span<const int> a, std::span<const int> b);
double ami(const Labeling& a, const Labeling& b);

// Classifies every point against the spans. Non-empty spans are renumbered
// 1..k in span-id order so the result is a valid Labeling; spans that hold
// no point get no label.
Labeling extract_labels(const SpanSet& spans, const PointSet& points);

}  // namespace dpdbscan

#endif  // DPDBSCAN_EVAL_HPP_
