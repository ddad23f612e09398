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

#ifndef DPDBSCAN_TESTS_SUPPORT_HISTOGRAM_LAW_HPP_
#define DPDBSCAN_TESTS_SUPPORT_HISTOGRAM_LAW_HPP_

#include <vector>

#include "dpdbscan/histogram.hpp"

namespace dpdbscan::testing {

// Per-cell outcome of a release seen through threshold `theta`: 0 when the
// cell is absent or below theta, else the index of its value bucket.
inline std::vector<int> discretize(const SparseHistogram& h, double theta) {
  static const double kEdges[] = {0.5, 1.0, 1.5, 2.0, 3.0, 4.5};
  std::vector<int> key(h.universe_size(), 0);
  for (const HistEntry& e : h.entries()) {
    if (e.value < theta) continue;
    int b = 1;
    for (const double edge : kEdges) b += e.value >= theta + edge;
    key[e.cell] = b;
  }
  return key;
}

}  // namespace dpdbscan::testing

#endif  // DPDBSCAN_TESTS_SUPPORT_HISTOGRAM_LAW_HPP_
