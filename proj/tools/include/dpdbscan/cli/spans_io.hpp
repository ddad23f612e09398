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

#ifndef DPDBSCAN_CLI_SPANS_IO_HPP_
#define DPDBSCAN_CLI_SPANS_IO_HPP_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "dpdbscan/cli/csv.hpp"
#include "dpdbscan/span_set.hpp"

namespace dpdbscan::cli {

// Budget bookkeeping for a release: every file cut from one histogram
// records the same epsilon and the full list of thresholds applied to it.
struct ReleaseInfo {
  double epsilon = 0.0;
  std::vector<double> min_pts_values;

  friend bool operator==(const ReleaseInfo&, const ReleaseInfo&) = default;
};

struct SpansFile {
  SpanSet spans;
  Transform transform;
  ReleaseInfo release;
};

// Canonical JSON: sorted keys, two-space indent, cells in id order.
std::string to_json(const SpansFile& file);
void write_spans(std::ostream& out, const SpansFile& file);
void write_spans(const std::string& path, const SpansFile& file);

// Throws DataError on malformed input or a grid description that does not
// match the recorded alpha and eta_prime.
SpansFile read_spans(std::istream& in);
SpansFile read_spans(const std::string& path);

}  // namespace dpdbscan::cli

#endif  // DPDBSCAN_CLI_SPANS_IO_HPP_
