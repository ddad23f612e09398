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

#ifndef DPDBSCAN_CLI_CSV_HPP_
#define DPDBSCAN_CLI_CSV_HPP_

#include <istream>
#include <string>
#include <vector>

#include "dpdbscan/point_set.hpp"

namespace dpdbscan::cli {

struct CsvOptions {
  // Column selectors: 0-based indices, or header names when has_header.
  // Empty selects every column.
  std::vector<std::string> columns;
  bool has_header = false;
};

// A numeric table read from CSV. Rows with a non-numeric selected field are
// rejected with their line number.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
};

Table read_table(std::istream& in, const CsvOptions& options, const std::string& source);
Table read_table(const std::string& path, const CsvOptions& options);

// Isotropic rescale: normalized = (raw - offset) / scale with every axis
// sharing scale = the largest per-axis extent.
struct Transform {
  std::vector<double> offset;
  std::vector<double> scale;

  double normalize_length(double raw) const { return raw / scale.at(0); }
  std::vector<double> to_unit(const std::vector<double>& raw) const;
  std::vector<double> to_raw(const std::vector<double>& unit) const;
};

struct Dataset {
  PointSet points;
  Transform transform;
};

// Fits the transform to the table and normalizes it into [0,1]^d. Throws
// DataError for an empty table or an axis of zero extent.
Dataset normalize(const Table& table);
Dataset ingest(const std::string& path, const CsvOptions& options);

// Integer labels from one column of a CSV file.
std::vector<int> read_labels(const std::string& path, const std::string& column,
                             bool has_header);

}  // namespace dpdbscan::cli

#endif  // DPDBSCAN_CLI_CSV_HPP_
