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

#include "dpdbscan/cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dpdbscan/errors.hpp"

namespace dpdbscan::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty() && std::isfinite(out);
}

std::vector<std::size_t> resolve_columns(const std::vector<std::string>& selectors,
                                         const std::vector<std::string_view>& header,
                                         std::size_t width, const std::string& source) {
  std::vector<std::size_t> cols;
  if (selectors.empty()) {
    for (std::size_t i = 0; i < width; ++i) cols.push_back(i);
    return cols;
  }
  for (const std::string& sel : selectors) {
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(sel.data(), sel.data() + sel.size(), index);
    if (ec == std::errc() && ptr == sel.data() + sel.size()) {
      if (index >= width) {
        throw ParameterError(source + ": column " + sel + " out of range (" +
                             std::to_string(width) + " columns)");
      }
      cols.push_back(index);
      continue;
    }
    const auto it = std::find(header.begin(), header.end(), sel);
    if (it == header.end()) throw ParameterError(source + ": no column named '" + sel + "'");
    cols.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  return cols;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

}  // namespace

Table read_table(std::istream& in, const CsvOptions& options, const std::string& source) {
  Table table;
  std::vector<std::size_t> cols;
  std::vector<std::string_view> header;
  std::string header_line;
  std::string line;
  std::size_t line_no = 0;
  bool resolved = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (!resolved) {
      if (options.has_header) {
        header_line = line;
        header = split(header_line);
        cols = resolve_columns(options.columns, header, header.size(), source);
        for (const std::size_t c : cols) table.names.emplace_back(header[c]);
        resolved = true;
        continue;
      }
      cols = resolve_columns(options.columns, header, fields.size(), source);
      resolved = true;
    }
    std::vector<double> row(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] >= fields.size()) {
        throw DataError(source + ":" + std::to_string(line_no) + ": missing column " +
                        std::to_string(cols[k]));
      }
      if (!parse_double(fields[cols[k]], row[k])) {
        throw DataError(source + ":" + std::to_string(line_no) + ": non-numeric field '" +
                        std::string(fields[cols[k]]) + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.names.empty()) {
    for (const std::size_t c : cols) table.names.push_back("x" + std::to_string(c));
  }
  return table;
}

Table read_table(const std::string& path, const CsvOptions& options) {
  std::ifstream in = open(path);
  return read_table(in, options, path);
}

std::vector<double> Transform::to_unit(const std::vector<double>& raw) const {
  std::vector<double> out(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) out[k] = (raw[k] - offset.at(k)) / scale.at(k);
  return out;
}

std::vector<double> Transform::to_raw(const std::vector<double>& unit) const {
  std::vector<double> out(unit.size());
  for (std::size_t k = 0; k < unit.size(); ++k) out[k] = offset.at(k) + unit[k] * scale.at(k);
  return out;
}

Dataset normalize(const Table& table) {
  if (table.rows.empty()) throw DataError("input has no data rows");
  const std::size_t d = table.rows.front().size();
  if (d == 0) throw DataError("input has no columns");
  std::vector<double> lo = table.rows.front();
  std::vector<double> hi = lo;
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], row[k]);
      hi[k] = std::max(hi[k], row[k]);
    }
  }
  double extent = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (!(hi[k] > lo[k])) {
      const std::string name = k < table.names.size() ? table.names[k] : std::to_string(k);
      throw DataError("column '" + name + "' is constant; cannot rescale a zero extent");
    }
    extent = std::max(extent, hi[k] - lo[k]);
  }
  Dataset out{PointSet(static_cast<int>(d)), {lo, std::vector<double>(d, extent)}};
  out.points.reserve(table.rows.size());
  std::vector<double> p(d);
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < d; ++k) p[k] = std::clamp((row[k] - lo[k]) / extent, 0.0, 1.0);
    out.points.push_back(p);
  }
  return out;
}

Dataset ingest(const std::string& path, const CsvOptions& options) {
  return normalize(read_table(path, options));
}

std::vector<int> read_labels(const std::string& path, const std::string& column,
                             bool has_header) {
  const Table t = read_table(path, {{column}, has_header});
  std::vector<int> labels;
  labels.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double v = t.rows[i][0];
    if (v != std::round(v) || std::abs(v) > 2e9) {
      throw DataError(path + ": label " + std::to_string(i + 1) + " is not an integer");
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

}  // namespace dpdbscan::cli
