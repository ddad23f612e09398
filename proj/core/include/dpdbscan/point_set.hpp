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

#ifndef DPDBSCAN_POINT_SET_HPP_
#define DPDBSCAN_POINT_SET_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "dpdbscan/errors.hpp"

namespace dpdbscan {

// Row-major storage for n points of dimension d.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : dim_(dim) {
    if (dim < 1) throw ParameterError("PointSet: dimension must be >= 1");
  }
  PointSet(int dim, std::vector<double> coords) : PointSet(dim) {
    if (coords.size() % static_cast<std::size_t>(dim) != 0) {
      throw ParameterError("PointSet: coordinate count not a multiple of dim");
    }
    coords_ = std::move(coords);
  }
  PointSet(int dim, std::initializer_list<std::initializer_list<double>> rows)
      : PointSet(dim) {
    for (const auto& row : rows) push_back(std::span<const double>(row.begin(), row.size()));
  }

  int dim() const { return dim_; }
  std::size_t size() const {
    return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_);
  }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  std::span<double> mutable_point(std::size_t i) {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }

  void push_back(std::span<const double> p) {
    if (static_cast<int>(p.size()) != dim_) {
      throw ParameterError("PointSet: point has wrong dimension");
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
  }
  void reserve(std::size_t n) { coords_.reserve(n * static_cast<std::size_t>(dim_)); }

  const std::vector<double>& coords() const { return coords_; }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

}  // namespace dpdbscan

#endif  // DPDBSCAN_POINT_SET_HPP_
