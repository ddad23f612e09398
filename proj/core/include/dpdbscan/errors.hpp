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

#ifndef DPDBSCAN_ERRORS_HPP_
#define DPDBSCAN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dpdbscan {

// A point lies outside the unit cube. Callers must rescale first.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An argument violates a documented precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested grid or dense histogram is too large to materialize.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A randomized step produced an output too large to hold in memory.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (CSV rows, span files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dpdbscan

#endif  // DPDBSCAN_ERRORS_HPP_
