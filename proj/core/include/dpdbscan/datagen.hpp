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

#ifndef DPDBSCAN_DATAGEN_HPP_
#define DPDBSCAN_DATAGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dpdbscan/oracle.hpp"
#include "dpdbscan/point_set.hpp"

namespace dpdbscan {

enum class SynthKind { kCircles, kMoons, kBlobs, kCoincident, kUniform };

SynthKind parse_synth_kind(std::string_view name);
std::string_view to_string(SynthKind kind);

// Jitter used when SynthSpec::noise_sd is unset, in generator units.
double default_noise_sd(SynthKind kind);

struct SynthSpec {
  SynthKind kind = SynthKind::kMoons;
  std::size_t n = 0;
  std::optional<double> noise_sd;
  std::uint64_t seed = 0;
  // Circles and moons are planar; blobs, coincident and uniform take any d.
  int d = 2;

  void validate() const;
  double jitter() const { return noise_sd.value_or(default_noise_sd(kind)); }
};

// Generated points and their generative labels. The named shapes are mapped
// by one isotropic affine map into [0.05, 0.95]^d:
//   normalized = 0.05 + (raw - offset) * scale
// so a radius r in generator units becomes r * scale. Uniform data is drawn
// in [0, 1)^d directly with scale 1.
struct SynthData {
  PointSet points;
  // The same points in generator units (each axis standardized).
  PointSet raw;
  Labeling labels;
  std::vector<double> offset;
  double scale = 1.0;
};

SynthData generate(const SynthSpec& spec);

}  // namespace dpdbscan

#endif  // DPDBSCAN_DATAGEN_HPP_
