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

#include "dpdbscan/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "dpdbscan/errors.hpp"
#include "dpdbscan/noise.hpp"

namespace dpdbscan {
namespace {

constexpr double kCircleFactor = 0.5;
constexpr int kBlobCount = 3;
constexpr double kBlobBox = 10.0;
// Blob centers are redrawn until pairwise distances reach this many cluster
// standard deviations, so that the three components stay distinguishable.
constexpr double kBlobSeparation = 8.0;

struct Raw {
  std::vector<double> coords;
  std::vector<int> labels;
};

void add_jitter(Raw& raw, double sd, Rng& rng) {
  if (sd == 0.0) return;
  std::normal_distribution<double> normal(0.0, sd);
  for (double& c : raw.coords) c += normal(rng);
}

Raw make_moons(std::size_t n, double sd, Rng& rng) {
  const std::size_t n_out = n / 2;
  const std::size_t n_in = n - n_out;
  Raw raw;
  raw.coords.reserve(2 * n);
  for (std::size_t i = 0; i < n_out; ++i) {
    const double t = n_out == 1 ? 0.0 : std::numbers::pi * static_cast<double>(i) /
                                            static_cast<double>(n_out - 1);
    raw.coords.push_back(std::cos(t));
    raw.coords.push_back(std::sin(t));
    raw.labels.push_back(1);
  }
  for (std::size_t i = 0; i < n_in; ++i) {
    const double t = n_in == 1 ? 0.0 : std::numbers::pi * static_cast<double>(i) /
                                           static_cast<double>(n_in - 1);
    raw.coords.push_back(1.0 - std::cos(t));
    raw.coords.push_back(1.0 - std::sin(t) - 0.5);
    raw.labels.push_back(2);
  }
  add_jitter(raw, sd, rng);
  return raw;
}

Raw make_circles(std::size_t n, double sd, Rng& rng) {
  const std::size_t n_out = n / 2;
  const std::size_t n_in = n - n_out;
  Raw raw;
  raw.coords.reserve(2 * n);
  const auto ring = [&](std::size_t count, double radius, int label) {
    for (std::size_t i = 0; i < count; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) /
                       static_cast<double>(count);
      raw.coords.push_back(radius * std::cos(t));
      raw.coords.push_back(radius * std::sin(t));
      raw.labels.push_back(label);
    }
  };
  ring(n_out, 1.0, 1);
  ring(n_in, kCircleFactor, 2);
  add_jitter(raw, sd, rng);
  return raw;
}

Raw make_blobs(std::size_t n, int d, double sd, Rng& rng) {
  const auto dim = static_cast<std::size_t>(d);
  std::vector<double> centers(kBlobCount * dim);
  const double min_sep = kBlobSeparation * sd;
  for (int c = 0; c < kBlobCount; ++c) {
    for (int attempt = 0;; ++attempt) {
      for (std::size_t k = 0; k < dim; ++k) {
        centers[c * dim + k] = -kBlobBox + 2.0 * kBlobBox * uniform01(rng);
      }
      bool separated = true;
      for (int o = 0; o < c && separated; ++o) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          const double diff = centers[c * dim + k] - centers[o * dim + k];
          d2 += diff * diff;
        }
        separated = d2 >= min_sep * min_sep;
      }
      if (separated || attempt >= 1000) break;
    }
  }
  Raw raw;
  raw.coords.reserve(n * dim);
  std::normal_distribution<double> normal(0.0, sd);
  for (int c = 0; c < kBlobCount; ++c) {
    const std::size_t count = n / kBlobCount + (static_cast<std::size_t>(c) < n % kBlobCount);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        raw.coords.push_back(centers[c * dim + k] + (sd > 0.0 ? normal(rng) : 0.0));
      }
      raw.labels.push_back(c + 1);
    }
  }
  return raw;
}

// Per-axis z-scoring. Radii such as alpha are quoted on this scale.
void standardize(Raw& raw, std::size_t dim) {
  const std::size_t n = raw.labels.size();
  if (n == 0) return;
  for (std::size_t k = 0; k < dim; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += raw.coords[i * dim + k];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = raw.coords[i * dim + k] - mean;
      var += diff * diff;
    }
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      double& c = raw.coords[i * dim + k];
      c = sd > 0.0 ? (c - mean) / sd : 0.0;
    }
  }
}

void shuffle_rows(Raw& raw, std::size_t dim, Rng& rng) {
  const std::size_t n = raw.labels.size();
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = uniform_index(rng, i);
    std::swap(raw.labels[i - 1], raw.labels[j]);
    std::swap_ranges(raw.coords.begin() + (i - 1) * dim, raw.coords.begin() + i * dim,
                     raw.coords.begin() + j * dim);
  }
}

SynthData rescale(Raw raw, int d) {
  const auto dim = static_cast<std::size_t>(d);
  const std::size_t n = raw.labels.size();
  SynthData out;
  out.raw = PointSet(d, raw.coords);
  out.offset.assign(dim, 0.0);
  double extent = 0.0;
  if (n > 0) {
    for (std::size_t k = 0; k < dim; ++k) {
      double lo = raw.coords[k];
      double hi = raw.coords[k];
      for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, raw.coords[i * dim + k]);
        hi = std::max(hi, raw.coords[i * dim + k]);
      }
      out.offset[k] = lo;
      extent = std::max(extent, hi - lo);
    }
  }
  if (extent > 0.0) {
    out.scale = 0.9 / extent;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        double& c = raw.coords[i * dim + k];
        c = std::clamp(0.05 + (c - out.offset[k]) * out.scale, 0.0, 1.0);
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        out.offset[k] = raw.coords[i * dim + k];
        raw.coords[i * dim + k] = 0.5;
      }
    }
  }
  out.points = PointSet(d, std::move(raw.coords));
  int max_label = 0;
  for (const int l : raw.labels) max_label = std::max(max_label, l);
  out.labels.labels = std::move(raw.labels);
  out.labels.num_clusters = max_label;
  return out;
}

}  // namespace

SynthKind parse_synth_kind(std::string_view name) {
  if (name == "circles") return SynthKind::kCircles;
  if (name == "moons") return SynthKind::kMoons;
  if (name == "blobs") return SynthKind::kBlobs;
  if (name == "coincident") return SynthKind::kCoincident;
  if (name == "uniform") return SynthKind::kUniform;
  throw ParameterError("unknown dataset kind '" + std::string(name) + "'");
}

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::kCircles: return "circles";
    case SynthKind::kMoons: return "moons";
    case SynthKind::kBlobs: return "blobs";
    case SynthKind::kCoincident: return "coincident";
    case SynthKind::kUniform: return "uniform";
  }
  return "unknown";
}

double default_noise_sd(SynthKind kind) {
  switch (kind) {
    case SynthKind::kCircles: return 0.05;
    case SynthKind::kMoons: return 0.05;
    case SynthKind::kBlobs: return 0.4;
    case SynthKind::kCoincident:
    case SynthKind::kUniform: return 0.0;
  }
  return 0.0;
}

void SynthSpec::validate() const {
  if (d < 1) throw ParameterError("dimension must be >= 1");
  if ((kind == SynthKind::kCircles || kind == SynthKind::kMoons) && d != 2) {
    throw ParameterError(std::string(to_string(kind)) + " is two-dimensional");
  }
  const double sd = jitter();
  if (!(sd >= 0.0) || !std::isfinite(sd)) throw ParameterError("noise_sd must be >= 0");
}

SynthData generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const auto dim = static_cast<std::size_t>(spec.d);
  Raw raw;
  switch (spec.kind) {
    case SynthKind::kMoons:
      raw = make_moons(spec.n, spec.jitter(), rng);
      break;
    case SynthKind::kCircles:
      raw = make_circles(spec.n, spec.jitter(), rng);
      break;
    case SynthKind::kBlobs:
      raw = make_blobs(spec.n, spec.d, spec.jitter(), rng);
      break;
    case SynthKind::kCoincident:
      raw.coords.assign(spec.n * dim, 0.0);
      raw.labels.assign(spec.n, 1);
      add_jitter(raw, spec.jitter(), rng);
      break;
    case SynthKind::kUniform: {
      SynthData out;
      out.offset.assign(dim, 0.0);
      std::vector<double> coords(spec.n * dim);
      for (double& c : coords) c = uniform01(rng);
      out.points = PointSet(spec.d, coords);
      out.raw = PointSet(spec.d, std::move(coords));
      out.labels.labels.assign(spec.n, 1);
      out.labels.num_clusters = spec.n > 0 ? 1 : 0;
      return out;
    }
  }
  shuffle_rows(raw, dim, rng);
  if (spec.kind != SynthKind::kCoincident) standardize(raw, dim);
  return rescale(std::move(raw), spec.d);
}

}  // namespace dpdbscan
