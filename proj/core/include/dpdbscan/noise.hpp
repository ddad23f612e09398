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

#ifndef DPDBSCAN_NOISE_HPP_
#define DPDBSCAN_NOISE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace dpdbscan {

// All randomized routines take the generator explicitly; there is no global
// state. A generator must not be shared by concurrent callers.
using Rng = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);
// Uniform on (0, 1); never returns 0 or 1.
double uniform_open01(Rng& rng);
// Uniform integer in [0, n). Requires n > 0.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

// Lap(scale): density exp(-|z| / scale) / (2 scale).
double sample_laplace(Rng& rng, double scale);
double laplace_pdf(double z, double scale);
double laplace_cdf(double z, double scale);

// Two-sided geometric with mass (e^a - 1)/(e^a + 1) * e^{-a|z|}, where
// a = epsilon / sensitivity.
std::int64_t sample_geometric(Rng& rng, double eps_over_delta);
double geometric_pmf(std::int64_t z, double eps_over_delta);

// Exact Bin(trials, p): inversion (BINV) when trials * min(p, 1-p) < 30,
// BTPE otherwise.
std::uint64_t sample_binomial(Rng& rng, std::uint64_t trials, double p);

// Draw from Lap(1/eps) conditioned on being >= theta, by inverting
// CDF(z) = 1 - e^{-eps z} / (2p), p = e^{-eps theta} / 2.
double sample_clipped_laplace(Rng& rng, double eps, double theta);
// The same transform applied to a given uniform u in [0, 1).
double clipped_laplace_from_uniform(double eps, double theta, double u);
double clipped_laplace_cdf(double z, double eps, double theta);

struct PrivacyParams {
  double epsilon = 1.0;
  double beta = 1.0 / 3.0;
  // Histogram truncation threshold; 0 selects the dense Laplace histogram.
  double theta = 0.0;

  // Throws ParameterError unless epsilon > 0, 0 < beta < 1, theta >= 0.
  void validate() const;
};

// High-probability l_inf error of a Laplace histogram over `universe_size`
// cells: (1/eps) ln(|X| / beta).
double gamma_laplace(double eps, double universe_size, double beta);

enum class GammaKind { kLaplace, kGeometric, kGaussian, kNaiveKappaGamma, kLinearHist };

GammaKind parse_gamma_kind(std::string_view name);
std::string_view to_string(GammaKind kind);

// Inputs for the bound on a kappa-cell sum of histogram errors.
struct GammaQuery {
  GammaKind kind = GammaKind::kLaplace;
  double kappa = 1.0;
  double epsilon = 1.0;
  double universe_size = 1.0;
  double beta = 1.0 / 3.0;
  std::optional<double> theta;  // kLinearHist
  std::optional<double> delta;  // kGaussian
};

// Closed-form bound Gamma such that every kappa-cell sum of errors stays
// within [-Gamma, Gamma] with probability 1 - beta (union bound over cells).
//   kLaplace:         (2 sqrt2 / eps) max{sqrt(kappa L), L}, L = ln(2|X|/beta)
//   kGeometric:       concentration of kappa two-sided geometrics
//   kGaussian:        (2 / eps) sqrt(kappa ln(1.25/delta) L)
//   kNaiveKappaGamma: kappa * gamma_laplace
//   kLinearHist:      kappa * theta + kLaplace
double big_gamma(const GammaQuery& query);

// Every error scale used by one pipeline run.
struct ApproxBounds {
  std::size_t kappa = 1;
  double gamma = 0.0;
  double big_gamma = 0.0;
  // Additive MinPts slack, 2 * big_gamma.
  double tau = 0.0;
  // Radius ratio of the relaxed clustering, 3 + 4 eta'.
  double rho = 7.0;
  GammaKind kind = GammaKind::kLaplace;
};

ApproxBounds make_approx_bounds(std::size_t kappa, double eta_prime,
                                double universe_size,
                                const PrivacyParams& privacy, GammaKind kind);

}  // namespace dpdbscan

#endif  // DPDBSCAN_NOISE_HPP_
