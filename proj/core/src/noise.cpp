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

#include "dpdbscan/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "dpdbscan/errors.hpp"

namespace dpdbscan {
namespace {

constexpr double kTwoPow53Inv = 0x1.0p-53;

// BINV: sequential search of the inverse CDF, O(trials * p) expected time.
// Used only for trials * p < 30, where q^trials cannot underflow.
std::uint64_t binomial_inversion(Rng& rng, std::uint64_t n, double p) {
  const double q = 1.0 - p;
  const double nd = static_cast<double>(n);
  const double q_pow_n = std::exp(nd * std::log1p(-p));
  while (true) {
    std::uint64_t x = 0;
    double px = q_pow_n;
    double u = uniform01(rng);
    while (u > px) {
      ++x;
      if (x > n) break;
      u -= px;
      px = (static_cast<double>(n - x + 1) * p * px) / (static_cast<double>(x) * q);
      // The remaining tail mass underflowed; restart rather than walk to n.
      if (px == 0.0) {
        x = n + 1;
        break;
      }
    }
    if (x <= n) return x;
  }
}

// BTPE (Kachitvichyanukul & Schmeiser 1988) for p <= 1/2 and n * p >= 30.
std::uint64_t binomial_btpe(Rng& rng, std::uint64_t trials, double p) {
  const double n = static_cast<double>(trials);
  const double r = p;
  const double q = 1.0 - r;
  const double fm = n * r + r;
  const double m = std::floor(fm);
  const double p1 = std::floor(2.195 * std::sqrt(n * r * q) - 4.6 * q) + 0.5;
  const double xm = m + 0.5;
  const double xl = xm - p1;
  const double xr = xm + p1;
  const double c = 0.134 + 20.5 / (15.3 + m);
  double a = (fm - xl) / (fm - xl * r);
  const double laml = a * (1.0 + a / 2.0);
  a = (xr - fm) / (xr * q);
  const double lamr = a * (1.0 + a / 2.0);
  const double p2 = p1 * (1.0 + 2.0 * c);
  const double p3 = p2 + c / laml;
  const double p4 = p3 + c / lamr;
  const double nrq = n * r * q;

  while (true) {
    const double u = uniform01(rng) * p4;
    double v = uniform01(rng);
    double y;
    if (u <= p1) {
      // Triangular region: accept immediately.
      return static_cast<std::uint64_t>(std::floor(xm - p1 * v + u));
    }
    if (u <= p2) {
      // Parallelogram region.
      const double x = xl + (u - p1) / c;
      v = v * c + 1.0 - std::abs(m - x + 0.5) / p1;
      if (v > 1.0) continue;
      y = std::floor(x);
    } else if (u <= p3) {
      // Left exponential tail.
      if (v == 0.0) continue;
      y = std::floor(xl + std::log(v) / laml);
      if (y < 0.0) continue;
      v = v * (u - p2) * laml;
    } else {
      // Right exponential tail.
      if (v == 0.0) continue;
      y = std::floor(xr - std::log(v) / lamr);
      if (y > n) continue;
      v = v * (u - p3) * lamr;
    }

    const double k = std::abs(y - m);
    if (k <= 20.0 || k >= nrq / 2.0 - 1.0) {
      // Explicit evaluation of f(y) / f(m) by recursion.
      const double s = r / q;
      const double aa = s * (n + 1.0);
      double f = 1.0;
      if (m < y) {
        for (double i = m + 1.0; i <= y; i += 1.0) f *= (aa / i - s);
      } else if (m > y) {
        for (double i = y + 1.0; i <= m; i += 1.0) f /= (aa / i - s);
      }
      if (v > f) continue;
      return static_cast<std::uint64_t>(y);
    }

    // Squeeze using upper and lower bounds on log f(y).
    const double rho =
        (k / nrq) * ((k * (k / 3.0 + 0.625) + 0.16666666666666666) / nrq + 0.5);
    const double t = -k * k / (2.0 * nrq);
    const double log_v = std::log(v);
    if (log_v < t - rho) return static_cast<std::uint64_t>(y);
    if (log_v > t + rho) continue;

    // Final acceptance test with Stirling-corrected log f(y) / f(m).
    const double x1 = y + 1.0;
    const double f1 = m + 1.0;
    const double z = n + 1.0 - m;
    const double w = n - y + 1.0;
    const double x2 = x1 * x1;
    const double f2 = f1 * f1;
    const double z2 = z * z;
    const double w2 = w * w;
    const auto stirling = [](double base, double sq) {
      return (13680. - (462. - (132. - (99. - 140. / sq) / sq) / sq) / sq) / base /
             166320.;
    };
    const double bound = xm * std::log(f1 / x1) + (n - m + 0.5) * std::log(z / w) +
                         (y - m) * std::log(w * r / (x1 * q)) + stirling(f1, f2) +
                         stirling(z, z2) + stirling(x1, x2) + stirling(w, w2);
    if (log_v > bound) continue;
    return static_cast<std::uint64_t>(y);
  }
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * kTwoPow53Inv;
}

double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * kTwoPow53Inv;
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  if (n == 0) throw ParameterError("uniform_index: empty range");
  // Reject the low 2^64 mod n values so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

double sample_laplace(Rng& rng, double scale) {
  require_positive(scale, "sample_laplace: scale");
  const double u = uniform_open01(rng);
  return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
}

double laplace_pdf(double z, double scale) {
  return std::exp(-std::abs(z) / scale) / (2.0 * scale);
}

double laplace_cdf(double z, double scale) {
  return z < 0.0 ? 0.5 * std::exp(z / scale) : 1.0 - 0.5 * std::exp(-z / scale);
}

std::int64_t sample_geometric(Rng& rng, double eps_over_delta) {
  require_positive(eps_over_delta, "sample_geometric: parameter");
  // Difference of two i.i.d. one-sided geometrics with success 1 - e^{-a}.
  const double log_q = -eps_over_delta;
  const auto one_sided = [&] {
    return static_cast<std::int64_t>(std::floor(std::log(uniform_open01(rng)) / log_q));
  };
  const std::int64_t g1 = one_sided();
  const std::int64_t g2 = one_sided();
  return g1 - g2;
}

double geometric_pmf(std::int64_t z, double eps_over_delta) {
  const double a = eps_over_delta;
  return std::tanh(a / 2.0) * std::exp(-a * static_cast<double>(std::llabs(z)));
}

std::uint64_t sample_binomial(Rng& rng, std::uint64_t trials, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("sample_binomial: p must lie in [0, 1]");
  }
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  const bool flip = p > 0.5;
  const double r = flip ? 1.0 - p : p;
  const std::uint64_t x = static_cast<double>(trials) * r < 30.0
                              ? binomial_inversion(rng, trials, r)
                              : binomial_btpe(rng, trials, r);
  return flip ? trials - x : x;
}

double clipped_laplace_from_uniform(double eps, double theta, double u) {
  const double p = 0.5 * std::exp(-eps * theta);
  return (1.0 / eps) * std::log(1.0 / (2.0 * p * (1.0 - u)));
}

double sample_clipped_laplace(Rng& rng, double eps, double theta) {
  require_positive(eps, "sample_clipped_laplace: eps");
  if (!(theta >= 0.0)) throw ParameterError("sample_clipped_laplace: theta must be >= 0");
  // Round-off in ln(1 / (2p)) can land a hair below theta.
  return std::max(theta, clipped_laplace_from_uniform(eps, theta, uniform01(rng)));
}

double clipped_laplace_cdf(double z, double eps, double theta) {
  if (z < theta) return 0.0;
  const double p = 0.5 * std::exp(-eps * theta);
  return 1.0 - std::exp(-eps * z) / (2.0 * p);
}

void PrivacyParams::validate() const {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
  if (!(theta >= 0.0)) throw ParameterError("theta must be >= 0");
}

double gamma_laplace(double eps, double universe_size, double beta) {
  require_positive(eps, "gamma_laplace: eps");
  require_positive(universe_size, "gamma_laplace: universe size");
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("gamma_laplace: beta must lie in (0, 1]");
  return std::log(universe_size / beta) / eps;
}

GammaKind parse_gamma_kind(std::string_view name) {
  if (name == "laplace") return GammaKind::kLaplace;
  if (name == "geometric") return GammaKind::kGeometric;
  if (name == "gaussian") return GammaKind::kGaussian;
  if (name == "naive_kappa_gamma") return GammaKind::kNaiveKappaGamma;
  if (name == "linear_hist") return GammaKind::kLinearHist;
  throw ParameterError("unknown Gamma kind '" + std::string(name) + "'");
}

std::string_view to_string(GammaKind kind) {
  switch (kind) {
    case GammaKind::kLaplace: return "laplace";
    case GammaKind::kGeometric: return "geometric";
    case GammaKind::kGaussian: return "gaussian";
    case GammaKind::kNaiveKappaGamma: return "naive_kappa_gamma";
    case GammaKind::kLinearHist: return "linear_hist";
  }
  throw ParameterError("unknown Gamma kind");
}

double big_gamma(const GammaQuery& q) {
  if (!(q.kappa >= 1.0)) throw ParameterError("big_gamma: kappa must be >= 1");
  require_positive(q.epsilon, "big_gamma: epsilon");
  require_positive(q.universe_size, "big_gamma: universe size");
  if (!(q.beta > 0.0 && q.beta < 1.0)) throw ParameterError("big_gamma: beta must lie in (0, 1)");

  const double log_term = std::log(2.0 * q.universe_size / q.beta);
  const double eps = q.epsilon;
  const auto laplace = [&] {
    return 2.0 * std::sqrt(2.0) / eps * std::max(std::sqrt(q.kappa * log_term), log_term);
  };

  switch (q.kind) {
    case GammaKind::kLaplace:
      return laplace();
    case GammaKind::kGeometric: {
      const double e = std::exp(eps);
      // The sharper bound needs kappa >= e^eps * L.
      if (q.kappa >= e * log_term) {
        return 4.0 * std::sqrt(e) / (e - 1.0) * std::sqrt(q.kappa * log_term);
      }
      return 4.0 * e / (e - 1.0) * std::sqrt(q.kappa) * log_term;
    }
    case GammaKind::kGaussian: {
      if (!q.delta) throw ParameterError("big_gamma: gaussian bound requires delta");
      if (!(*q.delta > 0.0 && *q.delta < 1.0)) {
        throw ParameterError("big_gamma: delta must lie in (0, 1)");
      }
      return 2.0 / eps * std::sqrt(q.kappa * std::log(1.25 / *q.delta) * log_term);
    }
    case GammaKind::kNaiveKappaGamma:
      return q.kappa * gamma_laplace(eps, q.universe_size, q.beta);
    case GammaKind::kLinearHist: {
      if (!q.theta) throw ParameterError("big_gamma: linear_hist bound requires theta");
      if (!(*q.theta >= 0.0)) throw ParameterError("big_gamma: theta must be >= 0");
      return q.kappa * *q.theta + laplace();
    }
  }
  throw ParameterError("big_gamma: unknown kind");
}

ApproxBounds make_approx_bounds(std::size_t kappa, double eta_prime,
                                double universe_size,
                                const PrivacyParams& privacy, GammaKind kind) {
  privacy.validate();
  ApproxBounds b;
  b.kappa = kappa;
  b.kind = kind;
  b.gamma = gamma_laplace(privacy.epsilon, universe_size, privacy.beta);
  GammaQuery q;
  q.kind = kind;
  q.kappa = static_cast<double>(kappa);
  q.epsilon = privacy.epsilon;
  q.universe_size = universe_size;
  q.beta = privacy.beta;
  q.theta = privacy.theta;
  b.big_gamma = big_gamma(q);
  b.tau = 2.0 * b.big_gamma;
  b.rho = 3.0 + 4.0 * eta_prime;
  return b;
}

}  // namespace dpdbscan
