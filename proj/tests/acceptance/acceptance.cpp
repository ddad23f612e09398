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

// Acceptance harness: one PASS/FAIL line per criterion. Exits nonzero when
// any selected criterion fails. `--criterion N` runs a single one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dpdbscan/datagen.hpp"
#include "dpdbscan/dp_dbscan.hpp"
#include "dpdbscan/errors.hpp"
#include "dpdbscan/eval.hpp"
#include "dpdbscan/histogram.hpp"
#include "dpdbscan/noise.hpp"
#include "support/histogram_law.hpp"
#include "support/stats.hpp"

#ifdef DPDBSCAN_HAVE_CLI
#include <filesystem>
#include <fstream>

#include "dpdbscan/cli/commands.hpp"
#endif

namespace dpdbscan {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

SparseHistogram exact_histogram(const FrequencyMap& f, const GridSpec& g) {
  std::vector<HistEntry> entries;
  for (const CellCount& c : f.entries()) entries.push_back({c.cell, static_cast<double>(c.count)});
  return SparseHistogram(g, HistogramMode::kNaive, 0.0, 1e300, std::move(entries));
}

// 1. Linear release has the law of the truncated naive release.
Outcome histogram_equivalence() {
  const auto start = Clock::now();
  const GridSpec g(1, 0.25);
  const PointSet pts(1, std::vector<double>{0.1, 0.2, 0.6});
  const FrequencyMap f = exact_counts(pts, g);
  const double eps = 1.0;
  const double theta = 1.0;
  Rng rng(101);
  std::map<std::vector<int>, std::int64_t> linear;
  std::map<std::vector<int>, std::int64_t> truncated;
  for (int t = 0; t < 100000; ++t) {
    ++linear[testing::discretize(build_linear(f, g, eps, theta, rng), theta)];
    ++truncated[testing::discretize(build_naive(f, g, eps, rng), theta)];
  }
  const double p = testing::chi_square_two_sample(linear, truncated);
  const double elapsed = seconds_since(start);
  return {g.universe_size() == 4 && p > 0.01 && elapsed < 120.0,
          fmt("|X|=%llu n=%llu p=%.4f outcomes=%zu %.1fs",
              static_cast<unsigned long long>(g.universe_size()),
              static_cast<unsigned long long>(f.total()), p, linear.size(), elapsed)};
}

// 2. l-infinity error of both releases within gamma (naive) or theta + gamma.
Outcome histogram_accuracy() {
  const GridSpec g(2, std::sqrt(2.0) / 16.0);
  const double beta = 1.0 / 3.0;
  const double eps = 1.0;
  Rng rng(202);
  PointSet pts(2);
  for (int i = 0; i < 40; ++i) {
    const double p[] = {0.3 + 0.1 * uniform01(rng), 0.6 + 0.05 * uniform01(rng)};
    pts.push_back(p);
  }
  const FrequencyMap f = exact_counts(pts, g);
  const double gamma = gamma_laplace(eps, static_cast<double>(g.universe_size()), beta);
  const double theta = choose_theta(g.universe_size(), pts.size(), eps);
  const auto linf = [&](const SparseHistogram& h) {
    double worst = 0.0;
    for (CellId c = 0; c < g.universe_size(); ++c) {
      worst = std::max(worst, std::abs(h.value(c) - static_cast<double>(f.count(c))));
    }
    return worst;
  };
  int naive_bad = 0;
  int linear_bad = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    naive_bad += linf(build_naive(f, g, eps, rng)) > gamma;
    linear_bad += linf(build_linear(f, g, eps, theta, rng)) > theta + gamma;
  }
  const double naive_rate = naive_bad / static_cast<double>(trials);
  const double linear_rate = linear_bad / static_cast<double>(trials);
  return {g.universe_size() == 256 && theta > 0.0 && naive_rate <= beta + 0.05 &&
              linear_rate <= beta + 0.05,
          fmt("|X|=%llu gamma=%.3f theta=%.3f naive=%.3f linear=%.3f bound=%.3f",
              static_cast<unsigned long long>(g.universe_size()), gamma, theta, naive_rate,
              linear_rate, beta + 0.05)};
}

// 3. Quoted Gamma values and empirical exceedance on a kappa = 21 grid.
Outcome gamma_calibration() {
  GammaQuery q;
  q.kappa = 21;
  q.epsilon = 1.0;
  q.universe_size = 1000;
  q.beta = 1.0 / 3.0;
  const double lap = big_gamma(q);
  q.kind = GammaKind::kGeometric;
  const double geom = big_gamma(q);

  const GridSpec g(2, std::sqrt(2.0) / 32.0);
  const NeighborStencil stencil(g);
  const double beta = 1.0 / 3.0;
  const double gamma_grid = big_gamma({GammaKind::kLaplace, static_cast<double>(stencil.size()),
                                       1.0, static_cast<double>(g.universe_size()), beta,
                                       std::nullopt, std::nullopt});
  Rng rng(303);
  std::vector<double> noise(g.universe_size());
  std::vector<std::int64_t> scratch(2);
  int exceed = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    for (double& z : noise) z = sample_laplace(rng, 1.0);
    bool over = false;
    for (CellId c = 0; c < g.universe_size() && !over; ++c) {
      double sum = 0.0;
      stencil.for_each_neighbor(c, scratch, [&](CellId n) { sum += noise[n]; });
      over = std::abs(sum) > gamma_grid;
    }
    exceed += over;
  }
  const double rate = exceed / static_cast<double>(trials);
  const bool ok = std::abs(lap - 38.2) <= 0.1 && std::abs(geom - 252.0) <= 1.0 &&
                  stencil.size() == 21 && rate <= beta + 0.03;
  return {ok, fmt("laplace=%.4f geometric=%.3f grid |X|=%llu Gamma=%.3f exceedance=%.5f",
                  lap, geom, static_cast<unsigned long long>(g.universe_size()), gamma_grid,
                  rate)};
}

PointSet clustered_points(Rng& rng, int d, int n) {
  PointSet pts(d);
  const int centers = 1 + static_cast<int>(uniform_index(rng, 3));
  std::vector<double> c(static_cast<std::size_t>(d * centers));
  for (double& x : c) x = 0.15 + 0.7 * uniform01(rng);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    const std::size_t k = uniform_index(rng, static_cast<std::uint64_t>(centers + 1));
    for (std::size_t j = 0; j < p.size(); ++j) {
      p[j] = k == static_cast<std::size_t>(centers)
                 ? uniform01(rng)
                 : std::clamp(c[k * p.size() + j] + 0.08 * (uniform01(rng) - 0.5), 0.0, 1.0);
    }
    pts.push_back(p);
  }
  return pts;
}

// 4. Spans sandwich the exact clusterings whenever the noise is within bounds.
Outcome sandwich_guarantee() {
  const auto start = Clock::now();
  Rng rng(404);
  const double beta = 1.0 / 3.0;
  const double epsilons[] = {1.0, 10.0, 100.0};
  int instances = 0;
  int conditioned = 0;
  int conditioned_ok = 0;
  int failures = 0;
  int nontrivial = 0;
  std::string first_failure;
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + t % 2;
    const int n = 10 + static_cast<int>(uniform_index(rng, 41));
    const PointSet pts = clustered_points(rng, d, n);
    const double alpha = 0.05 + 0.15 * uniform01(rng);
    const double min_pts = 2.0 + static_cast<double>(uniform_index(rng, 5));
    const GridSpec g(d, alpha, 1.0);
    PrivacyParams privacy;
    privacy.epsilon = epsilons[t % 3];
    privacy.beta = beta;
    const ReleasedHistogram r = release_histogram(pts, g, privacy, rng);
    const SpanSet spans = extract_spans(r, min_pts);
    const Provenance& prov = spans.provenance();
    const SandwichReport rep =
        sandwich_check(spans, pts, {alpha, prov.min_pts_effective}, prov.rho, prov.tau);
    ++instances;
    failures += !rep.ok();
    nontrivial += !spans.empty();

    const FrequencyMap f = exact_counts(pts, g);
    const double cell_bound = r.bounds.gamma + r.privacy.theta;
    bool within = true;
    for (CellId c = 0; c < g.universe_size() && within; ++c) {
      within = std::abs(r.histogram.value(c) - static_cast<double>(f.count(c))) <= cell_bound;
    }
    for (CellId c = 0; c < g.universe_size() && within; ++c) {
      double dev = 0.0;
      for (const CellIndex& nb : neighborhood(g, g.from_id(c))) {
        const CellId id = g.to_id(nb);
        dev += r.histogram.value(id) - static_cast<double>(f.count(id));
      }
      within = std::abs(dev) <= r.bounds.big_gamma;
    }
    if (!within) continue;
    ++conditioned;
    conditioned_ok += rep.ok();
    if (!rep.ok() && first_failure.empty()) first_failure = " first: " + rep.detail;
  }
  const double rate = failures / static_cast<double>(instances);
  const double elapsed = seconds_since(start);
  const bool ok = conditioned > 0 && conditioned_ok == conditioned && rate <= beta + 0.05 &&
                  elapsed < 300.0;
  return {ok, fmt("conditioned %d/%d ok of %d instances (%d with spans), unconditioned "
                  "failure rate %.3f, %.1fs",
                  conditioned_ok, conditioned, instances, nontrivial, rate, elapsed) +
                  first_failure};
}

struct Workload {
  SynthKind kind;
  double min_pts;
};

const Workload kWorkloads[] = {
    {SynthKind::kMoons, 7}, {SynthKind::kCircles, 10}, {SynthKind::kBlobs, 7}};

SynthData table_dataset(SynthKind kind, std::uint64_t seed) {
  SynthSpec spec;
  spec.kind = kind;
  spec.n = 2000;
  spec.seed = seed;
  return generate(spec);
}

// 5. Huge epsilon reproduces the noise-free grid pipeline.
Outcome noiseless_limit() {
  bool ok = true;
  std::string detail;
  double moons_ari = 0.0;
  for (const Workload& w : kWorkloads) {
    const SynthData data = table_dataset(w.kind, 0);
    const DbscanParams params{0.2 * data.scale, w.min_pts};
    PrivacyParams privacy;
    privacy.epsilon = 1e9;
    Rng rng(505);
    const SpanSet dp = run(data.points, params, privacy, 1.0, rng);
    const GridSpec& g = dp.grid();
    const auto core = find_core_cells(exact_histogram(exact_counts(data.points, g), g),
                                      dp.provenance().min_pts_effective, 0.0);
    const SpanSet reference = merge_cells(core, g);
    const bool same = dp.spans() == reference.spans();
    ok = ok && same;
    detail += fmt("%s %s(%zu spans) ", std::string(to_string(w.kind)).c_str(),
                  same ? "same" : "DIFFERENT", dp.size());
    if (w.kind == SynthKind::kMoons) {
      moons_ari = ari(extract_labels(dp, data.points), exact_dbscan(data.points, params));
    }
  }
  ok = ok && moons_ari >= 0.99;
  return {ok, detail + fmt("moons ARI vs exact %.4f", moons_ari)};
}

// 6. Scores at unit epsilon, median over five seeds.
Outcome table_scores() {
  bool ok = true;
  std::string detail;
  for (const Workload& w : kWorkloads) {
    const auto start = Clock::now();
    std::vector<double> aris;
    std::vector<double> amis;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SynthData data = table_dataset(w.kind, seed);
      Rng rng(600 + seed);
      const SpanSet s = run(data.points, {0.2 * data.scale, w.min_pts}, {}, 1.0, rng);
      const Labeling labels = extract_labels(s, data.points);
      aris.push_back(ari(labels, data.labels));
      amis.push_back(ami(labels, data.labels));
    }
    const double a = median(aris);
    const double m = median(amis);
    const double elapsed = seconds_since(start);
    bool pass = elapsed < 60.0;
    switch (w.kind) {
      case SynthKind::kMoons: pass = pass && a >= 0.90 && m >= 0.90; break;
      case SynthKind::kCircles: pass = pass && a >= 0.85; break;
      default: pass = pass && a >= 0.70; break;
    }
    ok = ok && pass;
    detail += fmt("%s ARI=%.3f AMI=%.3f%s; ", std::string(to_string(w.kind)).c_str(), a, m,
                  pass ? "" : " (below target)");
  }
  return {ok, detail};
}

// 7. Linear-time release versus the dense release at |X| ~ 1e7.
Outcome linear_scaling() {
  const std::size_t n = 1000000;
  Rng rng(707);
  PointSet pts(2);
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p[] = {uniform01(rng), uniform01(rng)};
    pts.push_back(p);
  }
  const GridSpec g(2, std::sqrt(2.0) / 3163.0);
  const FrequencyMap f = exact_counts(pts, g);
  const double theta = choose_theta(g.universe_size(), n, 1.0);

  auto start = Clock::now();
  const SparseHistogram linear = build_linear(f, g, 1.0, theta, rng);
  const double linear_s = seconds_since(start);

  std::string naive_result;
  bool contrast = false;
  start = Clock::now();
  try {
    const SparseHistogram naive = build_naive(f, g, 1.0, rng);
    const double naive_s = seconds_since(start);
    contrast = naive_s > 10.0 * linear_s;
    naive_result = fmt("naive %.2fs (%.1fx)", naive_s, naive_s / linear_s);
  } catch (const CapacityError&) {
    contrast = true;
    naive_result = "naive rejected by capacity guard";
  }
  const bool ok = linear_s < 60.0 && linear.size() <= 4 * n && contrast;
  return {ok, fmt("|X|=%llu theta=%.3f linear %.2fs, %zu entries; ",
                  static_cast<unsigned long long>(g.universe_size()), theta, linear_s,
                  linear.size()) +
                  naive_result};
}

// 8. Two MinPts values from one release.
Outcome minpts_sweep() {
#ifdef DPDBSCAN_HAVE_CLI
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(DPDBSCAN_TEST_TMPDIR);
  fs::create_directories(dir);
  const std::string csv = (dir / "moons.csv").string();
  {
    cli::GenerateConfig gen;
    gen.spec.kind = SynthKind::kMoons;
    gen.spec.n = 2000;
    gen.spec.seed = 8;
    std::ofstream out(csv, std::ios::binary);
    cli::cmd_generate(gen, out);
  }
  cli::RunConfig config;
  config.input = csv;
  config.csv.has_header = true;
  config.csv.columns = {"x0", "x1"};
  config.alpha = 0.2;
  config.min_pts_sweep = {7, 25};
  config.seed = 808;
  config.out = (dir / "sweep.json").string();
  std::ostringstream log;
  const auto outputs = cli::cmd_run(config, log);
  std::vector<cli::SpansFile> files;
  for (const auto& o : outputs) files.push_back(cli::read_spans(o.path));
  if (files.size() != 2) return {false, "expected two span files"};
  const Provenance& a = files[0].spans.provenance();
  const Provenance& b = files[1].spans.provenance();
  const bool valid = files[0].spans.check_invariants().empty() &&
                     files[1].spans.check_invariants().empty();
  const bool ok = valid && a.epsilon == b.epsilon &&
                  a.histogram_fingerprint == b.histogram_fingerprint &&
                  files[0].release == files[1].release && a.min_pts != b.min_pts;
  return {ok, fmt("epsilon %g/%g fingerprint %s/%s spans %zu/%zu", a.epsilon, b.epsilon,
                  a.histogram_fingerprint.c_str(), b.histogram_fingerprint.c_str(),
                  files[0].spans.size(), files[1].spans.size())};
#else
  const SynthData data = table_dataset(SynthKind::kMoons, 8);
  const GridSpec g(2, 0.2 * data.scale);
  Rng rng(808);
  const ReleasedHistogram r = release_histogram(data.points, g, {}, rng);
  const SpanSet a = extract_spans(r, 7);
  const SpanSet b = extract_spans(r, 25);
  const bool ok = a.check_invariants().empty() && b.check_invariants().empty() &&
                  a.provenance().epsilon == b.provenance().epsilon &&
                  a.provenance().histogram_fingerprint == b.provenance().histogram_fingerprint;
  return {ok, "fingerprint " + a.provenance().histogram_fingerprint};
#endif
}

double pair_count_ari(const std::vector<int>& a, const std::vector<int>& b) {
  double both = 0, in_a = 0, in_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      both += a[i] == a[j] && b[i] == b[j];
      in_a += a[i] == a[j];
      in_b += b[i] == b[j];
    }
  }
  const double pairs = a.size() * (a.size() - 1.0) / 2.0;
  const double expected = in_a * in_b / pairs;
  const double max_index = 0.5 * (in_a + in_b);
  return max_index == expected ? 1.0 : (both - expected) / (max_index - expected);
}

// AMI from marginals and cell counts, with the hypergeometric law of each cell
// built by its ratio recurrence.
double contingency_ami(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, long double> ra, cb;
  std::map<std::pair<int, int>, long double> cell;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ra[a[i]] += 1;
    cb[b[i]] += 1;
    cell[{a[i], b[i]}] += 1;
  }
  const long double n = a.size();
  long double mi = 0, ha = 0, hb = 0;
  for (const auto& [k, c] : cell) {
    mi += c / n * std::log(n * c / (ra[k.first] * cb[k.second]));
  }
  for (const auto& [k, c] : ra) ha -= c / n * std::log(c / n);
  for (const auto& [k, c] : cb) hb -= c / n * std::log(c / n);
  long double emi = 0;
  for (const auto& [i, ai] : ra) {
    for (const auto& [j, bj] : cb) {
      // P(n_ij = k) for k from max(0, ai + bj - n) to min(ai, bj).
      const long double lo = std::max(1.0L, ai + bj - n);
      const long double hi = std::min(ai, bj);
      if (lo > hi) continue;
      // log P at k = lo, then P(k + 1) / P(k) = (ai - k)(bj - k) / ((k + 1)(n - ai - bj + k + 1)).
      long double logp = std::lgamma(ai + 1) + std::lgamma(bj + 1) + std::lgamma(n - ai + 1) +
                         std::lgamma(n - bj + 1) - std::lgamma(n + 1) - std::lgamma(lo + 1) -
                         std::lgamma(ai - lo + 1) - std::lgamma(bj - lo + 1) -
                         std::lgamma(n - ai - bj + lo + 1);
      long double p = std::exp(logp);
      for (long double k = lo; k <= hi; k += 1) {
        emi += p * k / n * std::log(n * k / (ai * bj));
        p *= (ai - k) * (bj - k) / ((k + 1) * (n - ai - bj + k + 1));
      }
    }
  }
  return static_cast<double>((mi - emi) / (0.5L * (ha + hb) - emi));
}

// 9. Metrics against independent oracles.
Outcome metric_oracle() {
  Rng rng(909);
  double worst_ari = 0.0;
  double worst_ami = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + uniform_index(rng, 199);
    const auto draw = [&](std::uint64_t k) {
      std::vector<int> v(n);
      for (int& x : v) x = static_cast<int>(uniform_index(rng, k));
      v[0] = 0;
      v[1] = 1;
      return v;
    };
    const auto a = draw(2 + uniform_index(rng, 6));
    const auto b = draw(2 + uniform_index(rng, 6));
    worst_ari = std::max(worst_ari, std::abs(ari(a, b) - pair_count_ari(a, b)));
    worst_ami = std::max(worst_ami, std::abs(ami(a, b) - contingency_ami(a, b)));
  }
  return {worst_ari <= 1e-10 && worst_ami <= 1e-10,
          fmt("max |ARI diff|=%.3g max |AMI diff|=%.3g over 100 labelings", worst_ari,
              worst_ami)};
}

}  // namespace
}  // namespace dpdbscan

int main(int argc, char** argv) {
  using dpdbscan::Outcome;
  const std::vector<std::function<Outcome()>> criteria = {
      dpdbscan::histogram_equivalence, dpdbscan::histogram_accuracy,
      dpdbscan::gamma_calibration,     dpdbscan::sandwich_guarantee,
      dpdbscan::noiseless_limit,       dpdbscan::table_scores,
      dpdbscan::linear_scaling,        dpdbscan::minpts_sweep,
      dpdbscan::metric_oracle};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu: %s %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
