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

#include "dpdbscan/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dpdbscan/errors.hpp"

namespace dpdbscan {
namespace {

std::vector<std::size_t> dense_codes(std::span<const int> labels, std::size_t& k) {
  std::map<int, std::size_t> codes;
  for (const int v : labels) codes.emplace(v, 0);
  std::size_t next = 0;
  for (auto& [label, code] : codes) code = next++;
  k = next;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = codes.at(labels[i]);
  return out;
}

double entropy(const std::vector<std::int64_t>& sums, double n) {
  double h = 0.0;
  for (const std::int64_t c : sums) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

double mutual_information(const ContingencyTable& t) {
  const double n = static_cast<double>(t.total());
  double mi = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const std::int64_t c = t.count(i, j);
      if (c == 0) continue;
      const double nij = static_cast<double>(c);
      mi += (nij / n) * (std::log(nij) + std::log(n) -
                         std::log(static_cast<double>(t.row_sums()[i])) -
                         std::log(static_cast<double>(t.col_sums()[j])));
    }
  }
  return std::max(0.0, mi);
}

// E[MI] under the hypergeometric model with both marginals fixed.
double expected_mutual_information(const ContingencyTable& t) {
  const double n = static_cast<double>(t.total());
  const double lg_n1 = std::lgamma(n + 1.0);
  double emi = 0.0;
  for (const std::int64_t ai : t.row_sums()) {
    const double a = static_cast<double>(ai);
    const double lg_a = std::lgamma(a + 1.0) + std::lgamma(n - a + 1.0);
    for (const std::int64_t bj : t.col_sums()) {
      const double b = static_cast<double>(bj);
      const double lg_ab = lg_a + std::lgamma(b + 1.0) + std::lgamma(n - b + 1.0) - lg_n1;
      const std::int64_t lo = std::max<std::int64_t>(1, ai + bj - t.total());
      const std::int64_t hi = std::min(ai, bj);
      for (std::int64_t k = lo; k <= hi; ++k) {
        const double nij = static_cast<double>(k);
        const double log_pmf = lg_ab - std::lgamma(nij + 1.0) - std::lgamma(a - nij + 1.0) -
                               std::lgamma(b - nij + 1.0) -
                               std::lgamma(n - a - b + nij + 1.0);
        emi += (nij / n) * (std::log(n) + std::log(nij) - std::log(a) - std::log(b)) *
               std::exp(log_pmf);
      }
    }
  }
  return emi;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw ParameterError("labelings differ in length");
}

}  // namespace

ContingencyTable::ContingencyTable(std::span<const int> a, std::span<const int> b) {
  check_lengths(a.size(), b.size());
  std::size_t ka = 0;
  std::size_t kb = 0;
  const auto ca = dense_codes(a, ka);
  const auto cb = dense_codes(b, kb);
  counts_.assign(ka * kb, 0);
  row_sums_.assign(ka, 0);
  col_sums_.assign(kb, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++counts_[ca[i] * kb + cb[i]];
    ++row_sums_[ca[i]];
    ++col_sums_[cb[i]];
  }
  total_ = static_cast<std::int64_t>(a.size());
}

bool ContingencyTable::is_bijection() const {
  if (rows() != cols()) return false;
  for (std::size_t i = 0; i < rows(); ++i) {
    int nonzero = 0;
    for (std::size_t j = 0; j < cols(); ++j) nonzero += count(i, j) != 0;
    if (nonzero != 1) return false;
  }
  return true;
}

double ari(std::span<const int> a, std::span<const int> b) {
  const ContingencyTable t(a, b);
  const double n = static_cast<double>(t.total());
  // Pair confusion matrix: tp pairs together in both, fp/fn together in one.
  double sum_squares = 0.0;
  double row_weighted = 0.0;
  double col_weighted = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const double c = static_cast<double>(t.count(i, j));
      sum_squares += c * c;
      row_weighted += c * static_cast<double>(t.row_sums()[i]);
      col_weighted += c * static_cast<double>(t.col_sums()[j]);
    }
  }
  const double tp = sum_squares - n;
  const double fp = col_weighted - sum_squares;
  const double fn = row_weighted - sum_squares;
  const double tn = n * n - fp - fn - sum_squares;
  if (fn == 0.0 && fp == 0.0) return 1.0;
  return 2.0 * (tp * tn - fn * fp) / ((tp + fn) * (fn + tn) + (tp + fp) * (fp + tn));
}

double ari(const Labeling& a, const Labeling& b) { return ari(a.labels, b.labels); }

double ami(std::span<const int> a, std::span<const int> b) {
  const ContingencyTable t(a, b);
  if ((t.rows() == 1 && t.cols() == 1) || t.total() == 0) return 1.0;
  if (t.is_bijection()) return 1.0;
  const double n = static_cast<double>(t.total());
  const double mi = mutual_information(t);
  const double emi = expected_mutual_information(t);
  const double normalizer = 0.5 * (entropy(t.row_sums(), n) + entropy(t.col_sums(), n));
  double denominator = normalizer - emi;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  denominator = denominator < 0.0 ? std::min(denominator, -kEps) : std::max(denominator, kEps);
  return (mi - emi) / denominator;
}

double ami(const Labeling& a, const Labeling& b) { return ami(a.labels, b.labels); }

Labeling extract_labels(const SpanSet& spans, const PointSet& points) {
  Labeling out;
  out.labels.resize(points.size());
  std::vector<int> used(spans.size() + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.labels[i] = spans.classify(points[i]);
    used[static_cast<std::size_t>(out.labels[i])] = 1;
  }
  std::vector<int> renumber(spans.size() + 1, 0);
  for (std::size_t id = 1; id < used.size(); ++id) {
    if (used[id]) renumber[id] = ++out.num_clusters;
  }
  for (int& label : out.labels) label = renumber[static_cast<std::size_t>(label)];
  return out;
}

}  // namespace dpdbscan
