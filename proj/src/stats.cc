// src/stats.cc

// Copyright 2026  The rformant Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "rformant/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "rformant/error.h"
#include "rformant/isochrony.h"

namespace rformant {

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels,
                               std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
  const size_t m = labels_.size();
  if (m < 2) throw Error("distance matrix needs at least two labels");
  if (values_.size() != m * m) throw Error("distance matrix is not square");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != m) throw Error("distance matrix labels are not unique");
  for (size_t i = 0; i < m; ++i) {
    if (values_[i * m + i] != 0.0)
      throw Error("distance matrix diagonal must be zero");
    for (size_t j = 0; j < m; ++j) {
      double v = values_[i * m + j];
      if (!std::isfinite(v) || v < 0.0)
        throw Error("distance matrix entries must be finite and nonnegative");
      if (std::abs(v - values_[j * m + i]) > 1e-9)
        throw Error("distance matrix is not symmetric");
    }
  }
}

std::vector<double> DistanceMatrix::upper_triangle() const {
  std::vector<double> out;
  const size_t m = size();
  out.reserve(m * (m - 1) / 2);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) out.push_back((*this)(i, j));
  return out;
}

DistanceMatrix DistanceMatrix::permuted(std::span<const size_t> order) const {
  const size_t m = size();
  if (order.size() != m) throw Error("permutation size mismatch");
  std::vector<std::string> labels(m);
  std::vector<double> values(m * m);
  for (size_t i = 0; i < m; ++i) {
    labels[i] = labels_[order[i]];
    for (size_t j = 0; j < m; ++j) values[i * m + j] = (*this)(order[i], order[j]);
  }
  return DistanceMatrix(std::move(labels), std::move(values));
}

std::string_view metric_name(Metric m) {
  return m == Metric::kManhattan ? "manhattan" : "hamming";
}

Metric parse_metric(std::string_view name) {
  if (name == "manhattan") return Metric::kManhattan;
  if (name == "hamming") return Metric::kHamming;
  throw Error("unknown metric '" + std::string(name) + "'");
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("pearson_r: length mismatch");
  if (x.size() < 2) throw Error("pearson_r: need at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw Error("pearson_r: zero variance input");
  // sqrt of a correctly rounded square returns the operand, so identical
  // inputs give exactly 1.
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

int hamming_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("hamming: length mismatch");
  int count = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::llround(a[i] * 100.0) != std::llround(b[i] * 100.0)) ++count;
  return count;
}

double bin_distance(std::span<const double> a, std::span<const double> b,
                    Metric metric) {
  if (metric == Metric::kHamming) return hamming_distance(a, b);
  return manhattan(a, b);
}

DistanceMatrix distance_matrix(std::span<const RFormantProfile> profiles,
                               Metric metric) {
  const size_t m = profiles.size();
  if (m < 2) throw Error("distance_matrix: need at least two profiles");
  for (const auto &p : profiles) {
    if (p.domain != profiles[0].domain)
      throw Error("distance_matrix: profiles from mixed domains");
    if (p.n_bins != profiles[0].n_bins || p.bins.size() != profiles[0].bins.size())
      throw Error("distance_matrix: mismatched bin counts");
  }
  std::vector<std::string> labels;
  for (const auto &p : profiles) labels.push_back(p.label);
  std::vector<double> values(m * m, 0.0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      double d = bin_distance(profiles[i].bins, profiles[j].bins, metric);
      values[i * m + j] = d;
      values[j * m + i] = d;
    }
  return DistanceMatrix(std::move(labels), std::move(values));
}

PermutationRng::PermutationRng(uint64_t seed) : engine_(seed) {}

uint64_t PermutationRng::below(uint64_t bound) {
  if (bound == 0) throw Error("PermutationRng: zero bound");
  // Largest multiple of bound that fits, so every residue is equally likely.
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

void PermutationRng::shuffle(std::span<size_t> v) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(below(i));
    std::swap(v[i - 1], v[j]);
  }
}

namespace {

// Identical distance structures correlate perfectly even when constant.
double matrix_r(std::span<const double> x, std::span<const double> y) {
  if (std::equal(x.begin(), x.end(), y.begin(), y.end())) return 1.0;
  return pearson_r(x, y);
}

}  // namespace

MantelResult mantel(const DistanceMatrix &a, const DistanceMatrix &b,
                    int permutations, uint64_t seed) {
  if (a.labels() != b.labels())
    throw Error("mantel: matrices must share labels in the same order");
  const size_t m = a.size();
  if (m < 3) throw Error("mantel: need at least three labels");
  if (permutations < 99) throw Error("mantel: need at least 99 permutations");

  std::vector<size_t> by_label(m);
  std::iota(by_label.begin(), by_label.end(), size_t{0});
  std::sort(by_label.begin(), by_label.end(), [&](size_t i, size_t j) {
    return a.labels()[i] < a.labels()[j];
  });
  const DistanceMatrix sa = a.permuted(by_label);
  const DistanceMatrix sb = b.permuted(by_label);

  const std::vector<double> x = sa.upper_triangle();
  MantelResult res;
  res.permutations = permutations;
  res.r = matrix_r(x, sb.upper_triangle());

  PermutationRng rng(seed);
  std::vector<size_t> order(m);
  std::vector<double> y(x.size());
  const double observed = std::abs(res.r) - 1e-12;
  int hits = 0;
  for (int k = 0; k < permutations; ++k) {
    std::iota(order.begin(), order.end(), size_t{0});
    rng.shuffle(order);
    size_t t = 0;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) y[t++] = sb(order[i], order[j]);
    if (std::abs(matrix_r(x, y)) >= observed) ++hits;
  }
  res.p = (1.0 + hits) / (1.0 + permutations);
  return res;
}

std::string significance(double p) {
  if (p <= 0.01) return "**";
  if (p <= 0.05) return "*";
  return "ns";
}

CorrelationSummary correlation_summary(
    const std::map<std::string, double> &per_utterance_r, std::string pair_name) {
  if (per_utterance_r.empty()) throw Error("correlation_summary: no entries");
  CorrelationSummary s;
  s.pair = std::move(pair_name);
  s.count = per_utterance_r.size();
  double sum = 0.0;
  bool first = true;
  for (const auto &[label, r] : per_utterance_r) {
    sum += r;
    if (first || r < s.min_r) { s.min_r = r; s.min_label = label; }
    if (first || r > s.max_r) { s.max_r = r; s.max_label = label; }
    first = false;
  }
  s.mean_r = sum / static_cast<double>(s.count);
  return s;
}

}  // namespace rformant
