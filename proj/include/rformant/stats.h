// include/rformant/stats.h

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

#ifndef RFORMANT_STATS_H_
#define RFORMANT_STATS_H_

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rformant/profile.h"

namespace rformant {

/// Square, labelled, symmetric matrix with zero diagonal. Row-major storage.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<std::string> labels, std::vector<double> values);

  size_t size() const { return labels_.size(); }
  const std::vector<std::string> &labels() const { return labels_; }
  const std::vector<double> &values() const { return values_; }
  double operator()(size_t i, size_t j) const { return values_[i * size() + j]; }

  /// Entries above the diagonal, row by row.
  std::vector<double> upper_triangle() const;

  /// Rows and columns reordered so that new row i is old row order[i].
  DistanceMatrix permuted(std::span<const size_t> order) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

enum class Metric { kManhattan, kHamming };

std::string_view metric_name(Metric m);
Metric parse_metric(std::string_view name);

/// Product-moment correlation. Throws when either input has zero variance.
double pearson_r(std::span<const double> x, std::span<const double> y);

/// Number of positions that differ once both vectors are rounded to two
/// decimal places.
int hamming_distance(std::span<const double> a, std::span<const double> b);

double bin_distance(std::span<const double> a, std::span<const double> b,
                    Metric metric);

DistanceMatrix distance_matrix(std::span<const RFormantProfile> profiles,
                               Metric metric);

struct MantelResult {
  double r = 0.0;
  double p = 1.0;
  int permutations = 0;
};

/// Mantel permutation test between two distance matrices over the same
/// labels. r is Pearson's r over the strict upper triangles. p is two-tailed
/// with the +1 correction: (1 + #{|r_perm| >= |r|}) / (1 + permutations),
/// where each permutation reorders the rows and columns of B together. Both
/// matrices are first put into label order, so the result does not depend on
/// the order in which utterances were listed. Deterministic in `seed`.
MantelResult mantel(const DistanceMatrix &a, const DistanceMatrix &b,
                    int permutations, uint64_t seed);

/// "**" for p <= 0.01, "*" for p <= 0.05, otherwise "ns".
std::string significance(double p);

struct CorrelationSummary {
  std::string pair;
  double mean_r = 0.0;
  std::string min_label;
  double min_r = 0.0;
  std::string max_label;
  double max_r = 0.0;
  size_t count = 0;
};

/// Mean and extreme entries of per-utterance correlations. Ties go to the
/// label that sorts first.
CorrelationSummary correlation_summary(
    const std::map<std::string, double> &per_utterance_r, std::string pair_name);

/// Uniform integer in [0, bound) from a 64-bit Mersenne Twister stream,
/// using rejection so the sequence is the same on every platform.
class PermutationRng {
 public:
  explicit PermutationRng(uint64_t seed);
  uint64_t below(uint64_t bound);
  /// Fisher-Yates shuffle of `v` in place.
  void shuffle(std::span<size_t> v);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rformant

#endif  // RFORMANT_STATS_H_
