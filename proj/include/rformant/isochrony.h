// include/rformant/isochrony.h

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

#ifndef RFORMANT_ISOCHRONY_H_
#define RFORMANT_ISOCHRONY_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rformant {

struct Interval {
  double start = 0.0;  // seconds
  double end = 0.0;
  std::string label;

  double duration() const { return end - start; }
};

/// Time-stamped labelled intervals of one annotation tier, ascending and
/// non-overlapping.
struct AnnotationTier {
  std::string name;
  std::vector<Interval> intervals;
};

/// Checks the tier invariants (end > start, ascending, overlaps below 1e-6 s).
void validate(const AnnotationTier &tier);

/// Parses "start_s,end_s,label" rows. A non-numeric first row is taken as a
/// header; blank lines and lines starting with '#' are skipped.
AnnotationTier parse_annotation_csv(const std::string &text,
                                    const std::string &tier_name);
AnnotationTier load_annotation_csv(const std::filesystem::path &path);

/// Interval durations in seconds (gaps between intervals are not included).
std::vector<double> durations(const AnnotationTier &tier);

/// (d_1..d_{n-1}) and (d_2..d_n).
std::pair<std::vector<double>, std::vector<double>> shifted_subvectors(
    std::span<const double> d);

/// Raw Pairwise Variability Index: 100 * sum|d_k - d_{k+1}| / (n - 1).
double rpvi(std::span<const double> d);

/// Normalised Pairwise Variability Index:
/// 100 * sum(|d_k - d_{k+1}| / ((d_k + d_{k+1}) / 2)) / (n - 1).
double npvi(std::span<const double> d);

double manhattan(std::span<const double> a, std::span<const double> b);
double canberra(std::span<const double> a, std::span<const double> b);

struct RateSummary {
  size_t count = 0;
  double total_s = 0.0;
  double mean_s = 0.0;
  double rate_hz = 0.0;
};

RateSummary rates_from_annotation(const AnnotationTier &tier);

struct FormantRange {
  double lo = 0.0;
  double hi = 0.0;
  double centre = 0.0;
};

/// Predicted R-formant zone between the word rate and the syllable rate.
/// The rates are swapped if given in the wrong order.
FormantRange predict_formant_range(double word_rate_hz, double syllable_rate_hz);

enum class SdKind { kPopulation, kSample };

struct WagnerScatter {
  std::vector<std::pair<double, double>> pairs;  // (z_k, z_{k+1})
  // Counts for sign patterns (-,-), (-,+), (+,-), (+,+); zero is nonnegative.
  std::array<size_t, 4> quadrants{};
};

WagnerScatter wagner_pairs(std::span<const double> d,
                           SdKind sd = SdKind::kPopulation);

}  // namespace rformant

#endif  // RFORMANT_ISOCHRONY_H_
