// include/rformant/profile.h

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

#ifndef RFORMANT_PROFILE_H_
#define RFORMANT_PROFILE_H_

#include <span>
#include <string>
#include <vector>

#include "rformant/lts.h"

namespace rformant {

struct Peak {
  double freq = 0.0;    // Hz
  double weight = 0.0;  // residual minus the band minimum, >= 0
};

/// How candidate frequencies are chosen before ranking.
enum class PeakSelection {
  kRank,      // every band sample is a candidate
  kLocalMax,  // only samples not lower than their neighbours
};

/// R-formant summary of one utterance in one domain.
struct RFormantProfile {
  std::string label;
  Domain domain = Domain::kAms;
  std::vector<Peak> peaks;    // weight descending, ties by ascending freq
  std::vector<double> bins;   // sums to 1, or all zero when no weight
  Band band;
  int n_bins = 10;
};

/// The n band samples with the largest residuals. Weights are shifted by the
/// minimum residual in the band so that they are nonnegative.
std::vector<Peak> top_n_frequencies(const LongTermSpectrum &spec, int n,
                                    PeakSelection mode = PeakSelection::kRank);

/// Frequencies of the n most prominent samples, ascending.
std::vector<double> rhythm_bars(const LongTermSpectrum &spec, int n_bars,
                                PeakSelection mode = PeakSelection::kRank);

/// Histogram of peak weights over n_bins equal-width bins spanning the band,
/// normalised to sum 1. A peak at exactly band.hi lands in the last bin.
std::vector<double> weighted_bins(std::span<const Peak> peaks, Band band,
                                  int n_bins);

RFormantProfile profile(const LongTermSpectrum &spec, int n, int n_bins,
                        PeakSelection mode = PeakSelection::kRank);

/// A run of peaks whose neighbouring frequencies are at most `max_gap` apart.
struct PeakCluster {
  std::vector<Peak> members;  // ascending frequency
  double lo = 0.0;
  double hi = 0.0;
  double total_weight = 0.0;

  double centre() const { return 0.5 * (lo + hi); }
};

/// Groups peaks into frequency-contiguous clusters and returns the one with
/// the largest total weight (ties: lowest frequency). Requires peaks.
PeakCluster dominant_cluster(std::span<const Peak> peaks, double max_gap);

}  // namespace rformant

#endif  // RFORMANT_PROFILE_H_
