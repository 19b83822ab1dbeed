// src/profile.cc

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

#include "rformant/profile.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rformant/error.h"

namespace rformant {

std::vector<Peak> top_n_frequencies(const LongTermSpectrum &spec, int n,
                                    PeakSelection mode) {
  if (!spec.has_residual()) throw Error("top_n: spectrum has no residual");
  if (n < 0) throw Error("top_n: n must be nonnegative");
  const auto &r = spec.residual;
  if (static_cast<size_t>(n) > r.size())
    throw Error("top_n: n exceeds the number of band samples");

  const double floor = *std::min_element(r.begin(), r.end());
  std::vector<size_t> idx;
  for (size_t k = 0; k < r.size(); ++k) {
    if (mode == PeakSelection::kLocalMax) {
      bool left_ok = k == 0 || r[k] >= r[k - 1];
      bool right_ok = k + 1 == r.size() || r[k] >= r[k + 1];
      if (!(left_ok && right_ok)) continue;
    }
    idx.push_back(k);
  }
  // Frequencies ascend with k, so the index breaks ties by frequency.
  std::stable_sort(idx.begin(), idx.end(),
                   [&](size_t a, size_t b) { return r[a] > r[b]; });
  if (idx.size() > static_cast<size_t>(n)) idx.resize(static_cast<size_t>(n));

  std::vector<Peak> peaks;
  peaks.reserve(idx.size());
  for (size_t k : idx) peaks.push_back({spec.freqs[k], r[k] - floor});
  return peaks;
}

std::vector<double> rhythm_bars(const LongTermSpectrum &spec, int n_bars,
                                PeakSelection mode) {
  std::vector<double> f;
  for (const Peak &p : top_n_frequencies(spec, n_bars, mode)) f.push_back(p.freq);
  std::sort(f.begin(), f.end());
  return f;
}

std::vector<double> weighted_bins(std::span<const Peak> peaks, Band band,
                                  int n_bins) {
  if (n_bins < 1) throw Error("weighted_bins: n_bins must be >= 1");
  if (!(band.lo < band.hi)) throw Error("weighted_bins: empty band");
  const double width = (band.hi - band.lo) / n_bins;
  const double tol = 1e-9 * (band.hi - band.lo);

  std::vector<double> bins(static_cast<size_t>(n_bins), 0.0);
  for (const Peak &p : peaks) {
    if (p.freq < band.lo - tol || p.freq > band.hi + tol)
      throw Error("weighted_bins: peak outside band");
    // Small slack so a frequency sitting on an interior edge is not pushed
    // into the lower bin by rounding.
    double pos = std::max(0.0, (p.freq - band.lo) / width + 1e-9);
    int i = std::min(static_cast<int>(std::floor(pos)), n_bins - 1);
    bins[static_cast<size_t>(i)] += p.weight;
  }
  const double total = std::accumulate(bins.begin(), bins.end(), 0.0);
  if (total > 0.0)
    for (double &b : bins) b /= total;
  return bins;
}

RFormantProfile profile(const LongTermSpectrum &spec, int n, int n_bins,
                        PeakSelection mode) {
  if (!spec.band) throw Error("profile: spectrum is not band-limited");
  RFormantProfile p;
  p.label = spec.label;
  p.domain = spec.domain;
  p.band = *spec.band;
  p.n_bins = n_bins;
  p.peaks = top_n_frequencies(spec, n, mode);
  p.bins = weighted_bins(p.peaks, p.band, n_bins);
  return p;
}

PeakCluster dominant_cluster(std::span<const Peak> peaks, double max_gap) {
  if (peaks.empty()) throw Error("dominant_cluster: no peaks");
  std::vector<Peak> sorted(peaks.begin(), peaks.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Peak &a, const Peak &b) { return a.freq < b.freq; });

  std::vector<PeakCluster> clusters;
  for (const Peak &p : sorted) {
    if (clusters.empty() || p.freq - clusters.back().hi > max_gap + 1e-12) {
      clusters.push_back({{p}, p.freq, p.freq, p.weight});
    } else {
      PeakCluster &c = clusters.back();
      c.members.push_back(p);
      c.hi = p.freq;
      c.total_weight += p.weight;
    }
  }
  auto best = clusters.begin();
  for (auto it = clusters.begin(); it != clusters.end(); ++it)
    if (it->total_weight > best->total_weight) best = it;
  return *best;
}

}  // namespace rformant
