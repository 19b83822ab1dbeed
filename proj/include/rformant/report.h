// include/rformant/report.h

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

#ifndef RFORMANT_REPORT_H_
#define RFORMANT_REPORT_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rformant/audio_io.h"
#include "rformant/config.h"
#include "rformant/demodulation.h"
#include "rformant/lts.h"
#include "rformant/profile.h"
#include "rformant/stats.h"

namespace rformant {

inline constexpr int kReportSchema = 1;

inline constexpr std::array<Domain, 3> kDomains = {Domain::kAms, Domain::kAems,
                                                   Domain::kFems};

/// Domain pairs in the order used by the correlation tables.
struct DomainPair {
  Domain first;
  Domain second;
  std::string name() const;
};
inline constexpr std::array<DomainPair, 3> kDomainPairs = {
    DomainPair{Domain::kAems, Domain::kFems},
    DomainPair{Domain::kAms, Domain::kAems},
    DomainPair{Domain::kAms, Domain::kFems}};

/// Full in-memory result for one domain of one clip.
struct DomainAnalysis {
  Domain domain = Domain::kAms;
  bool present = false;
  std::string absent_reason;
  double series_rate = 0.0;
  LongTermSpectrum spectrum;     // full positive-frequency spectrum
  LongTermSpectrum normalized;   // band-limited, with residual
  RFormantProfile profile;
  std::vector<double> rhythm_bars;
};

/// Everything computed for one clip; kept for plotting.
struct ClipAnalysis {
  SignalBuffer signal;      // after trimming
  SignalBuffer am_series;   // rectified and decimated
  Track envelope;
  Track f0_raw;
  std::optional<Track> f0_continuous;
  std::array<DomainAnalysis, 3> domains;  // indexed as kDomains
  std::vector<std::string> warnings;

  const DomainAnalysis &domain(Domain d) const {
    return domains[static_cast<size_t>(d)];
  }
};

/// Runs rectify -> decimate -> AMS, envelope -> AEMS and
/// AMDF -> continuize -> FEMS, then detrends each spectrum over the band and
/// extracts its profile. Missing FEMS (no voiced frame) is recorded, not
/// thrown.
ClipAnalysis analyze_clip(const SignalBuffer &sig, const AnalysisConfig &cfg);

/// Serializable per-utterance summary (the report JSON).
struct UtteranceReport {
  struct DomainSummary {
    bool present = false;
    std::string absent_reason;
    double series_rate_hz = 0.0;
    double delta_f_hz = 0.0;
    Band band;
    size_t band_samples = 0;
    std::vector<Peak> peaks;
    std::vector<double> rhythm_bars_hz;
    std::vector<double> bins;
  };

  std::string label;
  std::string source;
  double sample_rate_hz = 0.0;
  double duration_s = 0.0;
  double voiced_fraction = 0.0;
  int n_bins = 10;
  std::map<std::string, DomainSummary> domains;  // keyed by domain_key
  std::map<std::string, std::optional<double>> correlations;  // keyed by pair
  std::vector<std::string> warnings;
  std::string config_text;

  /// Profile of one domain, or nullopt when that domain is absent.
  std::optional<RFormantProfile> profile(Domain d) const;
};

UtteranceReport make_report(const ClipAnalysis &clip, const AnalysisConfig &cfg,
                            const std::string &source);

std::string report_to_json(const UtteranceReport &report);
UtteranceReport report_from_json(const std::string &text);

/// "freq_hz,magnitude,residual" rows over the band.
std::string spectrum_csv(const LongTermSpectrum &normalized);

/// Header "label,domain,bin_0..bin_{n-1}" followed by one row per profile.
std::string bins_csv(const std::vector<RFormantProfile> &profiles, int n_bins);

/// Label header row and column.
std::string distance_matrix_csv(const DistanceMatrix &d);

/// Shortest round-trip decimal text for a double.
std::string format_number(double v);

}  // namespace rformant

#endif  // RFORMANT_REPORT_H_
