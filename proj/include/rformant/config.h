// include/rformant/config.h

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

#ifndef RFORMANT_CONFIG_H_
#define RFORMANT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rformant/demodulation.h"
#include "rformant/isochrony.h"
#include "rformant/lts.h"
#include "rformant/profile.h"
#include "rformant/stats.h"

namespace rformant {

/// Every tunable of the analysis pipeline. Text form is one `key = value`
/// per line with `#` comments; see apply_config_text for the keys.
struct AnalysisConfig {
  double trim_s = 5.0;
  double resample_hz = 200.0;
  double band_lo_hz = 1.0;
  double band_hi_hz = 10.0;
  int n_peaks = 6;
  int n_bars = 16;
  int n_bins = 10;
  double envelope_window_ms = 20.0;
  double envelope_hop_ms = 5.0;
  double f0_min_hz = 60.0;
  double f0_max_hz = 400.0;
  double f0_frame_ms = 40.0;
  double f0_hop_ms = 10.0;
  double voicing_ratio = 0.35;
  int mantel_permutations = 9999;
  uint64_t seed = 0;
  Metric metric = Metric::kManhattan;
  F0Scale f0_scale = F0Scale::kHz;
  PeakSelection peak_selection = PeakSelection::kRank;
  SdKind wagner_sd = SdKind::kPopulation;

  Band band() const { return {band_lo_hz, band_hi_hz}; }
  EnvelopeOptions envelope_options() const;
  AmdfOptions amdf_options() const;

  /// Throws Error when a field is out of range.
  void validate() const;
};

/// Sets one field from its text form. Unknown keys and malformed values throw.
void set_config_value(AnalysisConfig *cfg, const std::string &key,
                      const std::string &value);

/// Applies every `key = value` line of `text` in order. `origin` names the
/// source in error messages.
void apply_config_text(AnalysisConfig *cfg, const std::string &text,
                       const std::string &origin = "config");

void apply_config_file(AnalysisConfig *cfg, const std::filesystem::path &path);

/// Names of all keys accepted by set_config_value, in declaration order.
const std::vector<std::string> &config_keys();

/// Canonical `key = value` text for every key.
std::string to_config_text(const AnalysisConfig &cfg);

/// Parses "LO:HI".
Band parse_band(const std::string &text);

}  // namespace rformant

#endif  // RFORMANT_CONFIG_H_
