// include/rformant/lts.h

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

#ifndef RFORMANT_LTS_H_
#define RFORMANT_LTS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rformant/audio_io.h"
#include "rformant/demodulation.h"

namespace rformant {

/// Modulation domain a spectrum was computed from.
enum class Domain { kAms, kAems, kFems };

std::string_view domain_name(Domain d);        // "AMS", "AEMS", "FEMS"
std::string_view domain_key(Domain d);         // "ams", "aems", "fems"
Domain parse_domain(std::string_view name);    // either spelling

/// Closed frequency interval in Hz.
struct Band {
  double lo = 1.0;
  double hi = 10.0;
};

struct LongTermSpectrum {
  Domain domain = Domain::kAms;
  std::string label;
  std::vector<double> freqs;       // ascending, spacing delta_f
  std::vector<double> magnitude;   // linear |X_k|
  std::vector<double> residual;    // detrended log10 magnitude, or empty
  std::optional<Band> band;        // set once restricted and detrended
  double delta_f = 0.0;
  double duration = 0.0;           // seconds of the analysed series

  bool has_residual() const { return !residual.empty(); }
};

/// Shortest series accepted, and the length below which the spectrum is
/// considered too coarse for rhythm work (callers may warn).
inline constexpr double kMinLtsSeconds = 1.0;
inline constexpr double kRecommendedLtsSeconds = 3.0;

/// Floor added before taking log10 of magnitudes.
inline constexpr double kLogFloor = 1e-12;

/// One full-length real FFT of the mean-removed series, no window, no
/// segmentation. Frequencies run from 0 to rate/2 in steps of 1/duration.
LongTermSpectrum long_term_spectrum(std::span<const double> series, double rate,
                                    Domain domain, std::string label = {});
LongTermSpectrum long_term_spectrum(const SignalBuffer &sig, Domain domain);
LongTermSpectrum long_term_spectrum(const Track &track, Domain domain,
                                    std::string label = {});

/// Restricts the spectrum to `band`, takes L = log10(magnitude + kLogFloor)
/// and replaces it by the residual of a least-squares line over the band.
LongTermSpectrum normalize_log_detrend(const LongTermSpectrum &spec, Band band);

/// Least-squares line fit y ~ slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// y minus its least-squares line over x.
std::vector<double> detrend_linear(std::span<const double> x,
                                   std::span<const double> y);

/// (residual - min residual)^2; for plotting only.
std::vector<double> square_for_display(const LongTermSpectrum &spec);

}  // namespace rformant

#endif  // RFORMANT_LTS_H_
