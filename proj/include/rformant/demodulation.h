// include/rformant/demodulation.h

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

#ifndef RFORMANT_DEMODULATION_H_
#define RFORMANT_DEMODULATION_H_

#include <vector>

#include "rformant/audio_io.h"

namespace rformant {

enum class TrackKind { kEnvelope, kF0Raw, kF0Continuous };

/// A derived, uniformly sampled series: an amplitude envelope or an F0
/// contour in Hz (0.0 marks unvoiced frames in a raw contour).
struct Track {
  std::vector<double> values;
  double rate = 0.0;  // values per second
  TrackKind kind = TrackKind::kEnvelope;

  double duration() const {
    return rate > 0.0 ? static_cast<double>(values.size()) / rate : 0.0;
  }
};

struct EnvelopeOptions {
  double window_ms = 20.0;
  double hop_ms = 5.0;
};

struct AmdfOptions {
  double f0_min = 60.0;
  double f0_max = 400.0;
  double frame_ms = 40.0;
  double hop_ms = 10.0;
  double voicing_ratio = 0.35;
  // Frames quieter than this RMS are unvoiced regardless of AMDF shape.
  double rms_floor = 1e-4;
};

enum class F0Scale { kHz, kLogHz };

/// Absolute value of every sample.
SignalBuffer rectify(const SignalBuffer &sig);

/// Moving-window maximum of a rectified signal. Value j is the maximum over
/// the window centred at j * hop_ms, clipped to the signal bounds. The
/// track has floor(duration / hop) values at rate 1000 / hop_ms.
Track envelope_peak_pick(const SignalBuffer &rectified,
                         const EnvelopeOptions &opts = {});

/// Average Magnitude Difference Function pitch tracker.
///
/// For each frame the AMDF is evaluated over lags rate/f0_max .. rate/f0_min.
/// The frame is voiced when min/mean of the AMDF falls below voicing_ratio
/// and the frame RMS exceeds rms_floor; voiced frames report rate / lag at
/// the deepest valley, preferring the shortest lag among valleys whose depth
/// is within a small margin of the global minimum (multiples of the period
/// are otherwise equally deep on strictly periodic input). Unvoiced frames
/// are 0.0. Frames are centred on multiples of hop_ms and shifted inward at
/// the signal edges so every frame has full length.
Track amdf_f0(const SignalBuffer &sig, const AmdfOptions &opts = {});

/// Fills unvoiced gaps of a raw F0 track: interior gaps are linearly
/// interpolated, leading and trailing gaps hold the nearest voiced value.
/// The result is mean-subtracted. With kLogHz the voiced values are taken as
/// natural logs before interpolation.
Track continuize_f0(const Track &f0, F0Scale scale = F0Scale::kHz);

/// Fraction of nonzero frames in a raw F0 track.
double voiced_fraction(const Track &f0);

}  // namespace rformant

#endif  // RFORMANT_DEMODULATION_H_
