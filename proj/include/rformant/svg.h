// include/rformant/svg.h

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

#ifndef RFORMANT_SVG_H_
#define RFORMANT_SVG_H_

#include <map>
#include <string>
#include <vector>

#include "rformant/cluster.h"
#include "rformant/report.h"

namespace rformant {

/// Magnitude short-time spectrum, display only. frames[t][k] is in dB.
struct Spectrogram {
  std::vector<std::vector<double>> frames;
  double frame_rate = 0.0;  // frames per second
  double bin_hz = 0.0;
};

/// Hann-windowed STFT magnitude, 25 ms frames every 10 ms by default.
Spectrogram compute_spectrogram(const SignalBuffer &sig, double frame_ms = 25.0,
                                double hop_ms = 10.0);

/// Eight-panel figure for one clip: waveform, AMS, waveform with envelope,
/// AEMS, F0 track, FEMS, spectrogram and the AMS bin histogram. Spectra are
/// drawn as squared shifted residuals with rhythm bars.
std::string render_clip_figure(const ClipAnalysis &clip, const AnalysisConfig &cfg);

/// Dendrogram with each leaf's bin histogram drawn beside it.
std::string render_dendrogram(const Dendrogram &tree,
                              const std::map<std::string, std::vector<double>> &bins,
                              const std::string &title);

}  // namespace rformant

#endif  // RFORMANT_SVG_H_
