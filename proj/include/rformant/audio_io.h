// include/rformant/audio_io.h

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

#ifndef RFORMANT_AUDIO_IO_H_
#define RFORMANT_AUDIO_IO_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rformant {

/// Uniformly sampled audio with amplitudes in [-1, 1].
struct SignalBuffer {
  std::vector<double> samples;
  double rate = 0.0;  // Hz
  std::string label;

  double duration() const {
    return rate > 0.0 ? static_cast<double>(samples.size()) / rate : 0.0;
  }
};

/// Sample encodings accepted by load_wav and produced by write_wav.
enum class WavEncoding { kPcm8, kPcm16, kPcm24, kFloat32 };

/// Reads a RIFF/WAVE file. Multi-channel frames are mixed down by the mean
/// of their channels and integer PCM is scaled by 1/2^(bits-1). When
/// `trim_s` is given the buffer holds at most that many seconds from the
/// start of the file. The label is the file stem.
SignalBuffer load_wav(const std::filesystem::path &path,
                      std::optional<double> trim_s = std::nullopt);

/// Decodes WAV bytes already in memory; `label` becomes the buffer label.
SignalBuffer decode_wav(std::span<const unsigned char> bytes,
                        const std::string &label,
                        std::optional<double> trim_s = std::nullopt);

/// Writes interleaved frames. `channels` must divide `interleaved.size()`.
/// Values outside [-1, 1] are clipped for integer encodings.
void write_wav(const std::filesystem::path &path,
               std::span<const double> interleaved, int rate, int channels,
               WavEncoding encoding = WavEncoding::kPcm16);

/// Changes the sampling rate. Downsampling by an integer factor k averages
/// each k-sample block; any other ratio uses linear interpolation.
SignalBuffer resample(const SignalBuffer &sig, double target_rate);

/// Keeps at most `seconds` from the start of the buffer.
SignalBuffer trim(const SignalBuffer &sig, double seconds);

}  // namespace rformant

#endif  // RFORMANT_AUDIO_IO_H_
