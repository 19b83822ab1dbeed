// src/audio_io.cc

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

#include "rformant/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "rformant/error.h"

namespace rformant {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t read_u16(const unsigned char *p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t read_u32(const unsigned char *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char> *out, uint16_t v) {
  out->push_back(static_cast<unsigned char>(v & 0xFF));
  out->push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char> *out, uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out->push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<unsigned char> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

struct WavFormat {
  uint16_t tag = 0;
  uint16_t channels = 0;
  uint32_t rate = 0;
  uint16_t bits = 0;
};

double decode_sample(const unsigned char *p, const WavFormat &fmt) {
  if (fmt.tag == kFormatFloat) {
    uint32_t raw = read_u32(p);
    float f;
    std::memcpy(&f, &raw, sizeof f);
    if (!std::isfinite(f)) return 0.0;
    return std::clamp(static_cast<double>(f), -1.0, 1.0);
  }
  switch (fmt.bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      int32_t v = static_cast<int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
  }
  return 0.0;
}

}  // namespace

SignalBuffer decode_wav(std::span<const unsigned char> bytes,
                        const std::string &label,
                        std::optional<double> trim_s) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error("not a RIFF/WAVE file: " + label);

  std::optional<WavFormat> fmt;
  const unsigned char *data = nullptr;
  size_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    uint32_t size = read_u32(chunk + 4);
    size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size())
        throw Error("truncated fmt chunk: " + label);
      WavFormat f;
      f.tag = read_u16(chunk + 8);
      f.channels = read_u16(chunk + 10);
      f.rate = read_u32(chunk + 12);
      f.bits = read_u16(chunk + 22);
      if (f.tag == kFormatExtensible) {
        if (size < 26) throw Error("truncated extensible fmt chunk: " + label);
        // The sub-format GUID starts with the plain format tag.
        f.tag = read_u16(chunk + 8 + 24);
      }
      fmt = f;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size())
        throw Error("truncated data chunk: " + label);
      data = chunk + 8;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }

  if (!fmt) throw Error("missing fmt chunk: " + label);
  if (data == nullptr) throw Error("missing data chunk: " + label);

  const bool supported =
      (fmt->tag == kFormatPcm &&
       (fmt->bits == 8 || fmt->bits == 16 || fmt->bits == 24)) ||
      (fmt->tag == kFormatFloat && fmt->bits == 32);
  if (!supported)
    throw Error("unsupported WAV encoding (format " +
                std::to_string(fmt->tag) + ", " + std::to_string(fmt->bits) +
                " bits): " + label);
  if (fmt->channels < 1 || fmt->channels > 2)
    throw Error("unsupported channel count " +
                std::to_string(fmt->channels) + ": " + label);
  if (fmt->rate == 0) throw Error("zero sample rate: " + label);

  const size_t bytes_per_sample = fmt->bits / 8;
  const size_t frame_bytes = bytes_per_sample * fmt->channels;
  size_t frames = data_size / frame_bytes;
  if (frames == 0) throw Error("zero-length audio: " + label);

  if (trim_s) {
    if (!(*trim_s > 0.0)) throw Error("trim must be positive");
    double wanted = std::round(*trim_s * fmt->rate);
    if (wanted < static_cast<double>(frames))
      frames = std::max<size_t>(1, static_cast<size_t>(wanted));
  }

  SignalBuffer sig;
  sig.rate = fmt->rate;
  sig.label = label;
  sig.samples.resize(frames);
  for (size_t i = 0; i < frames; ++i) {
    const unsigned char *frame = data + i * frame_bytes;
    double sum = 0.0;
    for (size_t c = 0; c < fmt->channels; ++c)
      sum += decode_sample(frame + c * bytes_per_sample, *fmt);
    sig.samples[i] = sum / fmt->channels;
  }
  return sig;
}

SignalBuffer load_wav(const std::filesystem::path &path,
                      std::optional<double> trim_s) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return decode_wav(bytes, path.stem().string(), trim_s);
}

void write_wav(const std::filesystem::path &path,
               std::span<const double> interleaved, int rate, int channels,
               WavEncoding encoding) {
  if (rate <= 0 || channels < 1 ||
      interleaved.size() % static_cast<size_t>(channels) != 0)
    throw Error("write_wav: invalid layout");

  int bits = 16;
  switch (encoding) {
    case WavEncoding::kPcm8: bits = 8; break;
    case WavEncoding::kPcm16: bits = 16; break;
    case WavEncoding::kPcm24: bits = 24; break;
    case WavEncoding::kFloat32: bits = 32; break;
  }
  const uint32_t bytes_per_sample = static_cast<uint32_t>(bits / 8);
  const uint32_t data_size =
      static_cast<uint32_t>(interleaved.size()) * bytes_per_sample;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  put_tag(&out, "RIFF");
  put_u32(&out, 36 + data_size + (data_size & 1u));
  put_tag(&out, "WAVE");
  put_tag(&out, "fmt ");
  put_u32(&out, 16);
  put_u16(&out, encoding == WavEncoding::kFloat32 ? kFormatFloat : kFormatPcm);
  put_u16(&out, static_cast<uint16_t>(channels));
  put_u32(&out, static_cast<uint32_t>(rate));
  put_u32(&out, static_cast<uint32_t>(rate) * channels * bytes_per_sample);
  put_u16(&out, static_cast<uint16_t>(channels * bytes_per_sample));
  put_u16(&out, static_cast<uint16_t>(bits));
  put_tag(&out, "data");
  put_u32(&out, data_size);

  for (double x : interleaved) {
    if (encoding == WavEncoding::kFloat32) {
      float f = static_cast<float>(x);
      uint32_t raw;
      std::memcpy(&raw, &f, sizeof raw);
      put_u32(&out, raw);
      continue;
    }
    const double scale = std::ldexp(1.0, bits - 1);
    double c = std::clamp(x, -1.0, 1.0);
    long v = std::lround(c * scale);
    v = std::clamp<long>(v, static_cast<long>(-scale),
                         static_cast<long>(scale) - 1);
    if (bits == 8) {
      out.push_back(static_cast<unsigned char>(v + 128));
    } else {
      for (int b = 0; b < bits / 8; ++b)
        out.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xFF));
    }
  }
  if (data_size & 1u) out.push_back(0);

  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f.write(reinterpret_cast<const char *>(out.data()),
          static_cast<std::streamsize>(out.size()));
}

SignalBuffer resample(const SignalBuffer &sig, double target_rate) {
  if (!(target_rate > 0.0)) throw Error("resample: target rate must be > 0");
  if (!(sig.rate > 0.0) || sig.samples.empty())
    throw Error("resample: empty or rateless signal");

  SignalBuffer out;
  out.rate = target_rate;
  out.label = sig.label;
  if (target_rate == sig.rate) {
    out.samples = sig.samples;
    return out;
  }

  const double ratio = sig.rate / target_rate;
  const double k_round = std::round(ratio);
  if (ratio > 1.0 && std::abs(ratio - k_round) < 1e-9) {
    const size_t k = static_cast<size_t>(k_round);
    const size_t n = sig.samples.size() / k;
    if (n == 0) throw Error("resample: signal shorter than one block");
    out.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (size_t j = 0; j < k; ++j) sum += sig.samples[i * k + j];
      out.samples[i] = sum / static_cast<double>(k);
    }
    return out;
  }

  const size_t n = std::max<size_t>(
      1, static_cast<size_t>(std::floor(sig.samples.size() / ratio + 1e-9)));
  const size_t last = sig.samples.size() - 1;
  out.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    double pos = i * ratio;
    size_t i0 = std::min(static_cast<size_t>(pos), last);
    size_t i1 = std::min(i0 + 1, last);
    double frac = pos - static_cast<double>(i0);
    out.samples[i] =
        sig.samples[i0] + frac * (sig.samples[i1] - sig.samples[i0]);
  }
  return out;
}

SignalBuffer trim(const SignalBuffer &sig, double seconds) {
  if (!(seconds > 0.0)) throw Error("trim must be positive");
  SignalBuffer out = sig;
  double wanted = std::round(seconds * sig.rate);
  if (wanted < static_cast<double>(out.samples.size()))
    out.samples.resize(std::max<size_t>(1, static_cast<size_t>(wanted)));
  return out;
}

}  // namespace rformant
