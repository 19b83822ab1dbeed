// src/demodulation.cc

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

#include "rformant/demodulation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rformant/error.h"

namespace rformant {

namespace {

// Valleys within this fraction of the mean AMDF above the global minimum
// count as ties; the shortest such lag wins.
constexpr double kAmdfTieMargin = 0.05;

size_t frame_count(size_t n_samples, double rate, double hop_ms) {
  double duration_ms = 1000.0 * static_cast<double>(n_samples) / rate;
  return static_cast<size_t>(std::floor(duration_ms / hop_ms + 1e-9));
}

}  // namespace

SignalBuffer rectify(const SignalBuffer &sig) {
  SignalBuffer out = sig;
  for (double &s : out.samples) s = std::abs(s);
  return out;
}

Track envelope_peak_pick(const SignalBuffer &rectified,
                         const EnvelopeOptions &opts) {
  if (!(opts.hop_ms > 0.0) || opts.window_ms < opts.hop_ms)
    throw Error("envelope: need window_ms >= hop_ms > 0");
  if (!(rectified.rate > 0.0)) throw Error("envelope: invalid rate");
  const auto &x = rectified.samples;
  const long half =
      std::lround(0.5 * opts.window_ms * rectified.rate / 1000.0);
  const long window = 2 * half + 1;
  if (static_cast<long>(x.size()) < window)
    throw Error("envelope: signal shorter than one window");

  Track env;
  env.kind = TrackKind::kEnvelope;
  env.rate = 1000.0 / opts.hop_ms;
  const size_t n = frame_count(x.size(), rectified.rate, opts.hop_ms);
  env.values.resize(n);
  const long last = static_cast<long>(x.size()) - 1;
  for (size_t j = 0; j < n; ++j) {
    long centre = std::lround(static_cast<double>(j) * opts.hop_ms *
                              rectified.rate / 1000.0);
    long lo = std::max(0L, centre - half);
    long hi = std::min(last, centre + half);
    env.values[j] = *std::max_element(x.begin() + lo, x.begin() + hi + 1);
  }
  return env;
}

Track amdf_f0(const SignalBuffer &sig, const AmdfOptions &opts) {
  if (!(opts.f0_min > 0.0) || !(opts.f0_min < opts.f0_max))
    throw Error("amdf: need 0 < f0_min < f0_max");
  if (!(opts.hop_ms > 0.0)) throw Error("amdf: hop_ms must be positive");
  if (opts.frame_ms < 2000.0 / opts.f0_min - 1e-9)
    throw Error("amdf: frame_ms must span two periods of f0_min");
  if (!(opts.voicing_ratio > 0.0)) throw Error("amdf: voicing_ratio must be positive");
  if (!(sig.rate > 0.0)) throw Error("amdf: invalid rate");

  const auto &x = sig.samples;
  const long frame_len = std::lround(opts.frame_ms * sig.rate / 1000.0);
  const long min_lag =
      std::max(1L, static_cast<long>(std::ceil(sig.rate / opts.f0_max - 1e-9)));
  const long max_lag =
      static_cast<long>(std::floor(sig.rate / opts.f0_min + 1e-9));
  if (max_lag + 1 >= frame_len || min_lag > max_lag)
    throw Error("amdf: lag range does not fit in the frame");
  if (static_cast<long>(x.size()) < frame_len)
    throw Error("amdf: signal shorter than one frame");

  Track f0;
  f0.kind = TrackKind::kF0Raw;
  f0.rate = 1000.0 / opts.hop_ms;
  const size_t n = frame_count(x.size(), sig.rate, opts.hop_ms);
  f0.values.assign(n, 0.0);

  // One extra lag on each side so that a valley at the edge of the search
  // range can be told apart from a monotone slope running off it.
  const long lo_lag = min_lag - 1;
  const long hi_lag = max_lag + 1;
  std::vector<double> amdf(static_cast<size_t>(hi_lag - lo_lag + 1));
  const long max_start = static_cast<long>(x.size()) - frame_len;

  for (size_t j = 0; j < n; ++j) {
    long centre =
        std::lround(static_cast<double>(j) * opts.hop_ms * sig.rate / 1000.0);
    long start = std::clamp(centre - frame_len / 2, 0L, max_start);
    const double *frame = x.data() + start;

    double energy = 0.0;
    for (long i = 0; i < frame_len; ++i) energy += frame[i] * frame[i];
    if (std::sqrt(energy / frame_len) <= opts.rms_floor) continue;

    for (long lag = lo_lag; lag <= hi_lag; ++lag) {
      double sum = 0.0;
      const long count = frame_len - lag;
      for (long i = 0; i < count; ++i) sum += std::abs(frame[i] - frame[i + lag]);
      amdf[lag - lo_lag] = sum / static_cast<double>(count);
    }

    // Mean over the search range only; candidates are interior valleys.
    const double mean =
        std::accumulate(amdf.begin() + 1, amdf.end() - 1, 0.0) / (amdf.size() - 2);
    if (!(mean > 0.0)) continue;
    std::vector<size_t> valleys;
    for (size_t k = 1; k + 1 < amdf.size(); ++k)
      if (amdf[k] < amdf[k - 1] && amdf[k] <= amdf[k + 1]) valleys.push_back(k);
    if (valleys.empty()) continue;
    double global_min = amdf[valleys[0]];
    for (size_t k : valleys) global_min = std::min(global_min, amdf[k]);
    if (global_min / mean >= opts.voicing_ratio) continue;

    const double limit = global_min + kAmdfTieMargin * mean;
    size_t best = 0;
    for (size_t k : valleys)
      if (amdf[k] <= limit) {
        best = k;
        break;
      }
    f0.values[j] = sig.rate / static_cast<double>(lo_lag + static_cast<long>(best));
  }
  return f0;
}

Track continuize_f0(const Track &f0, F0Scale scale) {
  if (f0.kind != TrackKind::kF0Raw)
    throw Error("continuize_f0: expected a raw F0 track");
  const auto &v = f0.values;
  std::vector<size_t> voiced;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] > 0.0) voiced.push_back(i);
  if (voiced.empty()) throw Error("continuize_f0: all frames unvoiced");

  auto value_at = [&](size_t i) {
    return scale == F0Scale::kLogHz ? std::log(v[i]) : v[i];
  };

  Track out;
  out.kind = TrackKind::kF0Continuous;
  out.rate = f0.rate;
  out.values.resize(v.size());
  for (size_t i = 0; i <= voiced.front(); ++i) out.values[i] = value_at(voiced.front());
  for (size_t i = voiced.back(); i < v.size(); ++i)
    out.values[i] = value_at(voiced.back());
  for (size_t k = 0; k + 1 < voiced.size(); ++k) {
    size_t a = voiced[k], b = voiced[k + 1];
    double va = value_at(a), vb = value_at(b);
    for (size_t i = a; i <= b; ++i) {
      double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      out.values[i] = va + t * (vb - va);
    }
  }

  const double mean =
      std::accumulate(out.values.begin(), out.values.end(), 0.0) /
      static_cast<double>(out.values.size());
  for (double &x : out.values) x -= mean;
  return out;
}

double voiced_fraction(const Track &f0) {
  if (f0.values.empty()) return 0.0;
  auto voiced = std::count_if(f0.values.begin(), f0.values.end(),
                              [](double x) { return x > 0.0; });
  return static_cast<double>(voiced) / static_cast<double>(f0.values.size());
}

}  // namespace rformant
