// tests/test_util.h

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

#ifndef RFORMANT_TESTS_TEST_UTIL_H_
#define RFORMANT_TESTS_TEST_UTIL_H_

// Synthetic signals and independent reference implementations used by the
// unit and acceptance tests. Nothing here calls into the library's DSP code.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rformant/audio_io.h"

namespace rformant::testing {

namespace fs = std::filesystem;
inline constexpr double kPi = std::numbers::pi;

inline std::vector<double> time_axis(double seconds, double rate) {
  std::vector<double> t(static_cast<size_t>(std::llround(seconds * rate)));
  for (size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) / rate;
  return t;
}

inline SignalBuffer make_buffer(std::vector<double> x, double rate,
                                std::string label = "synthetic") {
  SignalBuffer s;
  s.samples = std::move(x);
  s.rate = rate;
  s.label = std::move(label);
  return s;
}

inline SignalBuffer sine(double f, double seconds, double rate, double amp = 0.5) {
  std::vector<double> x;
  for (double t : time_axis(seconds, rate)) x.push_back(amp * std::sin(2 * kPi * f * t));
  return make_buffer(std::move(x), rate, "sine");
}

inline SignalBuffer sawtooth(double f, double seconds, double rate, double amp = 0.5) {
  // Phase from the integer sample index so that every period is identical
  // when the rate is a multiple of f.
  std::vector<double> x(static_cast<size_t>(std::llround(seconds * rate)));
  for (size_t i = 0; i < x.size(); ++i) {
    double ph = std::fmod(static_cast<double>(i) * f, rate) / rate;
    x[i] = amp * (2.0 * ph - 1.0);
  }
  return make_buffer(std::move(x), rate, "sawtooth");
}

// 100% sinusoidal AM: amp * 0.5 * (1 + cos 2 pi fm t) * sin 2 pi fc t.
inline SignalBuffer am_tone(double fc, double fm, double seconds, double rate,
                            double amp = 0.9) {
  std::vector<double> x;
  for (double t : time_axis(seconds, rate))
    x.push_back(amp * 0.5 * (1.0 + std::cos(2 * kPi * fm * t)) *
                std::sin(2 * kPi * fc * t));
  return make_buffer(std::move(x), rate, "am");
}

// Gated sin^2 bursts filling the first half of each period, on a carrier.
inline SignalBuffer pulse_train(double rate_hz, double seconds, double fs,
                                double carrier = 440.0, double amp = 0.8) {
  std::vector<double> x;
  for (double t : time_axis(seconds, fs)) {
    double ph = rate_hz * t - std::floor(rate_hz * t);
    double g = ph < 0.5 ? std::pow(std::sin(2 * kPi * ph), 2) : 0.0;
    x.push_back(amp * g * std::sin(2 * kPi * carrier * t));
  }
  return make_buffer(std::move(x), fs, "pulses");
}

// Writes `sig` as 16-bit PCM and returns the path.
inline fs::path write_pcm16(const fs::path &dir, const std::string &stem,
                            const SignalBuffer &sig) {
  fs::create_directories(dir);
  fs::path p = dir / (stem + ".wav");
  write_wav(p, sig.samples, static_cast<int>(std::lround(sig.rate)), 1,
            WavEncoding::kPcm16);
  return p;
}

inline fs::path scratch_dir(const std::string &name) {
  fs::path p = fs::temp_directory_path() / ("rformant_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

inline std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const fs::path &p, const std::string &text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// O(N^2) DFT magnitude of the first N/2+1 bins.
inline std::vector<double> naive_dft_magnitude(std::span<const double> x) {
  const size_t n = x.size();
  std::vector<double> mag(n / 2 + 1);
  for (size_t k = 0; k < mag.size(); ++k) {
    long double re = 0, im = 0;
    for (size_t j = 0; j < n; ++j) {
      // Reduce the phase index first to keep the argument small.
      long double a = 2.0L * std::numbers::pi_v<long double> *
                      static_cast<long double>((k * j) % n) / n;
      re += x[j] * std::cos(a);
      im -= x[j] * std::sin(a);
    }
    mag[k] = static_cast<double>(std::sqrt(re * re + im * im));
  }
  return mag;
}

// Normalized autocorrelation pitch for each hop-spaced frame; 0 when the
// best normalized peak is below 0.5 or the frame is silent.
inline std::vector<double> autocorr_f0(const SignalBuffer &sig, double frame_ms,
                                       double hop_ms, double fmin, double fmax) {
  const size_t len = static_cast<size_t>(std::lround(frame_ms * sig.rate / 1000));
  const double hop = hop_ms * sig.rate / 1000;
  const size_t n_frames =
      static_cast<size_t>(std::floor(sig.duration() * 1000 / hop_ms + 1e-9));
  const size_t lag_lo = static_cast<size_t>(std::floor(sig.rate / fmax));
  const size_t lag_hi = static_cast<size_t>(std::ceil(sig.rate / fmin));
  std::vector<double> f0(n_frames, 0.0);
  const auto &x = sig.samples;
  for (size_t j = 0; j < n_frames; ++j) {
    double centre = j * hop;
    long start = std::lround(centre - len / 2.0);
    start = std::clamp<long>(start, 0, static_cast<long>(x.size()) - len);
    const double *f = x.data() + start;
    double e0 = 0;
    for (size_t i = 0; i < len; ++i) e0 += f[i] * f[i];
    if (e0 < 1e-10) continue;
    std::vector<double> r(lag_hi + 2, 0.0);
    for (size_t lag = lag_lo; lag <= lag_hi + 1 && lag < len; ++lag) {
      double s = 0, e1 = 0, e2 = 0;
      for (size_t i = 0; i + lag < len; ++i) {
        s += f[i] * f[i + lag];
        e1 += f[i] * f[i];
        e2 += f[i + lag] * f[i + lag];
      }
      r[lag] = s / std::sqrt(e1 * e2 + 1e-30);
    }
    double best = -1;
    size_t best_lag = 0;
    for (size_t lag = lag_lo; lag <= lag_hi && lag < len; ++lag)
      if (r[lag] > best) {
        best = r[lag];
        best_lag = lag;
      }
    // Prefer the shortest lag whose peak is nearly as strong (octave guard).
    for (size_t lag = lag_lo + 1; lag < best_lag; ++lag)
      if (r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1] && r[lag] > 0.95 * best) {
        best_lag = lag;
        break;
      }
    if (best < 0.5 || best_lag == 0) continue;
    // Parabolic refinement.
    double a = r[best_lag - 1], b = r[best_lag], c = r[best_lag + 1];
    double denom = a - 2 * b + c;
    double shift = denom != 0 ? 0.5 * (a - c) / denom : 0.0;
    f0[j] = sig.rate / (best_lag + shift);
  }
  return f0;
}

// Brute-force average linkage: cluster distance is recomputed from the leaf
// sets every step; ties go to the first (i, j) in row-major order.
struct BruteMerge {
  std::vector<size_t> a, b;  // sorted leaf indices
  double distance;
};

inline std::vector<BruteMerge> brute_upgma(const std::vector<std::vector<double>> &d) {
  std::vector<std::vector<size_t>> clusters;
  for (size_t i = 0; i < d.size(); ++i) clusters.push_back({i});
  std::vector<BruteMerge> out;
  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    size_t bi = 0, bj = 1;
    for (size_t i = 0; i < clusters.size(); ++i)
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        double s = 0;
        for (size_t p : clusters[i])
          for (size_t q : clusters[j]) s += d[p][q];
        s /= static_cast<double>(clusters[i].size() * clusters[j].size());
        if (s < best - 1e-12) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    BruteMerge m{clusters[bi], clusters[bj], best};
    std::vector<size_t> merged = clusters[bi];
    merged.insert(merged.end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(merged.begin(), merged.end());
    clusters[bi] = merged;
    clusters.erase(clusters.begin() + static_cast<long>(bj));
    out.push_back(std::move(m));
  }
  return out;
}

// Leaf names of a Newick string in textual order.
inline std::vector<std::string> newick_leaves(const std::string &s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '(' || c == ',') {
      ++i;
      if (i < s.size() && s[i] != '(') {
        std::string name;
        if (s[i] == '\'') {
          ++i;
          while (i < s.size()) {
            if (s[i] == '\'' && i + 1 < s.size() && s[i + 1] == '\'') {
              name += '\'';
              i += 2;
            } else if (s[i] == '\'') {
              ++i;
              break;
            } else {
              name += s[i++];
            }
          }
        } else {
          while (i < s.size() && s[i] != ':' && s[i] != ',' && s[i] != ')') name += s[i++];
        }
        out.push_back(name);
      }
    } else {
      ++i;
    }
  }
  return out;
}

inline std::vector<std::vector<double>> random_distance_matrix(size_t m,
                                                              std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) d[i][j] = d[j][i] = u(rng);
  return d;
}

inline std::vector<double> flatten(const std::vector<std::vector<double>> &d) {
  std::vector<double> v;
  for (const auto &row : d) v.insert(v.end(), row.begin(), row.end());
  return v;
}

inline std::vector<std::string> letters(size_t m) {
  std::vector<std::string> v;
  for (size_t i = 0; i < m; ++i) v.push_back(std::string(1, static_cast<char>('A' + i)));
  return v;
}

}  // namespace rformant::testing

#endif  // RFORMANT_TESTS_TEST_UTIL_H_
