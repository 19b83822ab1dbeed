// tests/lts_test.cc

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

#include "doctest.h"
#include "rformant/error.h"
#include "rformant/fft.h"
#include "rformant/lts.h"
#include "rformant/profile.h"
#include "test_util.h"

using namespace rformant;
using namespace rformant::testing;

TEST_CASE("FFT magnitudes agree with a direct DFT") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (size_t n : {16u, 17u, 200u, 999u}) {
    std::vector<double> x(n);
    for (double &v : x) v = g(rng);
    auto fast = real_fft_magnitude(x);
    auto slow = naive_dft_magnitude(x);
    REQUIRE(fast.size() == slow.size());
    for (size_t k = 0; k < fast.size(); ++k)
      CHECK(fast[k] == doctest::Approx(slow[k]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("spectrum resolution and DC removal") {
  std::vector<double> x(1000, 0.0);
  auto s = long_term_spectrum(x, 200, Domain::kAms);
  CHECK(s.delta_f == doctest::Approx(0.2));
  CHECK(s.duration == doctest::Approx(5.0));
  CHECK(s.freqs.size() == 501);
  CHECK(s.freqs[20] == doctest::Approx(4.0));

  std::vector<double> c(1000, 0.7);
  for (double m : long_term_spectrum(c, 200, Domain::kAms).magnitude)
    CHECK(m == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(long_term_spectrum(std::vector<double>(100, 0.1), 200, Domain::kAms),
                  Error);
}

TEST_CASE("single tone spectrum") {
  std::vector<double> x;
  for (double t : time_axis(10.0, 200)) x.push_back(std::sin(2 * kPi * 3.0 * t));
  auto s = long_term_spectrum(x, 200, Domain::kFems);
  size_t k = std::max_element(s.magnitude.begin(), s.magnitude.end()) - s.magnitude.begin();
  CHECK(std::abs(s.freqs[k] - 3.0) <= 0.1);

  // The same peak from the oracle DFT on the mean-removed series.
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double &v : x) v -= mean;
  auto slow = naive_dft_magnitude(x);
  size_t k2 = std::max_element(slow.begin(), slow.end()) - slow.begin();
  CHECK(k == k2);
  CHECK(s.magnitude[k] == doctest::Approx(slow[k2]).epsilon(1e-9));
}

namespace {

LongTermSpectrum spectrum_from(std::vector<double> freqs, std::vector<double> mag) {
  LongTermSpectrum s;
  s.freqs = std::move(freqs);
  s.magnitude = std::move(mag);
  s.delta_f = s.freqs.size() > 1 ? s.freqs[1] - s.freqs[0] : 1.0;
  s.duration = 1.0 / s.delta_f;
  return s;
}

}  // namespace

TEST_CASE("log detrend") {
  std::vector<double> f, m;
  for (int k = 0; k <= 60; ++k) {
    f.push_back(k * 0.2);
    m.push_back(std::pow(10.0, 2 * k * 0.2 + 1));
  }
  auto n = normalize_log_detrend(spectrum_from(f, m), Band{1, 10});
  CHECK(n.freqs.front() == doctest::Approx(1.0));
  CHECK(n.freqs.back() == doctest::Approx(10.0));
  CHECK(n.freqs.size() == 46);
  REQUIRE(n.band);
  for (double r : n.residual) CHECK(std::abs(r) < 1e-9);

  // 1/f decay with a bump at 4 Hz.
  std::vector<double> m2;
  for (double x : f) m2.push_back((1.0 / std::max(x, 0.2)) * (1 + 4 * std::exp(-std::pow((x - 4.0) / 0.3, 2))));
  auto b = normalize_log_detrend(spectrum_from(f, m2), Band{1, 10});
  size_t k = std::max_element(b.residual.begin(), b.residual.end()) - b.residual.begin();
  CHECK(std::abs(b.freqs[k] - 4.0) <= 0.2);
  double mean = 0;
  for (double r : b.residual) mean += r;
  CHECK(std::abs(mean / static_cast<double>(b.residual.size())) < 1e-9);

  CHECK_THROWS_AS(normalize_log_detrend(spectrum_from(f, m2), Band{10, 1}), Error);
  CHECK_THROWS_AS(normalize_log_detrend(spectrum_from(f, m2), Band{5.0, 5.2}), Error);
}

TEST_CASE("residual properties on random spectra") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1e-3, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> f, m;
    for (int k = 0; k <= 60; ++k) {
      f.push_back(k * 0.2);
      m.push_back(u(rng));
    }
    auto n = normalize_log_detrend(spectrum_from(f, m), Band{1, 10});
    double mean = 0;
    for (double r : n.residual) mean += r;
    CHECK(std::abs(mean / static_cast<double>(n.residual.size())) < 1e-9);

    // Detrending the residual again leaves it unchanged.
    auto again = detrend_linear(n.freqs, n.residual);
    for (size_t i = 0; i < again.size(); ++i)
      CHECK(again[i] == doctest::Approx(n.residual[i]).epsilon(1e-9).scale(1.0));

    // A gain on the magnitudes is a constant offset in log space.
    std::vector<double> m3 = m;
    for (double &v : m3) v *= 37.0;
    auto g = normalize_log_detrend(spectrum_from(f, m3), Band{1, 10});
    for (size_t i = 0; i < g.residual.size(); ++i)
      CHECK(g.residual[i] == doctest::Approx(n.residual[i]).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("display squaring") {
  LongTermSpectrum s = spectrum_from({1, 2, 3}, {1, 1, 1});
  s.residual = {0, 0, 0};
  s.band = Band{1, 3};
  for (double v : square_for_display(s)) CHECK(v == 0.0);
  s.residual = {0, 1, 2};
  CHECK(square_for_display(s) == std::vector<double>{0, 1, 4});
  s.residual = {-1, 0.5, 2, 1};
  s.freqs = {1, 2, 3, 4};
  auto d = square_for_display(s);
  CHECK(std::max_element(d.begin(), d.end()) - d.begin() == 2);
}

TEST_CASE("line fit") {
  std::vector<double> x = {0, 1, 2, 3}, y = {1, 3, 5, 7};
  LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2));
  CHECK(f.intercept == doctest::Approx(1));
  std::vector<double> flat = {1, 1, 1};
  CHECK_THROWS_AS(fit_line(flat, flat), Error);
}
