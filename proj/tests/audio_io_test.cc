// tests/audio_io_test.cc

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
#include "rformant/audio_io.h"
#include "rformant/error.h"
#include "test_util.h"

using namespace rformant;
using namespace rformant::testing;

TEST_CASE("zero file decodes to zeros") {
  auto dir = scratch_dir("audio_zero");
  std::vector<double> z(16000, 0.0);
  write_wav(dir / "z.wav", z, 16000, 1);
  SignalBuffer s = load_wav(dir / "z.wav");
  CHECK(s.samples.size() == 16000);
  CHECK(s.rate == 16000);
  CHECK(s.label == "z");
  CHECK(std::all_of(s.samples.begin(), s.samples.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("stereo is mixed by channel mean") {
  auto dir = scratch_dir("audio_stereo");
  std::vector<double> inter = {0.5, -0.5, 0.25, -0.25, 0.5, 0.0};
  write_wav(dir / "st.wav", inter, 8000, 2);
  SignalBuffer s = load_wav(dir / "st.wav");
  REQUIRE(s.samples.size() == 3);
  CHECK(s.samples[0] == 0.0);
  CHECK(s.samples[1] == 0.0);
  CHECK(s.samples[2] == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("trim keeps the first seconds") {
  auto dir = scratch_dir("audio_trim");
  std::vector<double> x(12 * 8000, 0.1);
  write_wav(dir / "long.wav", x, 8000, 1);
  SignalBuffer s = load_wav(dir / "long.wav", 5.0);
  CHECK(s.samples.size() == 40000);
  CHECK(s.duration() == doctest::Approx(5.0));
  SignalBuffer shortc = trim(make_buffer(std::vector<double>(100, 0.0), 100), 5.0);
  CHECK(shortc.samples.size() == 100);
}

TEST_CASE("encodings round trip") {
  auto dir = scratch_dir("audio_enc");
  std::vector<double> x = {0.0, 0.5, -0.5, 0.25, -1.0};
  for (auto [enc, tol] : {std::pair{WavEncoding::kPcm8, 1.0 / 100},
                          std::pair{WavEncoding::kPcm16, 1.0 / 30000},
                          std::pair{WavEncoding::kPcm24, 1e-6},
                          std::pair{WavEncoding::kFloat32, 1e-7}}) {
    write_wav(dir / "e.wav", x, 8000, 1, enc);
    SignalBuffer s = load_wav(dir / "e.wav");
    REQUIRE(s.samples.size() == x.size());
    for (size_t i = 0; i < x.size(); ++i) CHECK(std::abs(s.samples[i] - x[i]) <= tol);
  }
}

TEST_CASE("malformed input is rejected") {
  auto dir = scratch_dir("audio_bad");
  CHECK_THROWS_AS(load_wav(dir / "missing.wav"), Error);
  spit(dir / "junk.wav", "this is not a wav file at all, not even close");
  CHECK_THROWS_AS(load_wav(dir / "junk.wav"), Error);
  std::vector<double> x(1000, 0.1);
  write_wav(dir / "ok.wav", x, 8000, 1);
  std::string bytes = slurp(dir / "ok.wav");
  spit(dir / "cut.wav", bytes.substr(0, 30));
  CHECK_THROWS_AS(load_wav(dir / "cut.wav"), Error);
  std::vector<unsigned char> none;
  CHECK_THROWS_AS(decode_wav(none, "x"), Error);
}

TEST_CASE("resample") {
  SignalBuffer s = sine(3.0, 5.0, 16000);
  SignalBuffer same = resample(s, 16000);
  CHECK(same.samples == s.samples);

  SignalBuffer c = make_buffer(std::vector<double>(80000, 0.5), 16000);
  SignalBuffer r = resample(c, 200);
  CHECK(r.samples.size() == 1000);
  CHECK(r.rate == 200);
  for (double v : r.samples) CHECK(v == doctest::Approx(0.5));

  // Non-integer ratio takes the interpolation path.
  SignalBuffer c2 = make_buffer(std::vector<double>(44100, 0.5), 44100);
  SignalBuffer r2 = resample(c2, 200);
  CHECK(r2.samples.size() == 200);
  for (double v : r2.samples) CHECK(v == doctest::Approx(0.5));
  CHECK_THROWS_AS(resample(c, 0), Error);
}
