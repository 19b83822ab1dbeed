// src/config.cc

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

#include "rformant/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rformant/error.h"

namespace rformant {

namespace {

std::string strip(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string &key, const std::string &v) {
  double out = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw Error("config key '" + key + "': '" + v + "' is not a number");
  return out;
}

template <typename Int>
Int to_int(const std::string &key, const std::string &v) {
  Int out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw Error("config key '" + key + "': '" + v + "' is not an integer");
  return out;
}

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

EnvelopeOptions AnalysisConfig::envelope_options() const {
  return {envelope_window_ms, envelope_hop_ms};
}

AmdfOptions AnalysisConfig::amdf_options() const {
  AmdfOptions o;
  o.f0_min = f0_min_hz;
  o.f0_max = f0_max_hz;
  o.frame_ms = f0_frame_ms;
  o.hop_ms = f0_hop_ms;
  o.voicing_ratio = voicing_ratio;
  return o;
}

void AnalysisConfig::validate() const {
  auto positive = [](double v, const char *name) {
    if (!(v > 0.0)) throw Error(std::string(name) + " must be positive");
  };
  positive(trim_s, "trim_s");
  positive(resample_hz, "resample_hz");
  positive(envelope_window_ms, "envelope_window_ms");
  positive(envelope_hop_ms, "envelope_hop_ms");
  positive(f0_min_hz, "f0_min_hz");
  positive(f0_max_hz, "f0_max_hz");
  positive(f0_frame_ms, "f0_frame_ms");
  positive(f0_hop_ms, "f0_hop_ms");
  positive(voicing_ratio, "voicing_ratio");
  if (!(band_lo_hz >= 0.0) || !(band_lo_hz < band_hi_hz))
    throw Error("band must satisfy 0 <= band_lo_hz < band_hi_hz");
  if (band_hi_hz > resample_hz / 2.0)
    throw Error("band_hi_hz exceeds the Nyquist frequency of resample_hz");
  if (n_peaks < 0) throw Error("n_peaks must be nonnegative");
  if (n_bars < 0) throw Error("n_bars must be nonnegative");
  if (n_bins < 1) throw Error("n_bins must be >= 1");
  if (envelope_window_ms < envelope_hop_ms)
    throw Error("envelope_window_ms must be >= envelope_hop_ms");
  if (!(f0_min_hz < f0_max_hz)) throw Error("f0_min_hz must be < f0_max_hz");
  if (f0_frame_ms < 2000.0 / f0_min_hz - 1e-9)
    throw Error("f0_frame_ms must span two periods of f0_min_hz");
  if (mantel_permutations < 99) throw Error("mantel_permutations must be >= 99");
}

const std::vector<std::string> &config_keys() {
  static const std::vector<std::string> keys = {
      "trim_s",          "resample_hz",        "band_lo_hz",
      "band_hi_hz",      "n_peaks",            "n_bars",
      "n_bins",          "envelope_window_ms", "envelope_hop_ms",
      "f0_min_hz",       "f0_max_hz",          "f0_frame_ms",
      "f0_hop_ms",       "voicing_ratio",      "mantel_permutations",
      "seed",            "metric",             "f0_scale",
      "peak_selection",  "wagner_sd"};
  return keys;
}

void set_config_value(AnalysisConfig *cfg, const std::string &key,
                      const std::string &value) {
  const std::string &v = value;
  if (key == "trim_s") cfg->trim_s = to_double(key, v);
  else if (key == "resample_hz") cfg->resample_hz = to_double(key, v);
  else if (key == "band_lo_hz") cfg->band_lo_hz = to_double(key, v);
  else if (key == "band_hi_hz") cfg->band_hi_hz = to_double(key, v);
  else if (key == "n_peaks") cfg->n_peaks = to_int<int>(key, v);
  else if (key == "n_bars") cfg->n_bars = to_int<int>(key, v);
  else if (key == "n_bins") cfg->n_bins = to_int<int>(key, v);
  else if (key == "envelope_window_ms") cfg->envelope_window_ms = to_double(key, v);
  else if (key == "envelope_hop_ms") cfg->envelope_hop_ms = to_double(key, v);
  else if (key == "f0_min_hz") cfg->f0_min_hz = to_double(key, v);
  else if (key == "f0_max_hz") cfg->f0_max_hz = to_double(key, v);
  else if (key == "f0_frame_ms") cfg->f0_frame_ms = to_double(key, v);
  else if (key == "f0_hop_ms") cfg->f0_hop_ms = to_double(key, v);
  else if (key == "voicing_ratio") cfg->voicing_ratio = to_double(key, v);
  else if (key == "mantel_permutations") cfg->mantel_permutations = to_int<int>(key, v);
  else if (key == "seed") cfg->seed = to_int<uint64_t>(key, v);
  else if (key == "metric") cfg->metric = parse_metric(v);
  else if (key == "f0_scale") {
    if (v == "hz") cfg->f0_scale = F0Scale::kHz;
    else if (v == "log") cfg->f0_scale = F0Scale::kLogHz;
    else throw Error("f0_scale must be 'hz' or 'log'");
  } else if (key == "peak_selection") {
    if (v == "rank") cfg->peak_selection = PeakSelection::kRank;
    else if (v == "local_max") cfg->peak_selection = PeakSelection::kLocalMax;
    else throw Error("peak_selection must be 'rank' or 'local_max'");
  } else if (key == "wagner_sd") {
    if (v == "population") cfg->wagner_sd = SdKind::kPopulation;
    else if (v == "sample") cfg->wagner_sd = SdKind::kSample;
    else throw Error("wagner_sd must be 'population' or 'sample'");
  } else {
    throw Error("unknown config key '" + key + "'");
  }
}

void apply_config_text(AnalysisConfig *cfg, const std::string &text,
                       const std::string &origin) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = strip(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(origin + ":" + std::to_string(line_no) +
                  ": expected 'key = value'");
    std::string key = strip(t.substr(0, eq));
    std::string value = strip(t.substr(eq + 1));
    try {
      set_config_value(cfg, key, value);
    } catch (const Error &e) {
      throw Error(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(AnalysisConfig *cfg, const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path.string());
}

std::string to_config_text(const AnalysisConfig &c) {
  std::ostringstream out;
  out << "trim_s = " << num(c.trim_s) << "\n"
      << "resample_hz = " << num(c.resample_hz) << "\n"
      << "band_lo_hz = " << num(c.band_lo_hz) << "\n"
      << "band_hi_hz = " << num(c.band_hi_hz) << "\n"
      << "n_peaks = " << c.n_peaks << "\n"
      << "n_bars = " << c.n_bars << "\n"
      << "n_bins = " << c.n_bins << "\n"
      << "envelope_window_ms = " << num(c.envelope_window_ms) << "\n"
      << "envelope_hop_ms = " << num(c.envelope_hop_ms) << "\n"
      << "f0_min_hz = " << num(c.f0_min_hz) << "\n"
      << "f0_max_hz = " << num(c.f0_max_hz) << "\n"
      << "f0_frame_ms = " << num(c.f0_frame_ms) << "\n"
      << "f0_hop_ms = " << num(c.f0_hop_ms) << "\n"
      << "voicing_ratio = " << num(c.voicing_ratio) << "\n"
      << "mantel_permutations = " << c.mantel_permutations << "\n"
      << "seed = " << c.seed << "\n"
      << "metric = " << metric_name(c.metric) << "\n"
      << "f0_scale = " << (c.f0_scale == F0Scale::kHz ? "hz" : "log") << "\n"
      << "peak_selection = "
      << (c.peak_selection == PeakSelection::kRank ? "rank" : "local_max") << "\n"
      << "wagner_sd = "
      << (c.wagner_sd == SdKind::kPopulation ? "population" : "sample") << "\n";
  return out.str();
}

Band parse_band(const std::string &text) {
  size_t colon = text.find(':');
  if (colon == std::string::npos) throw Error("band must be LO:HI");
  Band b;
  b.lo = to_double("band", strip(text.substr(0, colon)));
  b.hi = to_double("band", strip(text.substr(colon + 1)));
  if (!(b.lo < b.hi)) throw Error("band must satisfy LO < HI");
  return b;
}

}  // namespace rformant
