// src/isochrony.cc

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

#include "rformant/isochrony.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rformant/error.h"

namespace rformant {

namespace {

constexpr double kOverlapTolerance = 1e-6;

void require_pvi_input(std::span<const double> d) {
  if (d.size() < 2) throw Error("PVI needs at least two durations");
}

void require_same_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("vector length mismatch");
}

std::string trim_ws(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string &s, double *out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), *out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string> split_row(const std::string &line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim_ws(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim_ws(cur));
  return fields;
}

}  // namespace

void validate(const AnnotationTier &tier) {
  for (size_t i = 0; i < tier.intervals.size(); ++i) {
    const Interval &iv = tier.intervals[i];
    if (!(iv.end > iv.start))
      throw Error("annotation interval " + std::to_string(i + 1) +
                  " has end <= start");
    if (i > 0) {
      const Interval &prev = tier.intervals[i - 1];
      if (iv.start < prev.start)
        throw Error("annotation intervals are not ascending at row " +
                    std::to_string(i + 1));
      if (iv.start < prev.end - kOverlapTolerance)
        throw Error("annotation intervals overlap at row " +
                    std::to_string(i + 1));
    }
  }
}

AnnotationTier parse_annotation_csv(const std::string &text,
                                    const std::string &tier_name) {
  AnnotationTier tier;
  tier.name = tier_name;
  std::istringstream in(text);
  std::string line;
  bool first_data_row = true;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    std::string t = trim_ws(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split_row(t);
    double start = 0.0, end = 0.0;
    bool numeric = fields.size() >= 2 && parse_double(fields[0], &start) &&
                   parse_double(fields[1], &end);
    if (!numeric) {
      if (first_data_row) {
        first_data_row = false;
        continue;  // header
      }
      throw Error("annotation line " + std::to_string(line_no) +
                  ": expected start_s,end_s,label");
    }
    first_data_row = false;
    Interval iv{start, end, fields.size() >= 3 ? fields[2] : std::string()};
    tier.intervals.push_back(std::move(iv));
  }
  validate(tier);
  return tier;
}

AnnotationTier load_annotation_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_annotation_csv(buf.str(), path.stem().string());
}

std::vector<double> durations(const AnnotationTier &tier) {
  std::vector<double> d;
  d.reserve(tier.intervals.size());
  for (const Interval &iv : tier.intervals) d.push_back(iv.duration());
  return d;
}

std::pair<std::vector<double>, std::vector<double>> shifted_subvectors(
    std::span<const double> d) {
  require_pvi_input(d);
  return {std::vector<double>(d.begin(), d.end() - 1),
          std::vector<double>(d.begin() + 1, d.end())};
}

double rpvi(std::span<const double> d) {
  require_pvi_input(d);
  double sum = 0.0;
  for (size_t k = 0; k + 1 < d.size(); ++k) sum += std::abs(d[k] - d[k + 1]);
  return 100.0 * sum / static_cast<double>(d.size() - 1);
}

double npvi(std::span<const double> d) {
  require_pvi_input(d);
  for (double x : d)
    if (!(x > 0.0)) throw Error("nPVI needs positive durations");
  double sum = 0.0;
  for (size_t k = 0; k + 1 < d.size(); ++k)
    sum += std::abs(d[k] - d[k + 1]) / ((d[k] + d[k + 1]) / 2.0);
  return 100.0 * sum / static_cast<double>(d.size() - 1);
}

double manhattan(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double canberra(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double denom = std::abs(a[i]) + std::abs(b[i]);
    if (!(denom > 0.0)) throw Error("canberra: both components are zero");
    sum += std::abs(a[i] - b[i]) / denom;
  }
  return sum;
}

RateSummary rates_from_annotation(const AnnotationTier &tier) {
  if (tier.intervals.empty()) throw Error("annotation tier is empty");
  RateSummary s;
  s.count = tier.intervals.size();
  for (const Interval &iv : tier.intervals) s.total_s += iv.duration();
  s.mean_s = s.total_s / static_cast<double>(s.count);
  s.rate_hz = static_cast<double>(s.count) / s.total_s;
  return s;
}

FormantRange predict_formant_range(double word_rate_hz, double syllable_rate_hz) {
  if (!(word_rate_hz > 0.0) || !(syllable_rate_hz > 0.0))
    throw Error("rates must be positive");
  FormantRange r;
  r.lo = std::min(word_rate_hz, syllable_rate_hz);
  r.hi = std::max(word_rate_hz, syllable_rate_hz);
  r.centre = 0.5 * (r.lo + r.hi);
  return r;
}

WagnerScatter wagner_pairs(std::span<const double> d, SdKind sd) {
  if (d.size() < 3) throw Error("Wagner scatter needs at least three durations");
  const double n = static_cast<double>(d.size());
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double var = ss / (sd == SdKind::kPopulation ? n : n - 1.0);
  const double s = std::sqrt(var);
  if (!(s > 0.0)) throw Error("Wagner scatter undefined for constant durations");

  std::vector<double> z(d.size());
  for (size_t i = 0; i < d.size(); ++i) z[i] = (d[i] - mean) / s;

  WagnerScatter w;
  for (size_t k = 0; k + 1 < z.size(); ++k) {
    w.pairs.emplace_back(z[k], z[k + 1]);
    int q = (z[k] >= 0.0 ? 2 : 0) + (z[k + 1] >= 0.0 ? 1 : 0);
    ++w.quadrants[static_cast<size_t>(q)];
  }
  return w;
}

}  // namespace rformant
