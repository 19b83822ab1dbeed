// src/report.cc

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

#include "rformant/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "rformant/error.h"

namespace rformant {

using Json = nlohmann::ordered_json;

std::string DomainPair::name() const {
  return std::string(domain_name(first)) + ":" + std::string(domain_name(second));
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

DomainAnalysis analyze_series(std::span<const double> series, double rate,
                              Domain domain, const std::string &label,
                              const AnalysisConfig &cfg) {
  DomainAnalysis out;
  out.domain = domain;
  out.series_rate = rate;
  out.spectrum = long_term_spectrum(series, rate, domain, label);
  out.normalized = normalize_log_detrend(out.spectrum, cfg.band());
  out.profile = profile(out.normalized, cfg.n_peaks, cfg.n_bins, cfg.peak_selection);
  const int bars = std::min<int>(cfg.n_bars,
                                 static_cast<int>(out.normalized.freqs.size()));
  out.rhythm_bars = rhythm_bars(out.normalized, bars, cfg.peak_selection);
  out.present = true;
  return out;
}

bool has_variance(const std::vector<double> &v) {
  return std::any_of(v.begin(), v.end(), [&](double x) { return x != v.front(); });
}

}  // namespace

ClipAnalysis analyze_clip(const SignalBuffer &sig, const AnalysisConfig &cfg) {
  cfg.validate();
  if (sig.samples.empty()) throw Error("empty signal: " + sig.label);

  ClipAnalysis clip;
  clip.signal = sig;
  if (sig.duration() < kRecommendedLtsSeconds)
    clip.warnings.push_back("clip shorter than 3 s; spectral resolution is coarse");

  const SignalBuffer rectified = rectify(sig);
  clip.am_series = resample(rectified, cfg.resample_hz);
  clip.domains[0] = analyze_series(clip.am_series.samples, clip.am_series.rate,
                                   Domain::kAms, sig.label, cfg);

  clip.envelope = envelope_peak_pick(rectified, cfg.envelope_options());
  clip.domains[1] = analyze_series(clip.envelope.values, clip.envelope.rate,
                                   Domain::kAems, sig.label, cfg);

  clip.f0_raw = amdf_f0(sig, cfg.amdf_options());
  DomainAnalysis &fems = clip.domains[2];
  fems.domain = Domain::kFems;
  if (voiced_fraction(clip.f0_raw) > 0.0) {
    clip.f0_continuous = continuize_f0(clip.f0_raw, cfg.f0_scale);
    fems = analyze_series(clip.f0_continuous->values, clip.f0_continuous->rate,
                          Domain::kFems, sig.label, cfg);
  } else {
    fems.present = false;
    fems.series_rate = clip.f0_raw.rate;
    fems.absent_reason = "all frames unvoiced";
    clip.warnings.push_back("FEMS absent: all frames unvoiced");
  }
  return clip;
}

std::optional<RFormantProfile> UtteranceReport::profile(Domain d) const {
  auto it = domains.find(std::string(domain_key(d)));
  if (it == domains.end() || !it->second.present) return std::nullopt;
  RFormantProfile p;
  p.label = label;
  p.domain = d;
  p.peaks = it->second.peaks;
  p.bins = it->second.bins;
  p.band = it->second.band;
  p.n_bins = static_cast<int>(it->second.bins.size());
  return p;
}

UtteranceReport make_report(const ClipAnalysis &clip, const AnalysisConfig &cfg,
                            const std::string &source) {
  UtteranceReport r;
  r.label = clip.signal.label;
  r.source = source;
  r.sample_rate_hz = clip.signal.rate;
  r.duration_s = clip.signal.duration();
  r.voiced_fraction = voiced_fraction(clip.f0_raw);
  r.n_bins = cfg.n_bins;
  r.warnings = clip.warnings;
  r.config_text = to_config_text(cfg);

  for (const DomainAnalysis &d : clip.domains) {
    UtteranceReport::DomainSummary s;
    s.present = d.present;
    s.absent_reason = d.absent_reason;
    s.series_rate_hz = d.series_rate;
    s.band = cfg.band();
    if (d.present) {
      s.delta_f_hz = d.normalized.delta_f;
      s.band_samples = d.normalized.freqs.size();
      s.peaks = d.profile.peaks;
      s.rhythm_bars_hz = d.rhythm_bars;
      s.bins = d.profile.bins;
    }
    r.domains[std::string(domain_key(d.domain))] = s;
  }

  for (const DomainPair &pair : kDomainPairs) {
    const DomainAnalysis &a = clip.domain(pair.first);
    const DomainAnalysis &b = clip.domain(pair.second);
    std::optional<double> value;
    if (a.present && b.present && has_variance(a.profile.bins) &&
        has_variance(b.profile.bins)) {
      value = pearson_r(a.profile.bins, b.profile.bins);
    } else {
      r.warnings.push_back(pair.name() + " correlation undefined");
    }
    r.correlations[pair.name()] = value;
  }
  return r;
}

std::string report_to_json(const UtteranceReport &r) {
  Json j;
  j["schema"] = kReportSchema;
  j["label"] = r.label;
  j["source"] = r.source;
  j["sample_rate_hz"] = r.sample_rate_hz;
  j["duration_s"] = r.duration_s;
  j["voiced_fraction"] = r.voiced_fraction;
  j["n_bins"] = r.n_bins;
  Json domains = Json::object();
  for (Domain d : kDomains) {
    auto it = r.domains.find(std::string(domain_key(d)));
    if (it == r.domains.end()) continue;
    const auto &s = it->second;
    Json dj;
    dj["present"] = s.present;
    if (!s.present) {
      dj["reason"] = s.absent_reason;
    } else {
      dj["series_rate_hz"] = s.series_rate_hz;
      dj["delta_f_hz"] = s.delta_f_hz;
      dj["band_hz"] = {s.band.lo, s.band.hi};
      dj["band_samples"] = s.band_samples;
      Json peaks = Json::array();
      for (const Peak &p : s.peaks)
        peaks.push_back({{"freq_hz", p.freq}, {"weight", p.weight}});
      dj["peaks"] = peaks;
      dj["rhythm_bars_hz"] = s.rhythm_bars_hz;
      dj["bins"] = s.bins;
    }
    domains[std::string(domain_key(d))] = dj;
  }
  j["domains"] = domains;
  Json corr = Json::object();
  for (const DomainPair &pair : kDomainPairs) {
    auto it = r.correlations.find(pair.name());
    if (it == r.correlations.end()) continue;
    corr[pair.name()] = it->second ? Json(*it->second) : Json(nullptr);
  }
  j["correlations"] = corr;
  j["warnings"] = r.warnings;
  j["config"] = r.config_text;
  return j.dump(2) + "\n";
}

UtteranceReport report_from_json(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception &e) {
    throw Error(std::string("report JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<int>() != kReportSchema)
      throw Error("report JSON: unsupported schema");
    UtteranceReport r;
    r.label = j.at("label").get<std::string>();
    r.source = j.value("source", "");
    r.sample_rate_hz = j.at("sample_rate_hz").get<double>();
    r.duration_s = j.at("duration_s").get<double>();
    r.voiced_fraction = j.value("voiced_fraction", 0.0);
    r.n_bins = j.at("n_bins").get<int>();
    for (const auto &[key, dj] : j.at("domains").items()) {
      parse_domain(key);
      UtteranceReport::DomainSummary s;
      s.present = dj.at("present").get<bool>();
      if (!s.present) {
        s.absent_reason = dj.value("reason", "");
      } else {
        s.series_rate_hz = dj.at("series_rate_hz").get<double>();
        s.delta_f_hz = dj.at("delta_f_hz").get<double>();
        auto band = dj.at("band_hz").get<std::vector<double>>();
        if (band.size() != 2) throw Error("report JSON: band_hz needs two values");
        s.band = {band[0], band[1]};
        s.band_samples = dj.at("band_samples").get<size_t>();
        for (const auto &p : dj.at("peaks"))
          s.peaks.push_back({p.at("freq_hz").get<double>(), p.at("weight").get<double>()});
        s.rhythm_bars_hz = dj.at("rhythm_bars_hz").get<std::vector<double>>();
        s.bins = dj.at("bins").get<std::vector<double>>();
        if (static_cast<int>(s.bins.size()) != r.n_bins)
          throw Error("report JSON: bin count does not match n_bins");
      }
      r.domains[key] = s;
    }
    for (const auto &[pair, v] : j.at("correlations").items())
      r.correlations[pair] =
          v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
    r.warnings = j.value("warnings", std::vector<std::string>{});
    r.config_text = j.value("config", "");
    return r;
  } catch (const Json::exception &e) {
    throw Error(std::string("report JSON: ") + e.what());
  }
}

std::string spectrum_csv(const LongTermSpectrum &s) {
  std::ostringstream out;
  out << "freq_hz,magnitude,residual\n";
  for (size_t k = 0; k < s.freqs.size(); ++k) {
    out << format_number(s.freqs[k]) << ',' << format_number(s.magnitude[k]) << ',';
    if (s.has_residual()) out << format_number(s.residual[k]);
    out << '\n';
  }
  return out.str();
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string bins_csv(const std::vector<RFormantProfile> &profiles, int n_bins) {
  std::ostringstream out;
  out << "label,domain";
  for (int i = 0; i < n_bins; ++i) out << ",bin_" << i;
  out << '\n';
  for (const auto &p : profiles) {
    if (static_cast<int>(p.bins.size()) != n_bins)
      throw Error("bins_csv: profile " + p.label + " has a different bin count");
    out << csv_field(p.label) << ',' << domain_name(p.domain);
    for (double b : p.bins) out << ',' << format_number(b);
    out << '\n';
  }
  return out.str();
}

std::string distance_matrix_csv(const DistanceMatrix &d) {
  std::ostringstream out;
  out << "label";
  for (const auto &l : d.labels()) out << ',' << csv_field(l);
  out << '\n';
  for (size_t i = 0; i < d.size(); ++i) {
    out << csv_field(d.labels()[i]);
    for (size_t j = 0; j < d.size(); ++j) out << ',' << format_number(d(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace rformant
