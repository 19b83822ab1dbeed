// src/commands.cc

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

#include "rformant/commands.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rformant/audio_io.h"
#include "rformant/cluster.h"
#include "rformant/error.h"
#include "rformant/svg.h"

namespace rformant {

using Json = nlohmann::ordered_json;

namespace {

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

std::string read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void ensure_dir(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string());
}

void require_unique_labels(const std::vector<std::string> &labels) {
  std::set<std::string> seen;
  for (const auto &l : labels)
    if (!seen.insert(l).second) throw Error("duplicate utterance label '" + l + "'");
}

Json json_number_or_null(std::optional<double> v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

AnalyzeResult cmd_analyze(const std::vector<fs::path> &wavs, const AnalysisConfig &cfg,
                          const fs::path &out_dir, int jobs, std::ostream &log) {
  if (wavs.empty()) throw Error("analyze: no input files");
  cfg.validate();

  std::vector<SignalBuffer> signals;
  for (const auto &p : wavs) signals.push_back(load_wav(p, cfg.trim_s));
  {
    std::vector<std::string> labels;
    for (const auto &s : signals) labels.push_back(s.label);
    require_unique_labels(labels);
  }

  // Pure per-clip work; each slot is written by exactly one worker.
  std::vector<std::optional<ClipAnalysis>> clips(signals.size());
  std::vector<std::string> failures(signals.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < signals.size(); i = next++) {
      try {
        clips[i] = analyze_clip(signals[i], cfg);
      } catch (const std::exception &e) {
        failures[i] = e.what();
      }
    }
  };
  const size_t n_threads =
      std::clamp<size_t>(static_cast<size_t>(std::max(jobs, 1)), 1, signals.size());
  {
    std::vector<std::jthread> pool;
    for (size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (size_t i = 0; i < signals.size(); ++i)
    if (!failures[i].empty())
      throw Error("analysis of '" + signals[i].label + "' failed: " + failures[i]);

  std::vector<size_t> order(signals.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return signals[a].label < signals[b].label; });

  ensure_dir(out_dir);
  AnalyzeResult result;
  std::map<Domain, std::vector<RFormantProfile>> combined;
  for (size_t i : order) {
    const ClipAnalysis &clip = *clips[i];
    const std::string &label = clip.signal.label;
    UtteranceReport report = make_report(clip, cfg, wavs[i].filename().string());

    write_text(out_dir / (label + ".report.json"), report_to_json(report));
    std::vector<RFormantProfile> clip_profiles;
    for (const DomainAnalysis &d : clip.domains) {
      if (!d.present) continue;
      write_text(out_dir / (label + "." + std::string(domain_key(d.domain)) + ".csv"),
                 spectrum_csv(d.normalized));
      clip_profiles.push_back(d.profile);
      combined[d.domain].push_back(d.profile);
    }
    write_text(out_dir / (label + ".bins.csv"), bins_csv(clip_profiles, cfg.n_bins));
    write_text(out_dir / (label + ".svg"), render_clip_figure(clip, cfg));

    for (const auto &w : report.warnings) log << "warning: " << label << ": " << w << "\n";
    if (!report.warnings.empty()) result.exit_code = kExitPartial;
    log << "analyzed " << label << "\n";
    result.reports.push_back(std::move(report));
  }
  for (Domain d : kDomains)
    write_text(out_dir / ("bins_" + std::string(domain_key(d)) + ".csv"),
               bins_csv(combined[d], cfg.n_bins));
  return result;
}

std::vector<fs::path> collect_report_paths(const std::vector<fs::path> &inputs) {
  std::vector<fs::path> out;
  for (const auto &p : inputs) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto &e : fs::directory_iterator(p)) {
        const std::string name = e.path().filename().string();
        if (e.is_regular_file() && name.size() > 12 &&
            name.compare(name.size() - 12, 12, ".report.json") == 0)
          found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<UtteranceReport> load_reports(const std::vector<fs::path> &paths) {
  std::vector<UtteranceReport> reports;
  for (const auto &p : paths) {
    try {
      reports.push_back(report_from_json(read_text(p)));
    } catch (const Error &e) {
      throw Error(p.string() + ": " + e.what());
    }
  }
  std::vector<std::string> labels;
  for (const auto &r : reports) labels.push_back(r.label);
  require_unique_labels(labels);
  std::sort(reports.begin(), reports.end(),
            [](const auto &a, const auto &b) { return a.label < b.label; });
  return reports;
}

int cmd_compare(const std::vector<UtteranceReport> &reports, const AnalysisConfig &cfg,
                const fs::path &out_dir, std::ostream &log) {
  if (reports.size() < 3) throw Error("compare: need at least three reports");
  cfg.validate();
  int exit_code = kExitOk;
  ensure_dir(out_dir);

  std::ostringstream summary;
  summary << "pair,mean_r,min_utt,min_r,max_utt,max_r,n\n";
  for (const DomainPair &pair : kDomainPairs) {
    std::map<std::string, double> per_utt;
    for (const auto &r : reports) {
      auto it = r.correlations.find(pair.name());
      if (it != r.correlations.end() && it->second) per_utt[r.label] = *it->second;
    }
    if (per_utt.empty()) {
      summary << pair.name() << ",NA,NA,NA,NA,NA,0\n";
      log << "warning: no defined correlations for " << pair.name() << "\n";
      exit_code = kExitPartial;
      continue;
    }
    CorrelationSummary s = correlation_summary(per_utt, pair.name());
    summary << s.pair << ',' << format_number(s.mean_r) << ',' << s.min_label << ','
            << format_number(s.min_r) << ',' << s.max_label << ','
            << format_number(s.max_r) << ',' << s.count << '\n';
  }
  write_text(out_dir / "correlation_summary.csv", summary.str());

  std::ostringstream mantel_csv;
  mantel_csv << "pair,r,p,significance,permutations,n,metric\n";
  for (const DomainPair &pair : kDomainPairs) {
    std::vector<RFormantProfile> a, b;
    for (const auto &r : reports) {
      auto pa = r.profile(pair.first);
      auto pb = r.profile(pair.second);
      if (pa && pb) {
        a.push_back(*pa);
        b.push_back(*pb);
      }
    }
    if (a.size() < 3) {
      mantel_csv << pair.name() << ",NA,NA,NA," << cfg.mantel_permutations << ','
                 << a.size() << ',' << metric_name(cfg.metric) << '\n';
      log << "warning: fewer than three utterances with both " << pair.name()
          << " domains\n";
      exit_code = kExitPartial;
      continue;
    }
    try {
      MantelResult m = mantel(distance_matrix(a, cfg.metric),
                              distance_matrix(b, cfg.metric),
                              cfg.mantel_permutations, cfg.seed);
      mantel_csv << pair.name() << ',' << format_number(m.r) << ','
                 << format_number(m.p) << ',' << significance(m.p) << ','
                 << m.permutations << ',' << a.size() << ','
                 << metric_name(cfg.metric) << '\n';
    } catch (const Error &e) {
      mantel_csv << pair.name() << ",NA,NA,NA," << cfg.mantel_permutations << ','
                 << a.size() << ',' << metric_name(cfg.metric) << '\n';
      log << "warning: " << pair.name() << ": " << e.what() << "\n";
      exit_code = kExitPartial;
    }
  }
  write_text(out_dir / "mantel.csv", mantel_csv.str());
  log << "wrote " << (out_dir / "correlation_summary.csv").string() << " and "
      << (out_dir / "mantel.csv").string() << "\n";
  return exit_code;
}

int cmd_cluster(const std::vector<UtteranceReport> &reports, const AnalysisConfig &cfg,
                Domain domain, const fs::path &out_dir, std::ostream &log) {
  int exit_code = kExitOk;
  {
    std::vector<std::string> labels;
    for (const auto &r : reports) labels.push_back(r.label);
    require_unique_labels(labels);
  }
  std::vector<RFormantProfile> profiles;
  for (const auto &r : reports) {
    auto p = r.profile(domain);
    if (!p) {
      log << "warning: " << r.label << " has no " << domain_name(domain)
          << " profile; excluded\n";
      exit_code = kExitPartial;
      continue;
    }
    profiles.push_back(std::move(*p));
  }
  if (profiles.size() < 2)
    throw Error("cluster: need at least two reports with the chosen domain");

  ensure_dir(out_dir);
  const DistanceMatrix d = distance_matrix(profiles, cfg.metric);
  const Dendrogram tree = upgma(d);
  const std::string stem = "dendrogram_" + std::string(domain_key(domain));
  write_text(out_dir / ("distance_" + std::string(domain_key(domain)) + ".csv"),
             distance_matrix_csv(d));
  write_text(out_dir / (stem + ".nwk"), to_newick(tree) + "\n");

  std::map<std::string, std::vector<double>> bins;
  for (const auto &p : profiles) bins[p.label] = p.bins;
  write_text(out_dir / (stem + ".svg"),
             render_dendrogram(tree, bins,
                               std::string(domain_name(domain)) + " bins, " +
                                   std::string(metric_name(cfg.metric)) +
                                   " distance, UPGMA"));
  log << to_newick(tree) << "\n";
  return exit_code;
}

int cmd_pvi(const fs::path &annotation, DurationUnit unit, const AnalysisConfig &cfg,
            const fs::path &out_dir, std::ostream &log) {
  const AnnotationTier tier = load_annotation_csv(annotation);
  if (tier.intervals.size() < 2)
    throw Error("pvi: need at least two annotated intervals");
  std::vector<double> d = durations(tier);
  const double scale = unit == DurationUnit::kMilliseconds ? 1000.0 : 1.0;
  for (double &x : d) x *= scale;

  const RateSummary rates = rates_from_annotation(tier);
  const double r = rpvi(d);
  const double n = npvi(d);

  int exit_code = kExitOk;
  std::optional<WagnerScatter> wagner;
  try {
    wagner = wagner_pairs(d, cfg.wagner_sd);
  } catch (const Error &e) {
    log << "warning: Wagner scatter skipped: " << e.what() << "\n";
    exit_code = kExitPartial;
  }

  ensure_dir(out_dir);
  Json j;
  j["tier"] = tier.name;
  j["unit"] = unit == DurationUnit::kMilliseconds ? "ms" : "s";
  j["count"] = rates.count;
  j["total_s"] = rates.total_s;
  j["mean_s"] = rates.mean_s;
  j["rate_hz"] = rates.rate_hz;
  j["rpvi"] = r;
  j["npvi"] = n;
  if (wagner) {
    j["wagner_quadrants"] = {{"--", wagner->quadrants[0]},
                             {"-+", wagner->quadrants[1]},
                             {"+-", wagner->quadrants[2]},
                             {"++", wagner->quadrants[3]}};
    j["wagner_sd"] = cfg.wagner_sd == SdKind::kPopulation ? "population" : "sample";
    std::ostringstream csv;
    csv << "z_first,z_second\n";
    for (const auto &[a, b] : wagner->pairs)
      csv << format_number(a) << ',' << format_number(b) << '\n';
    write_text(out_dir / (tier.name + ".wagner.csv"), csv.str());
  } else {
    j["wagner_quadrants"] = nullptr;
  }
  write_text(out_dir / (tier.name + ".pvi.json"), j.dump(2) + "\n");

  log << "intervals " << rates.count << "\n"
      << "total_s " << format_number(rates.total_s) << "\n"
      << "mean_s " << format_number(rates.mean_s) << "\n"
      << "rate_hz " << format_number(rates.rate_hz) << "\n"
      << "rPVI " << format_number(r) << "\n"
      << "nPVI " << format_number(n) << "\n";
  if (wagner)
    log << "wagner (--,-+,+-,++) " << wagner->quadrants[0] << ','
        << wagner->quadrants[1] << ',' << wagner->quadrants[2] << ','
        << wagner->quadrants[3] << "\n";
  return exit_code;
}

CalibrationResult calibrate(const ClipAnalysis &clip, const AnnotationTier &words,
                            const AnnotationTier &syllables, const AnalysisConfig &cfg) {
  CalibrationResult c;
  c.words = rates_from_annotation(words);
  c.syllables = rates_from_annotation(syllables);
  if (words.intervals.size() >= 2) c.word_npvi = npvi(durations(words));
  if (syllables.intervals.size() >= 2) c.syllable_npvi = npvi(durations(syllables));
  c.predicted = predict_formant_range(c.words.rate_hz, c.syllables.rate_hz);

  const DomainAnalysis &ams = clip.domain(Domain::kAms);
  c.peaks = ams.profile.peaks;
  if (c.peaks.empty()) throw Error("calibrate: no AMS peaks (n_peaks is 0)");
  const double bin_width = (cfg.band_hi_hz - cfg.band_lo_hz) / cfg.n_bins;
  c.measured = dominant_cluster(c.peaks, bin_width);
  c.abs_error_hz = std::abs(c.predicted.centre - c.measured.centre());
  return c;
}

int cmd_calibrate(const fs::path &wav, const fs::path &words, const fs::path &syllables,
                  const AnalysisConfig &cfg, const fs::path &out_dir, std::ostream &log) {
  cfg.validate();
  const SignalBuffer sig = load_wav(wav, cfg.trim_s);
  const AnnotationTier word_tier = load_annotation_csv(words);
  const AnnotationTier syllable_tier = load_annotation_csv(syllables);
  const ClipAnalysis clip = analyze_clip(sig, cfg);
  const CalibrationResult c = calibrate(clip, word_tier, syllable_tier, cfg);

  auto rate_json = [](const RateSummary &r, std::optional<double> n) {
    return Json{{"count", r.count},     {"total_s", r.total_s},
                {"mean_s", r.mean_s},   {"rate_hz", r.rate_hz},
                {"npvi", json_number_or_null(n)}};
  };
  Json j;
  j["label"] = sig.label;
  j["words"] = rate_json(c.words, c.word_npvi);
  j["syllables"] = rate_json(c.syllables, c.syllable_npvi);
  j["predicted"] = {{"lo_hz", c.predicted.lo},
                    {"hi_hz", c.predicted.hi},
                    {"centre_hz", c.predicted.centre}};
  Json peaks = Json::array();
  for (const Peak &p : c.peaks) peaks.push_back({{"freq_hz", p.freq}, {"weight", p.weight}});
  std::vector<double> members;
  for (const Peak &p : c.measured.members) members.push_back(p.freq);
  j["measured"] = {{"lo_hz", c.measured.lo},
                   {"hi_hz", c.measured.hi},
                   {"centre_hz", c.measured.centre()},
                   {"cluster_hz", members},
                   {"peaks", peaks}};
  j["abs_error_hz"] = c.abs_error_hz;

  ensure_dir(out_dir);
  write_text(out_dir / (sig.label + ".calibration.json"), j.dump(2) + "\n");
  log << "word rate " << format_number(c.words.rate_hz) << " Hz, syllable rate "
      << format_number(c.syllables.rate_hz) << " Hz\n"
      << "predicted " << format_number(c.predicted.lo) << ".."
      << format_number(c.predicted.hi) << " Hz, centre "
      << format_number(c.predicted.centre) << " Hz\n"
      << "measured cluster " << format_number(c.measured.lo) << ".."
      << format_number(c.measured.hi) << " Hz, centre "
      << format_number(c.measured.centre()) << " Hz\n"
      << "abs error " << format_number(c.abs_error_hz) << " Hz\n";
  return clip.warnings.empty() ? kExitOk : kExitPartial;
}

int run_cli(int argc, char **argv) {
  CLI::App app{"Rhythm formant analysis of speech recordings"};
  app.require_subcommand(1);

  std::optional<std::string> config_path, band, metric, domain_opt;
  std::optional<double> trim;
  std::optional<int> peaks, bins, permutations;
  std::optional<uint64_t> seed;
  std::string out_dir = "rformant_out";
  int jobs = 1;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--trim", trim, "seconds kept from the start of each clip");
    sub->add_option("--band", band, "analysis band LO:HI in Hz");
    sub->add_option("--peaks", peaks, "number of top frequencies per spectrum");
    sub->add_option("--bins", bins, "number of histogram bins");
    sub->add_option("--metric", metric, "manhattan or hamming");
    sub->add_option("--permutations", permutations, "Mantel permutations");
    sub->add_option("--seed", seed, "Mantel permutation seed");
    sub->add_option("--jobs", jobs, "clips analysed concurrently");
    sub->add_option("--domain", domain_opt, "ams, aems or fems");
  };

  std::vector<std::string> inputs;
  auto *analyze = app.add_subcommand("analyze", "analyse WAV clips");
  common(analyze);
  analyze->add_option("wavs", inputs, "WAV files")->required();

  auto *compare = app.add_subcommand("compare", "domain correlation tables");
  common(compare);
  compare->add_option("reports", inputs, "report JSON files or directories")->required();

  auto *cluster = app.add_subcommand("cluster", "UPGMA dendrogram of profiles");
  common(cluster);
  cluster->add_option("reports", inputs, "report JSON files or directories")->required();

  std::string annotation, unit = "s";
  auto *pvi = app.add_subcommand("pvi", "isochrony metrics of an annotation tier");
  common(pvi);
  pvi->add_option("annotation", annotation, "start_s,end_s,label CSV")->required();
  pvi->add_option("--unit", unit, "duration unit for PVI: s or ms")
      ->check(CLI::IsMember({"s", "ms"}));

  std::string wav, words, syllables;
  auto *calib = app.add_subcommand("calibrate", "annotation-based prediction check");
  common(calib);
  calib->add_option("wav", wav, "WAV file")->required();
  calib->add_option("--words", words, "word tier CSV")->required();
  calib->add_option("--syllables", syllables, "syllable tier CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    AnalysisConfig cfg;
    if (!config_path) {
      if (const char *env = std::getenv("RFORMANT_CONFIG"); env && *env)
        config_path = env;
    }
    if (config_path) apply_config_file(&cfg, *config_path);
    if (trim) cfg.trim_s = *trim;
    if (band) {
      Band b = parse_band(*band);
      cfg.band_lo_hz = b.lo;
      cfg.band_hi_hz = b.hi;
    }
    if (peaks) cfg.n_peaks = *peaks;
    if (bins) cfg.n_bins = *bins;
    if (metric) cfg.metric = parse_metric(*metric);
    if (permutations) cfg.mantel_permutations = *permutations;
    if (seed) cfg.seed = *seed;
    cfg.validate();

    std::vector<fs::path> paths(inputs.begin(), inputs.end());
    if (analyze->parsed())
      return cmd_analyze(paths, cfg, out_dir, jobs, std::cerr).exit_code;
    if (compare->parsed())
      return cmd_compare(load_reports(collect_report_paths(paths)), cfg, out_dir,
                         std::cerr);
    if (cluster->parsed())
      return cmd_cluster(load_reports(collect_report_paths(paths)), cfg,
                         domain_opt ? parse_domain(*domain_opt) : Domain::kAms,
                         out_dir, std::cerr);
    if (pvi->parsed())
      return cmd_pvi(annotation,
                     unit == "ms" ? DurationUnit::kMilliseconds : DurationUnit::kSeconds,
                     cfg, out_dir, std::cout);
    if (calib->parsed())
      return cmd_calibrate(wav, words, syllables, cfg, out_dir, std::cout);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace rformant
