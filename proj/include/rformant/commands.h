// include/rformant/commands.h

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

#ifndef RFORMANT_COMMANDS_H_
#define RFORMANT_COMMANDS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rformant/config.h"
#include "rformant/isochrony.h"
#include "rformant/profile.h"
#include "rformant/report.h"

namespace rformant {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitError = 2;

namespace fs = std::filesystem;

struct AnalyzeResult {
  int exit_code = kExitOk;
  std::vector<UtteranceReport> reports;  // sorted by label
};

/// Full pipeline over every clip; writes per-clip JSON, CSV and SVG files and
/// the combined bins_<domain>.csv tables into `out_dir`. Clips are analysed
/// on up to `jobs` threads; output order is by label.
AnalyzeResult cmd_analyze(const std::vector<fs::path> &wavs, const AnalysisConfig &cfg,
                          const fs::path &out_dir, int jobs, std::ostream &log);

/// Expands directories into their *.report.json files, sorted.
std::vector<fs::path> collect_report_paths(const std::vector<fs::path> &inputs);

std::vector<UtteranceReport> load_reports(const std::vector<fs::path> &paths);

/// Per-pair Pearson summary (correlation_summary.csv) and Mantel tests over
/// the domain distance matrices (mantel.csv).
int cmd_compare(const std::vector<UtteranceReport> &reports, const AnalysisConfig &cfg,
                const fs::path &out_dir, std::ostream &log);

/// Distance matrix CSV, Newick and SVG dendrogram for one domain.
int cmd_cluster(const std::vector<UtteranceReport> &reports, const AnalysisConfig &cfg,
                Domain domain, const fs::path &out_dir, std::ostream &log);

enum class DurationUnit { kSeconds, kMilliseconds };

/// PVI metrics, rates and Wagner scatter of one annotation tier.
int cmd_pvi(const fs::path &annotation, DurationUnit unit, const AnalysisConfig &cfg,
            const fs::path &out_dir, std::ostream &log);

/// Annotation-based R-formant prediction against the measured AMS peaks.
struct CalibrationResult {
  RateSummary words;
  RateSummary syllables;
  std::optional<double> word_npvi;
  std::optional<double> syllable_npvi;
  FormantRange predicted;
  PeakCluster measured;
  std::vector<Peak> peaks;
  double abs_error_hz = 0.0;
};

CalibrationResult calibrate(const ClipAnalysis &clip, const AnnotationTier &words,
                            const AnnotationTier &syllables, const AnalysisConfig &cfg);

int cmd_calibrate(const fs::path &wav, const fs::path &words, const fs::path &syllables,
                  const AnalysisConfig &cfg, const fs::path &out_dir, std::ostream &log);

/// Entry point of the `rformant` executable.
int run_cli(int argc, char **argv);

}  // namespace rformant

#endif  // RFORMANT_COMMANDS_H_
