// Copyright 2026 The contrastive-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONTRASTIVE_REPORT_HPP_
#define CONTRASTIVE_REPORT_HPP_

#include <array>
#include <filesystem>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contrastive/corpus.hpp"
#include "contrastive/metrics.hpp"
#include "contrastive/partition.hpp"
#include "contrastive/scoring.hpp"

namespace contrastive {

inline constexpr std::string_view kReportSchema = "contrastive-eval/report/v1";
inline constexpr std::string_view kTiePolicy = "ties_count_incorrect";

struct RunConfig {
  IntentPunctuationMap punct_map;
  std::string punct_map_source = "builtin";
  bool include_singletons = true;
  Partition partition = Partition::kAll;  // partition printed in summaries
  unsigned jobs = 1;
  bool timestamp = false;
  CorpusFormat corpus_format = CorpusFormat::kJsonl;
  std::set<std::string, std::less<>> skip_sets;
  // Override or supply the system metadata normally read from the score
  // file header.
  std::optional<std::string> system_kind;
  std::optional<std::string> model_size;
  std::optional<std::string> punctuation_mode;
};

struct SystemInfo {
  std::string system_id;
  std::string kind;        // direct, cascade, mt_gold, mock, or ""
  std::string model_size;  // tiny .. large, or ""
  std::string punctuation_mode;
};

struct PartitionSection {
  std::size_t sets = 0;
  std::optional<Ratio> accuracy;
  std::optional<IntentPRF> prf;
  std::optional<ConfusionMatrix> confusion;
  std::optional<BaselineResult> pure_random;
  std::optional<BaselineResult> whq_biased;
};

struct EvaluationReport {
  SystemInfo system;
  std::string corpus_sha256;
  std::string scores_sha256;
  std::array<PartitionSection, 3> partitions;  // indexed by Partition
  // Configuration echo.
  IntentPunctuationMap punct_map;
  std::string punct_map_source;
  bool include_singletons = true;
  std::vector<std::string> skip_sets;
  std::optional<std::string> generated_at;

  const PartitionSection& operator[](Partition p) const {
    return partitions[static_cast<std::size_t>(p)];
  }
};

/// Aggregates outcomes of one system. Each partition section is filled when
/// the selection is non-empty.
EvaluationReport build_report(const SystemInfo& system,
                              const std::vector<SetOutcome>& outcomes,
                              const RunConfig& config,
                              std::string corpus_sha256,
                              std::string scores_sha256);

/// Re-derives the metric identities (micro recall, confusion trace, row
/// sums, partition-weighted accuracy, baseline recomputation) and throws on
/// any mismatch.
void cross_check(const EvaluationReport& report,
                 const std::vector<SetOutcome>& outcomes);

/// Pretty-printed JSON with a fixed key order and trailing newline.
std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(std::string_view json);

/// Human-readable summary for standard output.
std::string report_summary(const EvaluationReport& report, Partition focus);

struct SystemRun {
  EvaluationReport report;
  std::vector<SetOutcome> outcomes;
};

/// Ingests corpus and scores, evaluates every system in the score file
/// (sorted by system_id) and cross-checks each report.
std::vector<SystemRun> run_evaluate(const std::filesystem::path& corpus_path,
                                    const std::filesystem::path& scores_path,
                                    const RunConfig& config);

/// Writes <dir>/<system>.report.json and <dir>/<system>.outcomes.jsonl.
/// Returns the written paths.
std::vector<std::filesystem::path> write_run(const SystemRun& run,
                                             const std::filesystem::path& dir);

/// File-name-safe version of a system id.
std::string file_stem(std::string_view system_id);

struct BaselineRow {
  Partition partition;
  std::size_t sets;
  std::optional<Ratio> pure_random;
  std::optional<Ratio> whq_biased;
};

std::vector<BaselineRow> run_baselines(const std::filesystem::path& corpus_path,
                                       const RunConfig& config);
std::vector<BaselineRow> baseline_rows(const std::vector<ContrastiveSet>& sets,
                                       const RunConfig& config);

enum class Figure {
  kFigure2,   // overall accuracy per system and size, pure random baseline
  kFigure3,   // accuracy on ambiguous/unambiguous sets
  kTable2,    // figure 3 cells plus both baselines
  kFigure4,   // P/R/F1 of S, YN, WH on ambiguous/unambiguous sets
  kIntents,   // P/R/F1 of every intent on every partition
  kConfusion  // normalised confusion matrices
};

std::string_view label(Figure f);
std::optional<Figure> parse_figure(std::string_view s);

struct PlotRow {
  std::string system;
  std::string model_size;
  std::string partition;
  std::string metric;
  double value;
};

/// One tidy table per figure. Throws when the reports are empty or lack the
/// system metadata the figure needs.
std::vector<PlotRow> emit_plot_data(const std::vector<EvaluationReport>& reports,
                                    Figure figure);

/// Tab-separated with header "system\tmodel_size\tpartition\tmetric\tvalue".
std::string plot_rows_to_tsv(const std::vector<PlotRow>& rows);

/// Accuracy of every report per partition and its difference to the first
/// report, as TSV.
std::string compare_reports(const std::vector<EvaluationReport>& reports);

/// Shortest round-trip decimal representation.
std::string format_number(double v);

}  // namespace contrastive

#endif  // CONTRASTIVE_REPORT_HPP_
