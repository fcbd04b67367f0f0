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

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "contrastive/error.hpp"
#include "contrastive/report.hpp"
#include "support/fixtures.hpp"

namespace contrastive {
namespace {

using testing::MockPolicy;

struct Fixture {
  std::filesystem::path dir;
  std::filesystem::path corpus;
  std::vector<ContrastiveSet> sets;
};

Fixture make_fixture(const std::string& name, std::uint64_t seed = 5,
                     std::size_t transcriptions = 60) {
  Fixture f;
  f.dir = testing::temp_dir(name);
  f.corpus = f.dir / "corpus.jsonl";
  const Corpus c = testing::synthetic_corpus(seed, transcriptions);
  testing::write_text(f.corpus, testing::serialize(c));
  f.sets = build_contrastive_sets(c);
  return f;
}

std::filesystem::path write_scores(const Fixture& f, MockPolicy policy,
                                   const std::string& system,
                                   const std::string& kind = "mock",
                                   const std::string& size = "") {
  const auto path = f.dir / (system + ".scores.jsonl");
  testing::write_text(path, testing::mock_score_file(f.sets, policy, system, kind, size));
  return path;
}

TEST(RunEvaluate, OracleAndAdversarial) {
  const Fixture f = make_fixture("oracle");
  RunConfig config;
  auto runs = run_evaluate(f.corpus, write_scores(f, MockPolicy::kOracle, "oracle"), config);
  ASSERT_EQ(runs.size(), 1u);
  const EvaluationReport& r = runs[0].report;
  EXPECT_EQ(r[Partition::kAll].accuracy->percent_1dp(), "100.0");
  EXPECT_EQ(r[Partition::kAll].sets, f.sets.size());
  EXPECT_EQ(r.system.kind, "mock");
  EXPECT_EQ(r.corpus_sha256, content_sha256(testing::read_text(f.corpus)));

  runs = run_evaluate(f.corpus, write_scores(f, MockPolicy::kAdversarial, "adv"), config);
  const auto& outcomes = runs[0].outcomes;
  EXPECT_EQ(accuracy(outcomes, {Partition::kAll, false}).num, 0);

  config.include_singletons = false;
  runs = run_evaluate(f.corpus, f.dir / "adv.scores.jsonl", config);
  EXPECT_EQ(runs[0].report[Partition::kAll].accuracy->percent_1dp(), "0.0");
  EXPECT_FALSE(runs[0].report.include_singletons);
}

TEST(RunEvaluate, SeveralSystemsInOneFile) {
  const Fixture f = make_fixture("multi");
  const std::string both =
      testing::mock_score_file(f.sets, MockPolicy::kSeededRandom, "b-sys", "direct", "tiny") +
      testing::mock_score_file(f.sets, MockPolicy::kOracle, "a-sys", "cascade", "base");
  testing::write_text(f.dir / "both.jsonl", both);
  const auto runs = run_evaluate(f.corpus, f.dir / "both.jsonl", RunConfig{});
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].report.system.system_id, "a-sys");
  EXPECT_EQ(runs[0].report.system.kind, "cascade");
  EXPECT_EQ(runs[1].report.system.model_size, "tiny");
}

TEST(RunEvaluate, ErrorsCarryModule) {
  const Fixture f = make_fixture("errors");
  try {
    run_evaluate(f.corpus, f.dir / "missing.jsonl", RunConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), "report");
  }
  auto text = testing::mock_score_file(f.sets, MockPolicy::kOracle, "s");
  text.erase(text.rfind('{'));  // drop the last record
  testing::write_text(f.dir / "short.jsonl", text);
  try {
    run_evaluate(f.corpus, f.dir / "short.jsonl", RunConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), "scoring");
    EXPECT_NE(std::string(e.what()).find("missing score record"), std::string::npos);
  }
  testing::write_text(f.dir / "empty.jsonl", "");
  EXPECT_THROW(run_evaluate(f.corpus, f.dir / "empty.jsonl", RunConfig{}), Error);
}

TEST(Report, JsonRoundTripAndRederivation) {
  const Fixture f = make_fixture("json");
  RunConfig config;
  config.model_size = "medium";
  const auto runs =
      run_evaluate(f.corpus, write_scores(f, MockPolicy::kSeededRandom, "rand"), config);
  const SystemRun& run = runs[0];
  const std::string json = report_to_json(run.report);
  EXPECT_EQ(report_to_json(report_from_json(json)), json);
  EXPECT_EQ(json.find("generated_at"), std::string::npos);

  // Everything in the report follows from the outcomes file.
  const auto written = write_run(run, f.dir / "out");
  std::ifstream in(written[1]);
  const auto outcomes = read_outcomes(in);
  const EvaluationReport again = build_report(run.report.system, outcomes, config,
                                              run.report.corpus_sha256,
                                              run.report.scores_sha256);
  EXPECT_EQ(report_to_json(again), json);
  EXPECT_EQ(testing::read_text(written[0]), json);
  EXPECT_NO_THROW(cross_check(report_from_json(json), outcomes));
}

TEST(Report, CrossCheckCatchesTampering) {
  const Fixture f = make_fixture("tamper");
  const auto runs =
      run_evaluate(f.corpus, write_scores(f, MockPolicy::kSeededRandom, "r"), RunConfig{});
  EvaluationReport bad = runs[0].report;
  bad.partitions[0].accuracy->num += 1;
  EXPECT_THROW(cross_check(bad, runs[0].outcomes), Error);
  bad = runs[0].report;
  bad.partitions[1].confusion->counts(0, 0) += 1;
  EXPECT_THROW(cross_check(bad, runs[0].outcomes), Error);
  bad = runs[0].report;
  bad.partitions[2].pure_random->expected.num += 1;
  EXPECT_THROW(cross_check(bad, runs[0].outcomes), Error);
}

TEST(Report, TimestampOnlyWhenRequested) {
  const Fixture f = make_fixture("stamp");
  RunConfig config;
  config.timestamp = true;
  const auto runs =
      run_evaluate(f.corpus, write_scores(f, MockPolicy::kOracle, "o"), config);
  EXPECT_TRUE(runs[0].report.generated_at);
  EXPECT_NE(report_to_json(runs[0].report).find("generated_at"), std::string::npos);
}

TEST(Report, SummaryMentionsEveryPartition) {
  const Fixture f = make_fixture("summary");
  const auto runs =
      run_evaluate(f.corpus, write_scores(f, MockPolicy::kOracle, "o"), RunConfig{});
  const std::string s = report_summary(runs[0].report, Partition::kAmbiguous);
  for (const char* p : {"all", "ambiguous", "unambiguous", "100.0", "per-intent"})
    EXPECT_NE(s.find(p), std::string::npos) << p;
}

std::vector<EvaluationReport> model_sweep(const Fixture& f, const std::string& kind) {
  std::vector<EvaluationReport> out;
  std::uint64_t seed = kind.size();
  for (const std::string size : {"tiny", "base", "small", "medium", "large"}) {
    const std::string system = "whisper-" + size + "-" + kind;
    const auto path = f.dir / (system + ".jsonl");
    testing::write_text(path, testing::mock_score_file(f.sets, MockPolicy::kSeededRandom,
                                                       system, kind, size, ++seed));
    out.push_back(run_evaluate(f.corpus, path, RunConfig{})[0].report);
  }
  return out;
}

TEST(PlotData, Figure2Shape) {
  const Fixture f = make_fixture("fig2");
  auto reports = model_sweep(f, "direct");
  const auto cascade = model_sweep(f, "cascade");
  reports.insert(reports.end(), cascade.begin(), cascade.end());
  const auto rows = emit_plot_data(reports, Figure::kFigure2);
  ASSERT_EQ(rows.size(), 11u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(rows[i].metric, "accuracy");
    EXPECT_EQ(rows[i].partition, "all");
    EXPECT_GE(rows[i].value, 0.0);
    EXPECT_LE(rows[i].value, 100.0);
  }
  EXPECT_EQ(rows[3].model_size, "medium");
  EXPECT_EQ(rows[10].system, "random");
  const std::string tsv = plot_rows_to_tsv(rows);
  EXPECT_TRUE(tsv.starts_with("system\tmodel_size\tpartition\tmetric\tvalue\n"));
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 12);
}

TEST(PlotData, Table2AndFigure4Shapes) {
  const Fixture f = make_fixture("fig4");
  std::vector<EvaluationReport> reports;
  for (const std::string kind : {"direct", "cascade", "mt_gold"}) {
    const std::string system = "medium-" + kind;
    const auto path = f.dir / (system + ".jsonl");
    testing::write_text(path, testing::mock_score_file(f.sets, MockPolicy::kSeededRandom,
                                                       system, kind,
                                                       kind == "mt_gold" ? "" : "medium"));
    reports.push_back(run_evaluate(f.corpus, path, RunConfig{})[0].report);
  }
  const auto table2 = emit_plot_data(reports, Figure::kTable2);
  EXPECT_EQ(table2.size(), 3u * 2u + 4u);
  const auto fig4 = emit_plot_data(reports, Figure::kFigure4);
  std::set<std::string> metrics;
  for (const auto& r : fig4) {
    EXPECT_NE(r.partition, "all");
    metrics.insert(r.metric);
  }
  for (const char* m : {"recall.statement", "precision.yes_no_question", "f1.wh_question"})
    EXPECT_TRUE(metrics.contains(m)) << m;
  EXPECT_LE(metrics.size(), 9u);

  const auto confusion = emit_plot_data(reports, Figure::kConfusion);
  EXPECT_FALSE(confusion.empty());
  const auto intents = emit_plot_data(reports, Figure::kIntents);
  EXPECT_GT(intents.size(), fig4.size());
}

TEST(PlotData, Errors) {
  EXPECT_THROW(emit_plot_data({}, Figure::kFigure2), Error);
  const Fixture f = make_fixture("plot-errors");
  const auto runs =
      run_evaluate(f.corpus, write_scores(f, MockPolicy::kOracle, "nosize", "direct", ""),
                   RunConfig{});
  EXPECT_THROW(emit_plot_data({runs[0].report}, Figure::kFigure2), Error);
  EXPECT_NO_THROW(emit_plot_data({runs[0].report}, Figure::kFigure4));
  EXPECT_EQ(parse_figure("figure4"), Figure::kFigure4);
  EXPECT_FALSE(parse_figure("figure9"));
}

TEST(Compare, DeltasAgainstFirstReport) {
  const Fixture f = make_fixture("compare");
  const auto a = run_evaluate(f.corpus, write_scores(f, MockPolicy::kOracle, "a"), RunConfig{});
  const auto b =
      run_evaluate(f.corpus, write_scores(f, MockPolicy::kAdversarial, "b"), RunConfig{});
  const std::string table = compare_reports({a[0].report, b[0].report});
  EXPECT_TRUE(table.starts_with("system\tkind\tmodel_size\tpartition\tsets\taccuracy\tdelta_vs_a\n"));
  EXPECT_NE(table.find("a\tmock\t\tall\t"), std::string::npos);
  EXPECT_NE(table.find("\t100.0\t+0.0\n"), std::string::npos);
  EXPECT_THROW(compare_reports({}), Error);
}

TEST(Baselines, RowsPerPartition) {
  const auto sets = build_contrastive_sets(testing::nuga_corpus());
  const auto rows = baseline_rows(sets, RunConfig{});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].sets, 3u);
  EXPECT_EQ(rows[1].sets, 2u);
  EXPECT_EQ(rows[2].sets, 1u);
  EXPECT_EQ(*rows[1].whq_biased, (Ratio{1, 2}));
  EXPECT_EQ(*rows[2].whq_biased, (Ratio{0, 1}));
  EXPECT_EQ(*rows[2].pure_random, (Ratio{1, 3}));
}

TEST(FileStem, Sanitizes) {
  EXPECT_EQ(file_stem("whisper/medium direct"), "whisper_medium_direct");
  EXPECT_EQ(file_stem(".."), "_..");
  EXPECT_EQ(file_stem(""), "_");
}

}  // namespace
}  // namespace contrastive
