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

#include "contrastive/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

#include "contrastive/error.hpp"
#include "json.hpp"

namespace contrastive {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kModule = "report";

PartitionSection& section(EvaluationReport& r, Partition p) {
  return r.partitions[static_cast<std::size_t>(p)];
}

std::string read_file(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(kModule, "cannot open " + std::string(what) + " '" +
                             path.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json ratio_json(const Ratio& r) {
  ordered_json j;
  j["numerator"] = r.num;
  j["denominator"] = r.den;
  j["value"] = r.value();
  j["percent"] = r.percent_1dp();
  return j;
}

Ratio ratio_from(const json& j) {
  return Ratio{j.at("numerator").get<std::int64_t>(),
               j.at("denominator").get<std::int64_t>()};
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ordered_json section_json(const PartitionSection& s) {
  ordered_json j;
  j["sets"] = s.sets;
  j["accuracy"] = s.accuracy ? ratio_json(*s.accuracy) : ordered_json(nullptr);
  ordered_json baselines;
  baselines["pure_random"] =
      s.pure_random ? ratio_json(s.pure_random->expected) : ordered_json(nullptr);
  baselines["whq_biased_random"] =
      s.whq_biased ? ratio_json(s.whq_biased->expected) : ordered_json(nullptr);
  j["baselines"] = std::move(baselines);

  if (s.prf) {
    ordered_json intents;
    for (Intent i : kAllIntents) {
      const IntentScores& sc = (*s.prf)[i];
      ordered_json e;
      e["gold_support"] = sc.gold_support;
      e["predicted_support"] = sc.predicted_support;
      e["correct"] = sc.correct;
      e["precision"] = optional_json(sc.precision);
      e["recall"] = optional_json(sc.recall);
      e["f1"] = optional_json(sc.f1);
      intents[std::string(label(i))] = std::move(e);
    }
    j["intents"] = std::move(intents);
  } else {
    j["intents"] = nullptr;
  }

  if (s.confusion) {
    ordered_json cm;
    ordered_json labels = ordered_json::array();
    for (Intent i : kAllIntents) labels.push_back(label(i));
    cm["labels"] = std::move(labels);
    ordered_json counts = ordered_json::array();
    ordered_json normalized = ordered_json::array();
    for (Eigen::Index r = 0; r < s.confusion->counts.rows(); ++r) {
      ordered_json crow = ordered_json::array();
      ordered_json nrow = ordered_json::array();
      for (Eigen::Index c = 0; c < s.confusion->counts.cols(); ++c) {
        crow.push_back(s.confusion->counts(r, c));
        if (s.confusion->normalized) nrow.push_back((*s.confusion->normalized)(r, c));
      }
      counts.push_back(std::move(crow));
      normalized.push_back(std::move(nrow));
    }
    cm["counts"] = std::move(counts);
    cm["normalized"] = std::move(normalized);
    j["confusion"] = std::move(cm);
  } else {
    j["confusion"] = nullptr;
  }
  return j;
}

PartitionSection section_from(const json& j, Partition p, bool include_singletons) {
  PartitionSection s;
  const Selection sel{p, include_singletons};
  s.sets = j.at("sets").get<std::size_t>();
  if (!j.at("accuracy").is_null()) s.accuracy = ratio_from(j.at("accuracy"));
  const json& b = j.at("baselines");
  if (!b.at("pure_random").is_null())
    s.pure_random = BaselineResult{ratio_from(b.at("pure_random")),
                                   BaselineKind::kPureRandom, sel, s.sets};
  if (!b.at("whq_biased_random").is_null())
    s.whq_biased = BaselineResult{ratio_from(b.at("whq_biased_random")),
                                  BaselineKind::kWhqBiasedRandom, sel, s.sets};
  if (!j.at("intents").is_null()) {
    IntentPRF prf;
    prf.total = s.sets;
    for (Intent i : kAllIntents) {
      const json& e = j.at("intents").at(std::string(label(i)));
      IntentScores& sc = prf.per_intent[index(i)];
      sc.gold_support = e.at("gold_support").get<std::size_t>();
      sc.predicted_support = e.at("predicted_support").get<std::size_t>();
      sc.correct = e.at("correct").get<std::size_t>();
      sc.precision = optional_from(e.at("precision"));
      sc.recall = optional_from(e.at("recall"));
      sc.f1 = optional_from(e.at("f1"));
    }
    s.prf = prf;
  }
  if (!j.at("confusion").is_null()) {
    ConfusionMatrix cm;
    IntentMatrix<double> norm = IntentMatrix<double>::Zero();
    bool has_norm = false;
    const json& counts = j.at("confusion").at("counts");
    const json& normalized = j.at("confusion").at("normalized");
    for (std::size_t r = 0; r < kNumIntents; ++r)
      for (std::size_t c = 0; c < kNumIntents; ++c) {
        cm.counts(r, c) = counts.at(r).at(c).get<std::int64_t>();
        if (!normalized.at(r).empty()) {
          norm(r, c) = normalized.at(r).at(c).get<double>();
          has_norm = true;
        }
      }
    if (has_norm) cm.normalized = norm;
    s.confusion = cm;
  }
  return s;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw Error(kModule, "cross-check failed: " + what);
}

SystemInfo system_info_from(const std::string& system_id,
                            const ScoreFile& file, const RunConfig& config) {
  SystemInfo info;
  info.system_id = system_id;
  std::string header;
  if (auto it = file.headers.find(system_id); it != file.headers.end())
    header = it->second;
  else if (auto any = file.headers.find(""); any != file.headers.end())
    header = any->second;
  if (!header.empty()) {
    const json h = json::parse(header);
    auto pick = [&](std::initializer_list<const char*> keys) -> std::string {
      for (const json* scope : {h.contains("config") ? &h.at("config") : nullptr, &h}) {
        if (scope == nullptr || !scope->is_object()) continue;
        for (const char* k : keys)
          if (auto it = scope->find(k); it != scope->end() && it->is_string())
            return it->get<std::string>();
      }
      return {};
    };
    info.kind = pick({"kind", "system_kind"});
    info.model_size = pick({"model_size", "size"});
    info.punctuation_mode = pick({"punctuation_mode", "punct_mode"});
  }
  if (config.system_kind) info.kind = *config.system_kind;
  if (config.model_size) info.model_size = *config.model_size;
  if (config.punctuation_mode) info.punctuation_mode = *config.punctuation_mode;
  return info;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{}", v); }

EvaluationReport build_report(const SystemInfo& system,
                              const std::vector<SetOutcome>& outcomes,
                              const RunConfig& config,
                              std::string corpus_sha256,
                              std::string scores_sha256) {
  EvaluationReport r;
  r.system = system;
  r.corpus_sha256 = std::move(corpus_sha256);
  r.scores_sha256 = std::move(scores_sha256);
  r.punct_map = config.punct_map;
  r.punct_map_source = config.punct_map_source;
  r.include_singletons = config.include_singletons;
  r.skip_sets.assign(config.skip_sets.begin(), config.skip_sets.end());
  if (config.timestamp) r.generated_at = utc_now();

  for (Partition p : kAllPartitions) {
    const Selection sel{p, config.include_singletons};
    PartitionSection& s = section(r, p);
    for (const SetOutcome& o : outcomes)
      if (selected(o, sel)) ++s.sets;
    if (s.sets == 0) continue;
    s.accuracy = accuracy(outcomes, sel);
    s.prf = intent_prf(outcomes, sel);
    s.confusion = confusion_matrix(outcomes, sel, /*normalize=*/true);
    s.pure_random = random_baseline(outcomes, sel);
    s.whq_biased = whq_biased_baseline(outcomes, sel);
  }
  return r;
}

void cross_check(const EvaluationReport& report,
                 const std::vector<SetOutcome>& outcomes) {
  for (Partition p : kAllPartitions) {
    const PartitionSection& s = report[p];
    const Selection sel{p, report.include_singletons};
    const std::string where = "partition " + std::string(label(p)) + ": ";
    if (s.sets == 0) {
      check(!s.accuracy, where + "accuracy present without sets");
      continue;
    }
    check(s.accuracy && s.prf && s.confusion && s.pure_random && s.whq_biased,
          where + "missing section");
    const Ratio acc = accuracy(outcomes, sel);
    check(acc.num == s.accuracy->num && acc.den == s.accuracy->den,
          where + "accuracy does not match outcomes");
    check(std::abs(s.prf->micro_recall() - acc.value()) < 1e-12,
          where + "micro recall differs from accuracy");
    check(s.confusion->total() == acc.den, where + "confusion total");
    check(s.confusion->trace() == acc.num, where + "confusion diagonal");
    for (Intent i : kAllIntents) {
      const auto row = s.confusion->counts.row(index(i));
      check(row.sum() == static_cast<std::int64_t>((*s.prf)[i].gold_support),
            where + "confusion row sum for " + std::string(label(i)));
      if (row.sum() > 0 && s.confusion->normalized)
        check(std::abs(s.confusion->normalized->row(index(i)).sum() - 1.0) <= 1e-9,
              where + "normalized row sum for " + std::string(label(i)));
    }
    check(s.pure_random->expected == random_baseline(outcomes, sel).expected,
          where + "pure random baseline");
    check(s.whq_biased->expected == whq_biased_baseline(outcomes, sel).expected,
          where + "wh-question biased baseline");
  }
  const auto& all = report[Partition::kAll];
  const auto& amb = report[Partition::kAmbiguous];
  const auto& una = report[Partition::kUnambiguous];
  check(all.sets == amb.sets + una.sets, "partition sizes do not add up");
  if (all.accuracy) {
    const std::int64_t correct = (amb.accuracy ? amb.accuracy->num : 0) +
                                 (una.accuracy ? una.accuracy->num : 0);
    check(correct == all.accuracy->num,
          "overall accuracy is not the weighted mean of partition accuracies");
  }
}

std::string report_to_json(const EvaluationReport& r) {
  ordered_json j;
  j["schema"] = kReportSchema;
  ordered_json sys;
  sys["system_id"] = r.system.system_id;
  sys["kind"] = r.system.kind;
  sys["model_size"] = r.system.model_size;
  sys["punctuation_mode"] = r.system.punctuation_mode;
  j["system"] = std::move(sys);
  j["corpus_sha256"] = r.corpus_sha256;
  j["scores_sha256"] = r.scores_sha256;
  ordered_json cfg;
  ordered_json map;
  for (Intent i : kAllIntents) map[std::string(label(i))] = label(r.punct_map[i]);
  cfg["punct_map"] = std::move(map);
  cfg["punct_map_source"] = r.punct_map_source;
  cfg["tie_policy"] = kTiePolicy;
  cfg["include_singletons"] = r.include_singletons;
  cfg["skip_sets"] = r.skip_sets;
  j["config"] = std::move(cfg);
  if (r.generated_at) j["generated_at"] = *r.generated_at;
  ordered_json parts;
  for (Partition p : kAllPartitions)
    parts[std::string(label(p))] = section_json(r[p]);
  j["partitions"] = std::move(parts);
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("schema").get<std::string>() != kReportSchema)
      throw Error(kModule, "unsupported report schema '" +
                               j.at("schema").get<std::string>() + "'");
    EvaluationReport r;
    const json& sys = j.at("system");
    r.system.system_id = sys.at("system_id").get<std::string>();
    r.system.kind = sys.at("kind").get<std::string>();
    r.system.model_size = sys.at("model_size").get<std::string>();
    r.system.punctuation_mode = sys.at("punctuation_mode").get<std::string>();
    r.corpus_sha256 = j.at("corpus_sha256").get<std::string>();
    r.scores_sha256 = j.at("scores_sha256").get<std::string>();
    const json& cfg = j.at("config");
    for (Intent i : kAllIntents) {
      const auto c = parse_punct_class(
          cfg.at("punct_map").at(std::string(label(i))).get<std::string>());
      if (!c) throw Error(kModule, "bad punctuation class in report");
      r.punct_map.set(i, *c);
    }
    r.punct_map_source = cfg.at("punct_map_source").get<std::string>();
    r.include_singletons = cfg.at("include_singletons").get<bool>();
    r.skip_sets = cfg.at("skip_sets").get<std::vector<std::string>>();
    if (j.contains("generated_at"))
      r.generated_at = j.at("generated_at").get<std::string>();
    for (Partition p : kAllPartitions)
      section(r, p) = section_from(j.at("partitions").at(std::string(label(p))),
                                   p, r.include_singletons);
    return r;
  } catch (const json::exception& e) {
    throw Error(kModule, std::string("malformed report: ") + e.what());
  }
}

std::string report_summary(const EvaluationReport& r, Partition focus) {
  std::string out;
  out += fmt::format("system {}", r.system.system_id);
  if (!r.system.kind.empty() || !r.system.model_size.empty())
    out += fmt::format(" ({}{}{})", r.system.kind,
                       r.system.kind.empty() || r.system.model_size.empty() ? "" : " ",
                       r.system.model_size);
  out += "\n";
  out += fmt::format("corpus sha256 {}\n", r.corpus_sha256);
  out += fmt::format("{:<12} {:>6} {:>9} {:>8} {:>10}\n", "partition", "sets",
                     "accuracy", "random", "wh-q-rand");
  auto pct = [](const std::optional<Ratio>& v) {
    return v ? v->percent_1dp() : std::string("-");
  };
  for (Partition p : kAllPartitions) {
    const PartitionSection& s = r[p];
    out += fmt::format(
        "{:<12} {:>6} {:>9} {:>8} {:>10}\n", label(p), s.sets, pct(s.accuracy),
        pct(s.pure_random ? std::optional<Ratio>(s.pure_random->expected)
                          : std::nullopt),
        pct(s.whq_biased ? std::optional<Ratio>(s.whq_biased->expected)
                         : std::nullopt));
  }
  const PartitionSection& f = r[focus];
  if (f.prf) {
    out += fmt::format("\nper-intent scores ({})\n", label(focus));
    out += fmt::format("{:<4} {:>6} {:>9} {:>7} {:>6}\n", "", "gold", "precision",
                       "recall", "f1");
    auto cell = [](const std::optional<double>& v) {
      return v ? fmt::format("{:.1f}", 100.0 * *v) : std::string("-");
    };
    for (Intent i : kAllIntents) {
      const IntentScores& sc = (*f.prf)[i];
      out += fmt::format("{:<4} {:>6} {:>9} {:>7} {:>6}\n", short_label(i),
                         sc.gold_support, cell(sc.precision), cell(sc.recall),
                         cell(sc.f1));
    }
  }
  return out;
}

std::vector<SystemRun> run_evaluate(const std::filesystem::path& corpus_path,
                                    const std::filesystem::path& scores_path,
                                    const RunConfig& config) {
  const std::string corpus_bytes = read_file(corpus_path, "corpus");
  std::istringstream corpus_in(corpus_bytes);
  const Corpus corpus = ingest_corpus(corpus_in, config.corpus_format);
  const auto sets = build_contrastive_sets(corpus);

  const std::string score_bytes = read_file(scores_path, "score file");
  std::istringstream score_in(score_bytes);
  const ScoreFile scores = read_score_file(score_in);
  const auto systems = scores.systems();
  if (systems.empty())
    throw Error("scoring", "score file '" + scores_path.string() +
                               "' contains no score records");

  const std::string corpus_sha = content_sha256(corpus_bytes);
  const std::string scores_sha = content_sha256(score_bytes);
  EvaluateOptions options;
  options.punct_map = config.punct_map;
  options.skip_sets = config.skip_sets;
  options.jobs = config.jobs;

  std::vector<SystemRun> runs;
  for (const std::string& system_id : systems) {
    const SystemScores system_scores(system_id, scores.records);
    SystemRun run;
    run.outcomes = evaluate_system(sets, system_scores, options);
    run.report = build_report(system_info_from(system_id, scores, config),
                              run.outcomes, config, corpus_sha, scores_sha);
    cross_check(run.report, run.outcomes);
    runs.push_back(std::move(run));
  }
  return runs;
}

std::string file_stem(std::string_view system_id) {
  std::string out;
  for (char c : system_id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out.front() == '.') out.insert(out.begin(), '_');
  return out;
}

std::vector<std::filesystem::path> write_run(const SystemRun& run,
                                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string stem = file_stem(run.report.system.system_id);
  const auto report_path = dir / (stem + ".report.json");
  const auto outcomes_path = dir / (stem + ".outcomes.jsonl");
  {
    std::ofstream out(report_path, std::ios::binary);
    out << report_to_json(run.report);
    if (!out) throw Error(kModule, "cannot write '" + report_path.string() + "'");
  }
  {
    std::ofstream out(outcomes_path, std::ios::binary);
    for (const SetOutcome& o : run.outcomes) write_outcome(o, out);
    if (!out) throw Error(kModule, "cannot write '" + outcomes_path.string() + "'");
  }
  return {report_path, outcomes_path};
}

std::vector<BaselineRow> baseline_rows(const std::vector<ContrastiveSet>& sets,
                                       const RunConfig& config) {
  std::vector<BaselineRow> rows;
  for (Partition p : kAllPartitions) {
    const Selection sel{p, config.include_singletons};
    BaselineRow row{p, 0, std::nullopt, std::nullopt};
    for (const ContrastiveSet& s : sets)
      if (!config.skip_sets.contains(s.set_id) &&
          selected(s, classify_set(s, config.punct_map), sel))
        ++row.sets;
    if (row.sets > 0) {
      std::vector<ContrastiveSet> kept;
      for (const ContrastiveSet& s : sets)
        if (!config.skip_sets.contains(s.set_id)) kept.push_back(s);
      row.pure_random = random_baseline(kept, config.punct_map, sel).expected;
      row.whq_biased = whq_biased_baseline(kept, config.punct_map, sel).expected;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<BaselineRow> run_baselines(const std::filesystem::path& corpus_path,
                                       const RunConfig& config) {
  const std::string bytes = read_file(corpus_path, "corpus");
  std::istringstream in(bytes);
  const Corpus corpus = ingest_corpus(in, config.corpus_format);
  return baseline_rows(build_contrastive_sets(corpus), config);
}

std::string_view label(Figure f) {
  switch (f) {
    case Figure::kFigure2:
      return "figure2";
    case Figure::kFigure3:
      return "figure3";
    case Figure::kTable2:
      return "table2";
    case Figure::kFigure4:
      return "figure4";
    case Figure::kIntents:
      return "intents";
    case Figure::kConfusion:
      return "confusion";
  }
  return "figure2";
}

std::optional<Figure> parse_figure(std::string_view s) {
  for (Figure f : {Figure::kFigure2, Figure::kFigure3, Figure::kTable2,
                   Figure::kFigure4, Figure::kIntents, Figure::kConfusion})
    if (label(f) == s) return f;
  return std::nullopt;
}

std::vector<PlotRow> emit_plot_data(const std::vector<EvaluationReport>& reports,
                                    Figure figure) {
  if (reports.empty())
    throw Error(kModule, "no reports given for " + std::string(label(figure)));
  const EvaluationReport& first = reports.front();
  for (const EvaluationReport& r : reports) {
    if (r.corpus_sha256 != first.corpus_sha256 || r.punct_map != first.punct_map ||
        r.include_singletons != first.include_singletons)
      throw Error(kModule, "report '" + r.system.system_id +
                               "' was produced from a different corpus or "
                               "configuration than '" +
                               first.system.system_id + "'");
  }
  const bool needs_size = figure == Figure::kFigure2 || figure == Figure::kFigure3 ||
                          figure == Figure::kTable2;
  if (needs_size)
    for (const EvaluationReport& r : reports)
      if (r.system.kind.empty() ||
          (r.system.kind != "mt_gold" && r.system.model_size.empty()))
        throw Error(kModule, "report '" + r.system.system_id +
                                 "' lacks the system kind or model size needed by " +
                                 std::string(label(figure)));

  std::vector<PlotRow> rows;
  auto add = [&](const EvaluationReport& r, Partition p, std::string metric,
                 double value) {
    rows.push_back({r.system.system_id, r.system.model_size,
                    std::string(label(p)), std::move(metric), value});
  };
  auto add_baseline = [&](Partition p, BaselineKind kind) {
    const PartitionSection& s = first[p];
    const auto& b = kind == BaselineKind::kPureRandom ? s.pure_random : s.whq_biased;
    if (b)
      rows.push_back({std::string(kind == BaselineKind::kPureRandom ? "random"
                                                                    : "whq_random"),
                      "", std::string(label(p)), "accuracy",
                      100.0 * b->expected.value()});
  };
  auto add_accuracy = [&](const EvaluationReport& r, Partition p) {
    if (r[p].accuracy) add(r, p, "accuracy", 100.0 * r[p].accuracy->value());
  };
  auto add_prf = [&](const EvaluationReport& r, Partition p, Intent i) {
    if (!r[p].prf) return;
    const IntentScores& sc = (*r[p].prf)[i];
    const std::string name(label(i));
    if (sc.recall) add(r, p, "recall." + name, 100.0 * *sc.recall);
    if (sc.precision) add(r, p, "precision." + name, 100.0 * *sc.precision);
    if (sc.f1) add(r, p, "f1." + name, 100.0 * *sc.f1);
  };

  switch (figure) {
    case Figure::kFigure2:
      for (const auto& r : reports) add_accuracy(r, Partition::kAll);
      add_baseline(Partition::kAll, BaselineKind::kPureRandom);
      break;
    case Figure::kFigure3:
    case Figure::kTable2:
      for (Partition p : {Partition::kAmbiguous, Partition::kUnambiguous})
        for (const auto& r : reports) add_accuracy(r, p);
      for (Partition p : {Partition::kAmbiguous, Partition::kUnambiguous}) {
        add_baseline(p, BaselineKind::kPureRandom);
        if (figure == Figure::kTable2) add_baseline(p, BaselineKind::kWhqBiasedRandom);
      }
      break;
    case Figure::kFigure4:
      for (Partition p : {Partition::kAmbiguous, Partition::kUnambiguous})
        for (const auto& r : reports)
          for (Intent i : {Intent::kStatement, Intent::kYesNoQuestion,
                           Intent::kWhQuestion})
            add_prf(r, p, i);
      break;
    case Figure::kIntents:
      for (Partition p : kAllPartitions)
        for (const auto& r : reports)
          for (Intent i : kAllIntents) add_prf(r, p, i);
      break;
    case Figure::kConfusion:
      for (Partition p : kAllPartitions)
        for (const auto& r : reports) {
          const auto& cm = r[p].confusion;
          if (!cm || !cm->normalized) continue;
          for (Intent g : kAllIntents) {
            if (cm->counts.row(index(g)).sum() == 0) continue;
            for (Intent q : kAllIntents)
              add(r, p,
                  "confusion." + std::string(label(g)) + "." + std::string(label(q)),
                  (*cm->normalized)(index(g), index(q)));
          }
        }
      break;
  }
  return rows;
}

std::string plot_rows_to_tsv(const std::vector<PlotRow>& rows) {
  std::string out = "system\tmodel_size\tpartition\tmetric\tvalue\n";
  for (const PlotRow& r : rows)
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", r.system, r.model_size, r.partition,
                       r.metric, format_number(r.value));
  return out;
}

std::string compare_reports(const std::vector<EvaluationReport>& reports) {
  if (reports.empty()) throw Error(kModule, "no reports to compare");
  const EvaluationReport& base = reports.front();
  std::string out = fmt::format(
      "system\tkind\tmodel_size\tpartition\tsets\taccuracy\tdelta_vs_{}\n",
      base.system.system_id);
  for (Partition p : kAllPartitions)
    for (const EvaluationReport& r : reports) {
      const auto& acc = r[p].accuracy;
      const auto& ref = base[p].accuracy;
      std::string delta = "-";
      if (acc && ref)
        delta = fmt::format("{:+.1f}", 100.0 * (acc->value() - ref->value()));
      out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", r.system.system_id,
                         r.system.kind, r.system.model_size, label(p), r[p].sets,
                         acc ? acc->percent_1dp() : "-", delta);
    }
  return out;
}

}  // namespace contrastive
