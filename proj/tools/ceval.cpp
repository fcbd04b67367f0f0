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

// ceval: command-line front end of the contrastive evaluation harness.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "contrastive/convert.hpp"
#include "contrastive/corpus.hpp"
#include "contrastive/error.hpp"
#include "contrastive/metrics.hpp"
#include "contrastive/partition.hpp"
#include "contrastive/report.hpp"
#include "contrastive/scoring.hpp"
#include "contrastive/text.hpp"
#include "json.hpp"

namespace {

using namespace contrastive;
using nlohmann::ordered_json;

struct CommonOptions {
  std::string corpus;
  std::string format = "jsonl";
  std::string punct_map;
  bool exclude_singletons = false;
  std::string partition = "all";
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cli", "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Everything goes through one writer: the --out file or standard output.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << content;
  if (!out) throw Error("cli", "cannot write '" + out_path + "'");
}

RunConfig make_config(const CommonOptions& o) {
  RunConfig config;
  const auto fmt = parse_corpus_format(o.format);
  if (!fmt) throw Error("cli", "unknown corpus format '" + o.format + "'");
  config.corpus_format = *fmt;
  if (!o.punct_map.empty()) {
    std::ifstream in(o.punct_map);
    if (!in) throw Error("cli", "cannot open punctuation map '" + o.punct_map + "'");
    config.punct_map = load_punctuation_map(in);
    config.punct_map_source = o.punct_map;
  }
  config.include_singletons = !o.exclude_singletons;
  const auto p = parse_partition(o.partition);
  if (!p) throw Error("cli", "unknown partition '" + o.partition + "'");
  config.partition = *p;
  return config;
}

Corpus load_corpus(const CommonOptions& o, CorpusFormat format) {
  std::istringstream in(slurp(o.corpus));
  return ingest_corpus(in, format);
}

void add_corpus_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--corpus", o.corpus, "Corpus file")->required();
  cmd->add_option("--format", o.format, "Corpus format: jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
}

void add_selection_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--punct-map", o.punct_map,
                  "Intent to punctuation-class map (default: built in)");
  cmd->add_flag("--exclude-singletons,!--include-singletons", o.exclude_singletons,
                "Drop sets without alternatives from every metric");
  cmd->add_option("--partition", o.partition, "all, ambiguous or unambiguous")
      ->check(CLI::IsMember({"all", "ambiguous", "unambiguous"}));
}

std::string stats_json(const Corpus& corpus, const std::vector<Violation>& violations,
                       const std::string& sha) {
  const CorpusStats stats = corpus_stats(corpus);
  ordered_json j;
  j["corpus_sha256"] = sha;
  j["utterances"] = stats.total_utterances;
  j["transcriptions"] = stats.distinct_transcriptions;
  ordered_json intents;
  for (Intent i : kAllIntents) intents[std::string(label(i))] = stats.per_intent[index(i)];
  j["intents"] = std::move(intents);
  ordered_json particles;
  for (WhParticle p : kAllWhParticles)
    particles[std::string(label(p))] = stats.per_particle[index(p)];
  j["wh_particles"] = std::move(particles);
  ordered_json groups;
  for (std::size_t n = 1; n < stats.group_sizes.size(); ++n)
    groups[std::to_string(n)] = stats.group_sizes[n];
  j["transcriptions_by_utterance_count"] = std::move(groups);
  ordered_json vs = ordered_json::array();
  for (const Violation& v : violations) {
    ordered_json e;
    e["kind"] = label(v.kind);
    e["records"] = v.record_ids;
    e["message"] = v.message;
    vs.push_back(std::move(e));
  }
  j["violations"] = std::move(vs);
  return j.dump(2) + "\n";
}

std::vector<EvaluationReport> load_reports(const std::vector<std::string>& paths) {
  std::vector<EvaluationReport> reports;
  for (const auto& p : paths) reports.push_back(report_from_json(slurp(p)));
  return reports;
}

std::set<std::string, std::less<>> read_id_list(const std::string& path) {
  std::set<std::string, std::less<>> ids;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = contrastive::text::trim(line);
    if (!t.empty() && t.front() != '#') ids.emplace(t);
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contrastive evaluation of prosody-dependent translation"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ingest-validate
  CommonOptions iv;
  auto* ingest = app.add_subcommand("ingest-validate",
                                    "Parse a corpus, print statistics and every violation");
  add_corpus_options(ingest, iv);
  ingest->add_option("--out", iv.out, "Output file (default: stdout)");
  ingest->callback([&] {
    const RunConfig config = make_config(iv);
    const std::string bytes = slurp(iv.corpus);
    std::istringstream in(bytes);
    const Corpus corpus = read_corpus(in, config.corpus_format);
    const auto violations = validate_corpus(corpus);
    emit(iv.out, stats_json(corpus, violations, content_sha256(bytes)));
    for (const Violation& v : violations) std::cerr << "corpus: " << v.message << "\n";
    if (!violations.empty()) exit_code = 1;
  });

  // build-sets
  CommonOptions bs;
  auto* build = app.add_subcommand("build-sets", "Write one contrastive set per utterance");
  add_corpus_options(build, bs);
  build->add_option("--out", bs.out, "Output file (default: stdout)");
  build->callback([&] {
    const RunConfig config = make_config(bs);
    const Corpus corpus = load_corpus(bs, config.corpus_format);
    std::string out;
    auto cand = [](const Candidate& c) {
      ordered_json j;
      j["candidate_id"] = c.candidate_id;
      j["intent"] = label(c.intent);
      j["translation_text"] = c.translation_text;
      return j;
    };
    for (const ContrastiveSet& s : build_contrastive_sets(corpus)) {
      ordered_json j;
      j["set_id"] = s.set_id;
      j["transcription_id"] = s.transcription_id;
      j["gold_utterance_id"] = s.gold_utterance_id;
      j["singleton"] = s.singleton();
      j["gold"] = cand(s.gold);
      ordered_json alts = ordered_json::array();
      for (const Candidate& c : s.alternatives) alts.push_back(cand(c));
      j["alternatives"] = std::move(alts);
      out += j.dump() + "\n";
    }
    emit(bs.out, out);
  });

  // partition-stats
  CommonOptions ps;
  std::vector<std::size_t> reconcile;
  auto* pstats = app.add_subcommand("partition-stats",
                                    "Count ambiguous and unambiguous sets");
  add_corpus_options(pstats, ps);
  add_selection_options(pstats, ps);
  pstats->add_option("--reconcile", reconcile,
                     "AMBIGUOUS UNAMBIGUOUS: list punctuation maps reproducing these counts")
      ->expected(2);
  pstats->add_option("--out", ps.out, "Output file (default: stdout)");
  pstats->callback([&] {
    const RunConfig config = make_config(ps);
    const Corpus corpus = load_corpus(ps, config.corpus_format);
    std::vector<ContrastiveSet> sets;
    for (auto& s : build_contrastive_sets(corpus))
      if (config.include_singletons || !s.singleton()) sets.push_back(std::move(s));
    const PartitionCounts counts = count_partitions(sets, config.punct_map);
    ordered_json j;
    ordered_json map;
    for (Intent i : kAllIntents) map[std::string(label(i))] = label(config.punct_map[i]);
    j["punct_map"] = std::move(map);
    j["include_singletons"] = config.include_singletons;
    j["sets"] = counts.total();
    j["ambiguous"] = counts.ambiguous;
    j["unambiguous"] = counts.unambiguous;
    ordered_json by_gold;
    for (Intent i : kAllIntents) {
      ordered_json e;
      e["ambiguous"] = counts.ambiguous_by_gold[index(i)];
      e["unambiguous"] = counts.unambiguous_by_gold[index(i)];
      by_gold[std::string(label(i))] = std::move(e);
    }
    j["by_gold_intent"] = std::move(by_gold);
    if (reconcile.size() == 2) {
      ordered_json maps = ordered_json::array();
      for (const auto& m : reconcile_maps(sets, reconcile[0], reconcile[1]))
        maps.push_back(m.to_string());
      j["reconciling_maps"] = std::move(maps);
    }
    emit(ps.out, j.dump(2) + "\n");
  });

  // evaluate
  CommonOptions ev;
  std::string scores_path, skip_path, system_kind, model_size, punct_mode;
  unsigned jobs = 1;
  bool timestamp = false;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Rank candidates, write one report and outcomes file per system");
  add_corpus_options(evaluate, ev);
  add_selection_options(evaluate, ev);
  evaluate->add_option("--scores", scores_path, "Score wire file")->required();
  evaluate->add_option("--out", ev.out, "Output directory")->required();
  evaluate->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  evaluate->add_option("--skip-sets", skip_path, "File listing set ids to skip");
  evaluate->add_option("--system-kind", system_kind,
                       "Override the system kind from the score header");
  evaluate->add_option("--model-size", model_size,
                       "Override the model size from the score header");
  evaluate->add_option("--punctuation-mode", punct_mode,
                       "Override the punctuation mode from the score header");
  evaluate->add_flag("--timestamp", timestamp, "Embed the generation time in reports");
  evaluate->callback([&] {
    RunConfig config = make_config(ev);
    config.jobs = jobs;
    config.timestamp = timestamp;
    if (!skip_path.empty()) config.skip_sets = read_id_list(skip_path);
    if (!system_kind.empty()) config.system_kind = system_kind;
    if (!model_size.empty()) config.model_size = model_size;
    if (!punct_mode.empty()) config.punctuation_mode = punct_mode;
    const auto runs = run_evaluate(ev.corpus, scores_path, config);
    std::string summary;
    for (const SystemRun& run : runs) {
      write_run(run, ev.out);
      summary += report_summary(run.report, config.partition) + "\n";
    }
    std::cout << summary;
  });

  // baselines
  CommonOptions bl;
  auto* baselines = app.add_subcommand("baselines",
                                       "Analytic pure and wh-question biased random baselines");
  add_corpus_options(baselines, bl);
  add_selection_options(baselines, bl);
  baselines->add_option("--out", bl.out, "Output file (default: stdout)");
  baselines->callback([&] {
    const RunConfig config = make_config(bl);
    std::string out = "partition\tsets\tpure_random\twhq_biased_random\t"
                      "pure_random_value\twhq_biased_random_value\n";
    for (const BaselineRow& row : run_baselines(bl.corpus, config)) {
      if (bl.partition != "all" && row.partition != config.partition) continue;
      auto pct = [](const std::optional<Ratio>& r) {
        return r ? r->percent_1dp() : std::string("-");
      };
      auto val = [](const std::optional<Ratio>& r) {
        return r ? format_number(r->value()) : std::string("-");
      };
      out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", label(row.partition), row.sets,
                         pct(row.pure_random), pct(row.whq_biased),
                         val(row.pure_random), val(row.whq_biased));
    }
    emit(bl.out, out);
  });

  // plot-data
  std::vector<std::string> plot_reports;
  std::string figure_tag, plot_out;
  auto* plot = app.add_subcommand("plot-data", "Tidy table for one figure or table");
  plot->add_option("--reports", plot_reports, "Report files")->required();
  plot->add_option("--figure", figure_tag,
                   "figure2, figure3, table2, figure4, intents or confusion")
      ->required();
  plot->add_option("--out", plot_out, "Output file (default: stdout)");
  plot->callback([&] {
    const auto figure = parse_figure(figure_tag);
    if (!figure) throw Error("cli", "unknown figure '" + figure_tag + "'");
    emit(plot_out, plot_rows_to_tsv(emit_plot_data(load_reports(plot_reports), *figure)));
  });

  // compare
  std::vector<std::string> compare_paths;
  std::string compare_out;
  auto* compare = app.add_subcommand("compare", "Accuracy differences between systems");
  compare->add_option("--reports", compare_paths, "Report files; the first is the reference")
      ->required();
  compare->add_option("--out", compare_out, "Output file (default: stdout)");
  compare->callback([&] { emit(compare_out, compare_reports(load_reports(compare_paths))); });

  // convert
  std::string convert_in, convert_out, delimiter = "tab";
  std::vector<std::string> column_pairs;
  auto* convert = app.add_subcommand(
      "convert", "Convert a delimited upstream release into the corpus format");
  convert->add_option("--input", convert_in, "Delimited input file")->required();
  convert->add_option("--delimiter", delimiter, "tab or comma")
      ->check(CLI::IsMember({"tab", "comma"}));
  convert->add_option("--column", column_pairs, "field=COLUMN mapping (repeatable)");
  convert->add_option("--out", convert_out, "Output corpus file (default: stdout)");
  convert->callback([&] {
    ConvertOptions options;
    options.delimiter = delimiter == "comma" ? ',' : '\t';
    for (const auto& pair : column_pairs) {
      const auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw Error("cli", "--column expects field=COLUMN, got '" + pair + "'");
      options.columns[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    std::istringstream in(slurp(convert_in));
    const Corpus corpus = convert_delimited(in, options);
    std::ostringstream out;
    serialize_corpus(corpus, out);
    emit(convert_out, out.str());
    const CorpusStats stats = corpus_stats(corpus);
    std::cerr << fmt::format("converted {} utterances, {} transcriptions\n",
                             stats.total_utterances, stats.distinct_transcriptions);
    for (std::size_t n = 1; n < stats.group_sizes.size(); ++n)
      std::cerr << fmt::format("  transcriptions with {} utterance(s): {}\n", n,
                               stats.group_sizes[n]);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const contrastive::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
