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

#ifndef CONTRASTIVE_SCORING_HPP_
#define CONTRASTIVE_SCORING_HPP_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "contrastive/corpus.hpp"
#include "contrastive/partition.hpp"

namespace contrastive {

/// Token log-probabilities (natural log) of one candidate under one system.
struct ScoreRecord {
  std::string system_id;
  std::string set_id;
  std::string candidate_id;
  std::vector<double> token_logprobs;
  std::optional<std::vector<std::string>> token_texts;
};

/// Contents of one score wire file. Header records are kept verbatim as
/// serialized JSON, keyed by their system_id ("" when absent).
struct ScoreFile {
  std::map<std::string, std::string> headers;
  std::vector<ScoreRecord> records;

  std::vector<std::string> systems() const;
};

/// Log-probabilities may exceed zero by at most this much.
inline constexpr double kLogprobSlack = 1e-6;

ScoreFile read_score_file(std::istream& in);
void write_score_record(const ScoreRecord& record, std::ostream& out);

/// Arithmetic mean of the token log-probabilities. Throws on an empty list or
/// a non-finite element. Summation is compensated.
double normalized_score(std::span<const double> token_logprobs);

/// Records of one system indexed by (set_id, candidate_id).
class SystemScores {
 public:
  /// Throws on duplicate (set_id, candidate_id).
  SystemScores(std::string system_id, std::span<const ScoreRecord> records);

  const std::string& system_id() const { return system_id_; }
  const ScoreRecord* find(std::string_view set_id,
                          std::string_view candidate_id) const;
  /// Candidate ids with a record for this set, sorted.
  std::vector<std::string> candidates_of(std::string_view set_id) const;
  std::vector<std::string> set_ids() const;

 private:
  std::string system_id_;
  std::map<std::string, std::map<std::string, const ScoreRecord*, std::less<>>,
           std::less<>>
      by_set_;
};

struct CandidateScore {
  std::string candidate_id;
  Intent intent;
  double score;
};

struct SetOutcome {
  std::string set_id;
  std::string system_id;
  std::vector<CandidateScore> scores;  // gold first, then alternatives
  std::string predicted_candidate_id;
  std::string gold_candidate_id;
  bool correct = false;
  Intent gold_intent = Intent::kStatement;
  Intent predicted_intent = Intent::kStatement;
  Ambiguity ambiguity = Ambiguity::kUnambiguous;
  std::size_t candidate_count = 1;

  bool singleton() const { return candidate_count == 1; }
};

/// Ranks the candidates of one set. The gold wins only with a strictly
/// greater score than every alternative; otherwise the maximal alternative
/// with the smallest Intent is predicted. Singleton sets are correct.
SetOutcome evaluate_set(const ContrastiveSet& set, const SystemScores& scores,
                        const IntentPunctuationMap& map);

struct EvaluateOptions {
  IntentPunctuationMap punct_map;
  std::set<std::string, std::less<>> skip_sets;
  unsigned jobs = 1;
};

/// Evaluates every non-skipped set; outcomes are sorted by set_id. Missing
/// records are reported all at once, as are records naming unknown
/// candidates.
std::vector<SetOutcome> evaluate_system(const std::vector<ContrastiveSet>& sets,
                                        const SystemScores& scores,
                                        const EvaluateOptions& options = {});

void write_outcome(const SetOutcome& outcome, std::ostream& out);
std::vector<SetOutcome> read_outcomes(std::istream& in);

}  // namespace contrastive

#endif  // CONTRASTIVE_SCORING_HPP_
