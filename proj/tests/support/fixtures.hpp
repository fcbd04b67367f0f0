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

#ifndef CONTRASTIVE_TESTS_FIXTURES_HPP_
#define CONTRASTIVE_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "contrastive/corpus.hpp"
#include "contrastive/scoring.hpp"

namespace contrastive::testing {

/// One transcription read three ways: statement, yes/no and wh-question.
Corpus nuga_corpus();

/// Random corpus: group sizes 1..4, distinct intents per group,
/// every intent and particle represented (n_transcriptions >= 7).
Corpus synthetic_corpus(std::uint64_t seed, std::size_t n_transcriptions);

/// Corpus whose transcriptions have exactly the given group sizes; intents
/// are drawn from `pool` in order.
Corpus corpus_with_group_sizes(const std::vector<std::size_t>& sizes,
                               const std::vector<Intent>& pool);

enum class MockPolicy { kOracle, kAdversarial, kSeededRandom };

/// Score records for every candidate of every set. Oracle gives the gold the
/// strictly highest mean, adversarial the strictly lowest; seeded_random
/// draws token log-probabilities i.i.d.
std::vector<ScoreRecord> mock_scores(const std::vector<ContrastiveSet>& sets,
                                     MockPolicy policy,
                                     const std::string& system_id,
                                     std::uint64_t seed = 7);

/// Same records with a header line, in the wire format.
std::string mock_score_file(const std::vector<ContrastiveSet>& sets,
                            MockPolicy policy, const std::string& system_id,
                            const std::string& kind = "mock",
                            const std::string& model_size = "",
                            std::uint64_t seed = 7);

std::string serialize(const Corpus& corpus);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

}  // namespace contrastive::testing

#endif  // CONTRASTIVE_TESTS_FIXTURES_HPP_
