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

#ifndef CONTRASTIVE_CORPUS_HPP_
#define CONTRASTIVE_CORPUS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "contrastive/intent.hpp"

namespace contrastive {

struct Transcription {
  std::string transcription_id;
  std::string text;  // NFC

  bool operator==(const Transcription&) const = default;
};

struct UtteranceRecord {
  std::string utterance_id;
  std::string transcription_id;
  std::optional<std::string> audio_ref;
  std::optional<std::string> speaker;
  Intent intent = Intent::kStatement;
  WhParticle wh_particle = WhParticle::kWho;
  std::string gold_translation;

  bool operator==(const UtteranceRecord&) const = default;
};

/// Immutable collection of transcriptions and utterances. Transcriptions are
/// kept in order of first appearance, utterances in input order. The
/// constructor indexes but does not validate; see validate_corpus.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Transcription> transcriptions,
         std::vector<UtteranceRecord> utterances);

  const std::vector<Transcription>& transcriptions() const {
    return transcriptions_;
  }
  const std::vector<UtteranceRecord>& utterances() const { return utterances_; }

  const Transcription* find_transcription(std::string_view id) const;
  const UtteranceRecord* find_utterance(std::string_view id) const;

  /// Utterance indices grouped by transcription, in utterance order.
  const std::vector<std::size_t>& utterances_of(std::string_view id) const;

  bool operator==(const Corpus& o) const {
    return transcriptions_ == o.transcriptions_ && utterances_ == o.utterances_;
  }

 private:
  std::vector<Transcription> transcriptions_;
  std::vector<UtteranceRecord> utterances_;
  std::unordered_map<std::string, std::size_t> transcription_index_;
  std::unordered_map<std::string, std::size_t> utterance_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> groups_;
};

enum class CorpusFormat {
  kJsonl,  // one JSON object per line
  kTsv,    // header row with the field names, tab-separated values
};

std::optional<CorpusFormat> parse_corpus_format(std::string_view tag);

/// Parses records without checking cross-record invariants. Throws
/// contrastive::Error for malformed input (line number and field reported),
/// unknown labels and inconsistent transcription texts.
Corpus read_corpus(std::istream& in, CorpusFormat format = CorpusFormat::kJsonl);

/// read_corpus followed by validation; the first violation is thrown.
Corpus ingest_corpus(std::istream& in,
                     CorpusFormat format = CorpusFormat::kJsonl);

/// Writes the corpus in the line-delimited JSON format, one utterance per
/// line, keys in a fixed order.
void serialize_corpus(const Corpus& corpus, std::ostream& out);

struct Violation {
  enum class Kind {
    kDuplicateUtteranceId,
    kDuplicateTranscriptionId,
    kDuplicateTranscriptionIntent,
    kEmptyTranscriptionText,
    kEmptyTranslation,
    kUnknownTranscription,
    kNotNfc,
    kTooManyUtterances,
  };
  Kind kind;
  std::vector<std::string> record_ids;
  std::string message;
};

std::string_view label(Violation::Kind k);

/// Every invariant violation in the corpus; empty iff the corpus is valid.
std::vector<Violation> validate_corpus(const Corpus& corpus);

struct CorpusStats {
  std::array<std::size_t, kNumIntents> per_intent{};
  std::array<std::size_t, kNumWhParticles> per_particle{};
  std::size_t total_utterances = 0;
  std::size_t distinct_transcriptions = 0;
  /// Histogram of utterances per transcription, index = group size (0..4+).
  std::vector<std::size_t> group_sizes;
};

CorpusStats corpus_stats(const Corpus& corpus);

struct Candidate {
  std::string candidate_id;  // equals source_utterance_id
  std::string translation_text;
  Intent intent = Intent::kStatement;
  std::string source_utterance_id;
};

/// A gold candidate and the translations of the other utterances sharing its
/// transcription. set_id equals the gold utterance id.
struct ContrastiveSet {
  std::string set_id;
  std::string gold_utterance_id;
  std::string transcription_id;
  Candidate gold;
  std::vector<Candidate> alternatives;  // ordered by Intent

  std::size_t size() const { return 1 + alternatives.size(); }
  bool singleton() const { return alternatives.empty(); }
};

inline constexpr std::size_t kMaxCandidatesPerSet = 4;

/// One set per utterance, in utterance order.
std::vector<ContrastiveSet> build_contrastive_sets(const Corpus& corpus);

/// Hex SHA-256 of a byte string; used to fingerprint corpus files.
std::string content_sha256(std::string_view bytes);

}  // namespace contrastive

#endif  // CONTRASTIVE_CORPUS_HPP_
