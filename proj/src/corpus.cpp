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

#include "contrastive/corpus.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include <openssl/evp.h>

#include "contrastive/error.hpp"
#include "contrastive/text.hpp"
#include "json.hpp"

namespace contrastive {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kModule = "corpus";

constexpr std::array<std::string_view, 6> kRequiredFields = {
    "utterance_id", "transcription_id", "transcription_text",
    "intent",       "wh_particle",      "gold_translation",
};
constexpr std::array<std::string_view, 2> kOptionalFields = {"audio_ref",
                                                             "speaker"};

[[noreturn]] void fail_at(std::size_t line, std::string_view field,
                          const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line;
  if (!field.empty()) msg << ": field '" << field << "'";
  msg << ": " << what;
  throw Error(kModule, msg.str());
}

bool known_field(std::string_view name) {
  return std::find(kRequiredFields.begin(), kRequiredFields.end(), name) !=
             kRequiredFields.end() ||
         std::find(kOptionalFields.begin(), kOptionalFields.end(), name) !=
             kOptionalFields.end();
}

// Field values of one record before typing. Optional fields hold nullopt
// when null or absent.
struct RawRecord {
  std::map<std::string, std::optional<std::string>, std::less<>> fields;
};

RawRecord raw_from_json(std::string_view line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception& e) {
    fail_at(line_no, {}, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) fail_at(line_no, {}, "record is not a JSON object");
  RawRecord raw;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known_field(it.key())) fail_at(line_no, it.key(), "unknown field");
    if (it->is_null()) {
      raw.fields[it.key()] = std::nullopt;
    } else if (it->is_string()) {
      raw.fields[it.key()] = it->get<std::string>();
    } else {
      fail_at(line_no, it.key(), "expected a string");
    }
  }
  return raw;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

struct Builder {
  std::vector<Transcription> transcriptions;
  std::vector<UtteranceRecord> utterances;
  std::unordered_map<std::string, std::size_t> transcription_index;

  void add(const RawRecord& raw, std::size_t line_no) {
    auto required = [&](std::string_view name) -> const std::string& {
      auto it = raw.fields.find(name);
      if (it == raw.fields.end()) fail_at(line_no, name, "missing");
      if (!it->second) fail_at(line_no, name, "must not be null");
      return *it->second;
    };
    auto optional = [&](std::string_view name) -> std::optional<std::string> {
      auto it = raw.fields.find(name);
      if (it == raw.fields.end()) return std::nullopt;
      return it->second;
    };
    for (std::string_view name : kRequiredFields) {
      const std::string& v = required(name);
      if (!text::is_valid_utf8(v)) fail_at(line_no, name, "invalid UTF-8");
    }
    for (std::string_view name : kOptionalFields) {
      auto v = optional(name);
      if (v && !text::is_valid_utf8(*v)) fail_at(line_no, name, "invalid UTF-8");
    }

    UtteranceRecord u;
    u.utterance_id = required("utterance_id");
    if (u.utterance_id.empty()) fail_at(line_no, "utterance_id", "empty");
    u.transcription_id = required("transcription_id");
    if (u.transcription_id.empty())
      fail_at(line_no, "transcription_id", "empty");
    const auto intent = parse_intent(required("intent"));
    if (!intent)
      fail_at(line_no, "intent",
              "unknown intent label '" + required("intent") + "'");
    u.intent = *intent;
    const auto particle = parse_wh_particle(required("wh_particle"));
    if (!particle)
      fail_at(line_no, "wh_particle",
              "unknown wh-particle label '" + required("wh_particle") + "'");
    u.wh_particle = *particle;
    u.gold_translation = text::to_nfc(required("gold_translation"));
    u.audio_ref = optional("audio_ref");
    u.speaker = optional("speaker");

    std::string text = text::to_nfc(required("transcription_text"));
    auto [it, inserted] =
        transcription_index.try_emplace(u.transcription_id, transcriptions.size());
    if (inserted) {
      transcriptions.push_back({u.transcription_id, std::move(text)});
    } else if (transcriptions[it->second].text != text) {
      fail_at(line_no, "transcription_text",
              "differs from earlier text of transcription '" +
                  u.transcription_id + "'");
    }
    utterances.push_back(std::move(u));
  }
};

}  // namespace

Corpus::Corpus(std::vector<Transcription> transcriptions,
               std::vector<UtteranceRecord> utterances)
    : transcriptions_(std::move(transcriptions)),
      utterances_(std::move(utterances)) {
  for (std::size_t i = 0; i < transcriptions_.size(); ++i)
    transcription_index_.try_emplace(transcriptions_[i].transcription_id, i);
  for (std::size_t i = 0; i < utterances_.size(); ++i) {
    utterance_index_.try_emplace(utterances_[i].utterance_id, i);
    groups_[utterances_[i].transcription_id].push_back(i);
  }
}

const Transcription* Corpus::find_transcription(std::string_view id) const {
  auto it = transcription_index_.find(std::string(id));
  return it == transcription_index_.end() ? nullptr
                                          : &transcriptions_[it->second];
}

const UtteranceRecord* Corpus::find_utterance(std::string_view id) const {
  auto it = utterance_index_.find(std::string(id));
  return it == utterance_index_.end() ? nullptr : &utterances_[it->second];
}

const std::vector<std::size_t>& Corpus::utterances_of(
    std::string_view id) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = groups_.find(std::string(id));
  return it == groups_.end() ? kEmpty : it->second;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view tag) {
  if (tag == "jsonl") return CorpusFormat::kJsonl;
  if (tag == "tsv") return CorpusFormat::kTsv;
  return std::nullopt;
}

Corpus read_corpus(std::istream& in, CorpusFormat format) {
  Builder builder;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> tsv_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!text::is_valid_utf8(line)) fail_at(line_no, {}, "invalid UTF-8");
    if (text::trim(line).empty()) continue;

    if (format == CorpusFormat::kJsonl) {
      builder.add(raw_from_json(line, line_no), line_no);
      continue;
    }
    const auto cells = split_tabs(line);
    if (tsv_header.empty()) {
      for (std::string_view c : cells) {
        if (!known_field(c)) fail_at(line_no, c, "unknown column");
        if (std::find(tsv_header.begin(), tsv_header.end(), c) !=
            tsv_header.end())
          fail_at(line_no, c, "duplicate column");
        tsv_header.emplace_back(c);
      }
      continue;
    }
    if (cells.size() != tsv_header.size())
      fail_at(line_no, {},
              "expected " + std::to_string(tsv_header.size()) +
                  " tab-separated cells, got " + std::to_string(cells.size()));
    RawRecord raw;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const bool opt = std::find(kOptionalFields.begin(), kOptionalFields.end(),
                                 tsv_header[i]) != kOptionalFields.end();
      if (opt && cells[i].empty())
        raw.fields[tsv_header[i]] = std::nullopt;
      else
        raw.fields[tsv_header[i]] = std::string(cells[i]);
    }
    builder.add(raw, line_no);
  }
  if (in.bad()) throw Error(kModule, "read error");
  return Corpus(std::move(builder.transcriptions),
                std::move(builder.utterances));
}

Corpus ingest_corpus(std::istream& in, CorpusFormat format) {
  Corpus corpus = read_corpus(in, format);
  const auto violations = validate_corpus(corpus);
  if (!violations.empty()) {
    std::string msg = violations.front().message;
    if (violations.size() > 1)
      msg += " (and " + std::to_string(violations.size() - 1) +
             " more violation(s))";
    throw Error(kModule, msg);
  }
  return corpus;
}

void serialize_corpus(const Corpus& corpus, std::ostream& out) {
  for (const UtteranceRecord& u : corpus.utterances()) {
    const Transcription* t = corpus.find_transcription(u.transcription_id);
    ordered_json obj;
    obj["utterance_id"] = u.utterance_id;
    obj["transcription_id"] = u.transcription_id;
    obj["transcription_text"] = t ? t->text : std::string();
    obj["intent"] = label(u.intent);
    obj["wh_particle"] = label(u.wh_particle);
    obj["gold_translation"] = u.gold_translation;
    if (u.audio_ref) obj["audio_ref"] = *u.audio_ref;
    if (u.speaker) obj["speaker"] = *u.speaker;
    out << obj.dump() << '\n';
  }
}

std::string_view label(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::kDuplicateUtteranceId:
      return "duplicate_utterance_id";
    case Violation::Kind::kDuplicateTranscriptionId:
      return "duplicate_transcription_id";
    case Violation::Kind::kDuplicateTranscriptionIntent:
      return "duplicate_transcription_intent";
    case Violation::Kind::kEmptyTranscriptionText:
      return "empty_transcription_text";
    case Violation::Kind::kEmptyTranslation:
      return "empty_translation";
    case Violation::Kind::kUnknownTranscription:
      return "unknown_transcription";
    case Violation::Kind::kNotNfc:
      return "not_nfc";
    case Violation::Kind::kTooManyUtterances:
      return "too_many_utterances";
  }
  return "unknown";
}

std::vector<Violation> validate_corpus(const Corpus& corpus) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;

  std::map<std::string, std::size_t> seen_transcriptions;
  for (const Transcription& t : corpus.transcriptions()) {
    if (++seen_transcriptions[t.transcription_id] == 2)
      out.push_back({Kind::kDuplicateTranscriptionId,
                     {t.transcription_id},
                     "duplicate transcription_id '" + t.transcription_id + "'"});
    if (text::trim(t.text).empty())
      out.push_back({Kind::kEmptyTranscriptionText,
                     {t.transcription_id},
                     "transcription '" + t.transcription_id + "' has empty text"});
    else if (!text::is_nfc(t.text))
      out.push_back({Kind::kNotNfc,
                     {t.transcription_id},
                     "transcription '" + t.transcription_id + "' is not NFC"});
  }

  std::map<std::string, std::size_t> seen_utterances;
  std::map<std::pair<std::string, Intent>, std::vector<std::string>> by_pair;
  for (const UtteranceRecord& u : corpus.utterances()) {
    if (++seen_utterances[u.utterance_id] == 2)
      out.push_back({Kind::kDuplicateUtteranceId,
                     {u.utterance_id},
                     "duplicate utterance_id '" + u.utterance_id + "'"});
    if (text::trim(u.gold_translation).empty())
      out.push_back({Kind::kEmptyTranslation,
                     {u.utterance_id},
                     "utterance '" + u.utterance_id + "' has empty gold_translation"});
    if (corpus.find_transcription(u.transcription_id) == nullptr)
      out.push_back({Kind::kUnknownTranscription,
                     {u.utterance_id, u.transcription_id},
                     "utterance '" + u.utterance_id +
                         "' references unknown transcription '" +
                         u.transcription_id + "'"});
    by_pair[{u.transcription_id, u.intent}].push_back(u.utterance_id);
  }

  for (const auto& [key, ids] : by_pair) {
    if (ids.size() < 2) continue;
    std::string msg = "duplicate (transcription_id, intent) = ('" + key.first +
                      "', " + std::string(label(key.second)) + ") on utterances";
    for (const auto& id : ids) msg += " '" + id + "'";
    out.push_back({Kind::kDuplicateTranscriptionIntent, ids, msg});
  }

  for (const Transcription& t : corpus.transcriptions()) {
    const auto& group = corpus.utterances_of(t.transcription_id);
    if (group.size() > kMaxCandidatesPerSet)
      out.push_back({Kind::kTooManyUtterances,
                     {t.transcription_id},
                     "transcription '" + t.transcription_id + "' has " +
                         std::to_string(group.size()) + " utterances (max " +
                         std::to_string(kMaxCandidatesPerSet) + ")"});
  }
  return out;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  for (const UtteranceRecord& u : corpus.utterances()) {
    ++stats.per_intent[index(u.intent)];
    ++stats.per_particle[index(u.wh_particle)];
  }
  stats.total_utterances = corpus.utterances().size();
  stats.distinct_transcriptions = corpus.transcriptions().size();
  for (const Transcription& t : corpus.transcriptions()) {
    const std::size_t n = corpus.utterances_of(t.transcription_id).size();
    if (stats.group_sizes.size() <= n) stats.group_sizes.resize(n + 1, 0);
    ++stats.group_sizes[n];
  }
  return stats;
}

std::vector<ContrastiveSet> build_contrastive_sets(const Corpus& corpus) {
  const auto& utts = corpus.utterances();
  auto candidate_of = [](const UtteranceRecord& u) {
    return Candidate{u.utterance_id, u.gold_translation, u.intent,
                     u.utterance_id};
  };
  std::vector<ContrastiveSet> sets;
  sets.reserve(utts.size());
  for (const UtteranceRecord& gold : utts) {
    ContrastiveSet set;
    set.set_id = gold.utterance_id;
    set.gold_utterance_id = gold.utterance_id;
    set.transcription_id = gold.transcription_id;
    set.gold = candidate_of(gold);
    for (std::size_t idx : corpus.utterances_of(gold.transcription_id)) {
      if (utts[idx].utterance_id == gold.utterance_id) continue;
      set.alternatives.push_back(candidate_of(utts[idx]));
    }
    std::stable_sort(set.alternatives.begin(), set.alternatives.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return index(a.intent) < index(b.intent);
                     });
    sets.push_back(std::move(set));
  }
  return sets;
}

std::string content_sha256(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw Error(kModule, "SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace contrastive
