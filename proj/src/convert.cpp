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

#include "contrastive/convert.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "contrastive/error.hpp"
#include "contrastive/text.hpp"

namespace contrastive {
namespace {

constexpr std::string_view kModule = "convert";

std::string squash(std::string_view s) {
  std::string out;
  for (char c : text::trim(s)) {
    if (c == ' ' || c == '-' || c == '_' || c == '/' || c == '.') continue;
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

// Splits one record; quoted fields may contain the delimiter and doubled
// quotes. Embedded newlines are not supported.
std::vector<std::string> split_record(std::string_view line, char delim,
                                      bool quoting, std::size_t line_no) {
  std::vector<std::string> out;
  std::string cell;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoting && in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cell += c;
      }
    } else if (quoting && c == '"' && cell.empty()) {
      in_quotes = true;
    } else if (c == delim) {
      out.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  if (in_quotes)
    throw Error(kModule, "line " + std::to_string(line_no) + ": unterminated quote");
  out.push_back(std::move(cell));
  return out;
}

}  // namespace

std::optional<Intent> parse_intent_alias(std::string_view s) {
  static const std::unordered_map<std::string, Intent> kAliases = {
      {"statement", Intent::kStatement},
      {"statements", Intent::kStatement},
      {"s", Intent::kStatement},
      {"yesnoquestion", Intent::kYesNoQuestion},
      {"yesnoq", Intent::kYesNoQuestion},
      {"yn", Intent::kYesNoQuestion},
      {"ynq", Intent::kYesNoQuestion},
      {"whquestion", Intent::kWhQuestion},
      {"whq", Intent::kWhQuestion},
      {"wh", Intent::kWhQuestion},
      {"rhetoricalquestion", Intent::kRhetoricalQuestion},
      {"rhetoricalq", Intent::kRhetoricalQuestion},
      {"rq", Intent::kRhetoricalQuestion},
      {"command", Intent::kCommand},
      {"commands", Intent::kCommand},
      {"c", Intent::kCommand},
      {"request", Intent::kRequest},
      {"requests", Intent::kRequest},
      {"r", Intent::kRequest},
      {"rhetoricalcommand", Intent::kRhetoricalCommand},
      {"rhetoricalc", Intent::kRhetoricalCommand},
      {"rc", Intent::kRhetoricalCommand},
  };
  auto it = kAliases.find(squash(s));
  if (it == kAliases.end()) return std::nullopt;
  return it->second;
}

std::optional<WhParticle> parse_wh_particle_alias(std::string_view s) {
  const std::string key = squash(s);
  for (WhParticle p : kAllWhParticles)
    if (key == squash(label(p)) || key == hangul(p)) return p;
  // 누가 is the nominative form of 누구.
  if (key == "누가") return WhParticle::kWho;
  if (key == "무엇" || key == "뭘") return WhParticle::kWhat;
  return std::nullopt;
}

Corpus convert_delimited(std::istream& in, const ConvertOptions& options) {
  auto column_of = [&](const std::string& field) {
    auto it = options.columns.find(field);
    return it == options.columns.end() ? field : it->second;
  };
  const bool quoting = options.delimiter == ',';

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::unordered_map<std::string, std::size_t> col_index;
  std::vector<Transcription> transcriptions;
  std::vector<UtteranceRecord> utterances;
  std::unordered_map<std::string, std::size_t> id_by_text;
  std::unordered_map<std::string, std::string> text_by_id;
  std::size_t row = 0;

  auto fail = [&](const std::string& what) {
    throw Error(kModule, "line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!text::is_valid_utf8(line)) fail("invalid UTF-8");
    if (text::trim(line).empty()) continue;
    auto cells = split_record(line, options.delimiter, quoting, line_no);
    if (header.empty()) {
      header = std::move(cells);
      for (std::size_t i = 0; i < header.size(); ++i)
        col_index.emplace(std::string(text::trim(header[i])), i);
      for (const char* f : {"transcription_text", "intent", "wh_particle",
                            "gold_translation"})
        if (!col_index.contains(column_of(f)))
          fail("missing column '" + column_of(f) + "' for field '" + f + "'");
      continue;
    }
    if (cells.size() != header.size())
      fail("expected " + std::to_string(header.size()) + " cells, got " +
           std::to_string(cells.size()));
    ++row;
    auto cell = [&](const std::string& field) -> std::optional<std::string> {
      auto it = col_index.find(column_of(field));
      if (it == col_index.end()) return std::nullopt;
      return std::string(text::trim(cells[it->second]));
    };

    UtteranceRecord u;
    const std::string raw_intent = *cell("intent");
    const auto intent = parse_intent_alias(raw_intent);
    if (!intent) fail("unknown intent label '" + raw_intent + "'");
    u.intent = *intent;
    const std::string raw_particle = *cell("wh_particle");
    const auto particle = parse_wh_particle_alias(raw_particle);
    if (!particle) fail("unknown wh-particle label '" + raw_particle + "'");
    u.wh_particle = *particle;
    u.gold_translation = text::to_nfc(*cell("gold_translation"));
    const std::string text = text::to_nfc(*cell("transcription_text"));

    if (auto id = cell("transcription_id"); id && !id->empty()) {
      u.transcription_id = *id;
    } else {
      auto [it, inserted] = id_by_text.try_emplace(text, id_by_text.size() + 1);
      u.transcription_id = "t" + std::to_string(it->second);
    }
    if (auto prev = text_by_id.find(u.transcription_id); prev == text_by_id.end()) {
      text_by_id.emplace(u.transcription_id, text);
      transcriptions.push_back({u.transcription_id, text});
    } else if (prev->second != text) {
      fail("transcription '" + u.transcription_id + "' has a different text");
    }
    if (auto id = cell("utterance_id"); id && !id->empty())
      u.utterance_id = *id;
    else
      u.utterance_id = "u" + std::to_string(row);
    if (auto a = cell("audio_ref"); a && !a->empty()) u.audio_ref = *a;
    if (auto s = cell("speaker"); s && !s->empty()) u.speaker = *s;
    utterances.push_back(std::move(u));
  }

  Corpus corpus(std::move(transcriptions), std::move(utterances));
  const auto violations = validate_corpus(corpus);
  if (!violations.empty()) throw Error(kModule, violations.front().message);
  return corpus;
}

}  // namespace contrastive
