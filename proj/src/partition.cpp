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

#include "contrastive/partition.hpp"

#include <algorithm>

#include "contrastive/error.hpp"
#include "contrastive/text.hpp"

namespace contrastive {
namespace {

constexpr std::string_view kModule = "partition";
constexpr std::string_view kFullwidthQuestion = "\xEF\xBC\x9F";  // U+FF1F

bool ends_with_question(std::string_view s) {
  s = text::trim_right(s);
  return s.ends_with('?') || s.ends_with(kFullwidthQuestion);
}

}  // namespace

std::string_view label(PunctClass c) {
  return c == PunctClass::kQuestion ? "question" : "non_question";
}

std::optional<PunctClass> parse_punct_class(std::string_view s) {
  if (s == "question") return PunctClass::kQuestion;
  if (s == "non_question") return PunctClass::kNonQuestion;
  return std::nullopt;
}

std::string_view label(Ambiguity a) {
  return a == Ambiguity::kAmbiguous ? "ambiguous" : "unambiguous";
}

IntentPunctuationMap::IntentPunctuationMap() {
  for (Intent i : kAllIntents) {
    const bool question = i == Intent::kYesNoQuestion ||
                          i == Intent::kWhQuestion ||
                          i == Intent::kRhetoricalQuestion;
    classes_[index(i)] = question ? PunctClass::kQuestion : PunctClass::kNonQuestion;
  }
}

std::string IntentPunctuationMap::to_string() const {
  std::string out;
  for (Intent i : kAllIntents) {
    if (!out.empty()) out += ',';
    out += label(i);
    out += '=';
    out += label((*this)[i]);
  }
  return out;
}

IntentPunctuationMap load_punctuation_map(std::istream& in) {
  IntentPunctuationMap map;
  std::array<bool, kNumIntents> seen{};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == '=' || c == ':' || c == ',' || c == '\t') c = ' ';
    std::string_view rest = text::trim(line);
    if (rest.empty()) continue;
    const std::size_t sp = rest.find(' ');
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (sp == std::string_view::npos)
      throw Error(kModule, where + "expected '<intent> <class>'");
    const std::string_view intent_label = rest.substr(0, sp);
    const std::string_view class_label = text::trim(rest.substr(sp + 1));
    const auto intent = parse_intent(intent_label);
    if (!intent)
      throw Error(kModule,
                  where + "unknown intent label '" + std::string(intent_label) + "'");
    const auto cls = parse_punct_class(class_label);
    if (!cls)
      throw Error(kModule, where + "unknown punctuation class '" +
                               std::string(class_label) + "'");
    if (seen[index(*intent)])
      throw Error(kModule, where + "intent '" + std::string(intent_label) +
                               "' mapped twice");
    seen[index(*intent)] = true;
    map.set(*intent, *cls);
  }
  return map;
}

std::string augment_transcription(std::string_view text, Intent intent,
                                  const IntentPunctuationMap& map) {
  if (text::trim(text).empty())
    throw Error(kModule, "cannot augment an empty transcription");
  if (map[intent] != PunctClass::kQuestion || ends_with_question(text))
    return std::string(text);
  std::string out(text::trim_right(text));
  out += '?';
  return out;
}

std::string strip_question_marks(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '?') {
      ++i;
    } else if (text.substr(i).starts_with(kFullwidthQuestion)) {
      i += kFullwidthQuestion.size();
    } else {
      out += text[i++];
    }
  }
  out.resize(text::trim_right(out).size());
  return out;
}

Ambiguity classify_set(const ContrastiveSet& set,
                       const IntentPunctuationMap& map) {
  const PunctClass gold = map[set.gold.intent];
  const bool shared = std::any_of(
      set.alternatives.begin(), set.alternatives.end(),
      [&](const Candidate& c) { return map[c.intent] == gold; });
  return shared ? Ambiguity::kAmbiguous : Ambiguity::kUnambiguous;
}

PartitionCounts count_partitions(const std::vector<ContrastiveSet>& sets,
                                 const IntentPunctuationMap& map) {
  PartitionCounts counts;
  for (const ContrastiveSet& s : sets) {
    if (classify_set(s, map) == Ambiguity::kAmbiguous) {
      ++counts.ambiguous;
      ++counts.ambiguous_by_gold[index(s.gold.intent)];
    } else {
      ++counts.unambiguous;
      ++counts.unambiguous_by_gold[index(s.gold.intent)];
    }
  }
  return counts;
}

std::vector<IntentPunctuationMap> reconcile_maps(
    const std::vector<ContrastiveSet>& sets, std::size_t target_ambiguous,
    std::size_t target_unambiguous) {
  constexpr std::array<Intent, 4> kMinor = {
      Intent::kRhetoricalQuestion, Intent::kCommand, Intent::kRequest,
      Intent::kRhetoricalCommand};
  const IntentPunctuationMap default_map;
  std::vector<IntentPunctuationMap> candidates{default_map};
  for (unsigned mask = 0; mask < (1u << kMinor.size()); ++mask) {
    IntentPunctuationMap m;
    for (std::size_t b = 0; b < kMinor.size(); ++b)
      m.set(kMinor[b], (mask >> b) & 1u ? PunctClass::kQuestion
                                        : PunctClass::kNonQuestion);
    if (m != default_map) candidates.push_back(m);
  }
  std::vector<IntentPunctuationMap> out;
  for (const auto& m : candidates) {
    const PartitionCounts c = count_partitions(sets, m);
    if (c.ambiguous == target_ambiguous && c.unambiguous == target_unambiguous)
      out.push_back(m);
  }
  return out;
}

}  // namespace contrastive
