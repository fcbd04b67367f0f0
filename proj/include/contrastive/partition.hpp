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

#ifndef CONTRASTIVE_PARTITION_HPP_
#define CONTRASTIVE_PARTITION_HPP_

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contrastive/corpus.hpp"
#include "contrastive/intent.hpp"

namespace contrastive {

enum class PunctClass { kQuestion, kNonQuestion };

std::string_view label(PunctClass c);
std::optional<PunctClass> parse_punct_class(std::string_view s);

/// Total mapping from intent to terminal punctuation class.
class IntentPunctuationMap {
 public:
  /// Questions (yes/no, wh, rhetorical) map to kQuestion, the rest to
  /// kNonQuestion.
  IntentPunctuationMap();
  explicit IntentPunctuationMap(std::array<PunctClass, kNumIntents> classes)
      : classes_(classes) {}

  PunctClass operator[](Intent i) const { return classes_[index(i)]; }
  void set(Intent i, PunctClass c) { classes_[index(i)] = c; }

  /// "intent=class" pairs joined by commas, in Intent order.
  std::string to_string() const;

  bool operator==(const IntentPunctuationMap&) const = default;

 private:
  std::array<PunctClass, kNumIntents> classes_;
};

/// Reads "intent-label <ws or = or :> class-label" lines; '#' starts a
/// comment. Entries override the default map; unknown labels and duplicate
/// intents are errors.
IntentPunctuationMap load_punctuation_map(std::istream& in);

inline PunctClass punctuation_class(Intent intent,
                                    const IntentPunctuationMap& map) {
  return map[intent];
}

/// Appends "?" when the intent is question-class and the text does not end
/// with one already. Throws on empty text.
std::string augment_transcription(std::string_view text, Intent intent,
                                  const IntentPunctuationMap& map);

/// Removes every ASCII '?' and fullwidth U+FF1F, then trims trailing
/// whitespace.
std::string strip_question_marks(std::string_view text);

enum class Ambiguity { kAmbiguous, kUnambiguous };

std::string_view label(Ambiguity a);

/// Unambiguous iff no alternative shares the gold's punctuation class.
Ambiguity classify_set(const ContrastiveSet& set,
                       const IntentPunctuationMap& map);

struct PartitionCounts {
  std::size_t ambiguous = 0;
  std::size_t unambiguous = 0;
  std::array<std::size_t, kNumIntents> ambiguous_by_gold{};
  std::array<std::size_t, kNumIntents> unambiguous_by_gold{};

  std::size_t total() const { return ambiguous + unambiguous; }
};

PartitionCounts count_partitions(const std::vector<ContrastiveSet>& sets,
                                 const IntentPunctuationMap& map);

/// Enumerates the 16 maps that keep the major intents at their default class
/// and assign the four minor intents freely, returning those whose partition
/// counts equal the targets. The default map, when it matches, comes first.
std::vector<IntentPunctuationMap> reconcile_maps(
    const std::vector<ContrastiveSet>& sets, std::size_t target_ambiguous,
    std::size_t target_unambiguous);

}  // namespace contrastive

#endif  // CONTRASTIVE_PARTITION_HPP_
