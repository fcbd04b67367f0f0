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

#ifndef CONTRASTIVE_INTENT_HPP_
#define CONTRASTIVE_INTENT_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace contrastive {

/// Utterance intent. The enumerator order is the canonical ordering used for
/// alternatives and for tie-breaking; it also indexes confusion matrices.
enum class Intent : int {
  kStatement = 0,
  kYesNoQuestion,
  kWhQuestion,
  kRhetoricalQuestion,
  kCommand,
  kRequest,
  kRhetoricalCommand,
};

inline constexpr std::size_t kNumIntents = 7;

inline constexpr std::array<Intent, kNumIntents> kAllIntents = {
    Intent::kStatement,          Intent::kYesNoQuestion, Intent::kWhQuestion,
    Intent::kRhetoricalQuestion, Intent::kCommand,       Intent::kRequest,
    Intent::kRhetoricalCommand,
};

/// Wh-particle used by the utterance (surface forms in Hangul).
enum class WhParticle : int {
  kWho = 0,   // 누구
  kWhat,      // 뭐
  kWhere,     // 어디
  kWhen,      // 언제
  kHow,       // 어떻게
  kHowMany,   // 몇
};

inline constexpr std::size_t kNumWhParticles = 6;

inline constexpr std::array<WhParticle, kNumWhParticles> kAllWhParticles = {
    WhParticle::kWho,  WhParticle::kWhat, WhParticle::kWhere,
    WhParticle::kWhen, WhParticle::kHow,  WhParticle::kHowMany,
};

constexpr std::size_t index(Intent i) { return static_cast<std::size_t>(i); }
constexpr std::size_t index(WhParticle p) { return static_cast<std::size_t>(p); }

/// statement, yes/no question and wh-question.
constexpr bool is_major(Intent i) {
  return i == Intent::kStatement || i == Intent::kYesNoQuestion ||
         i == Intent::kWhQuestion;
}

/// Wire label, e.g. "yes_no_question".
std::string_view label(Intent i);
/// Short tag used in tables and plots, e.g. "YN".
std::string_view short_label(Intent i);
std::string_view label(WhParticle p);
std::string_view hangul(WhParticle p);

/// Exact match against the wire labels only.
std::optional<Intent> parse_intent(std::string_view s);
std::optional<WhParticle> parse_wh_particle(std::string_view s);

}  // namespace contrastive

#endif  // CONTRASTIVE_INTENT_HPP_
