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

#include "contrastive/intent.hpp"

namespace contrastive {
namespace {

constexpr std::array<std::string_view, kNumIntents> kIntentLabels = {
    "statement",           "yes_no_question", "wh_question",
    "rhetorical_question", "command",         "request",
    "rhetorical_command",
};

constexpr std::array<std::string_view, kNumIntents> kIntentShort = {
    "S", "YN", "WH", "RQ", "C", "R", "RC",
};

constexpr std::array<std::string_view, kNumWhParticles> kParticleLabels = {
    "who", "what", "where", "when", "how", "how_many",
};

constexpr std::array<std::string_view, kNumWhParticles> kParticleHangul = {
    "누구", "뭐", "어디", "언제", "어떻게", "몇",
};

}  // namespace

std::string_view label(Intent i) { return kIntentLabels[index(i)]; }
std::string_view short_label(Intent i) { return kIntentShort[index(i)]; }
std::string_view label(WhParticle p) { return kParticleLabels[index(p)]; }
std::string_view hangul(WhParticle p) { return kParticleHangul[index(p)]; }

std::optional<Intent> parse_intent(std::string_view s) {
  for (Intent i : kAllIntents)
    if (label(i) == s) return i;
  return std::nullopt;
}

std::optional<WhParticle> parse_wh_particle(std::string_view s) {
  for (WhParticle p : kAllWhParticles)
    if (label(p) == s) return p;
  return std::nullopt;
}

}  // namespace contrastive
