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

#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "contrastive/error.hpp"
#include "contrastive/partition.hpp"
#include "support/fixtures.hpp"

namespace contrastive {
namespace {

ContrastiveSet make_set(Intent gold, std::vector<Intent> alts) {
  ContrastiveSet s;
  s.set_id = "s";
  s.gold = {"g", "gold", gold, "g"};
  int k = 0;
  for (Intent i : alts) {
    const std::string id = "a" + std::to_string(k++);
    s.alternatives.push_back({id, "alt", i, id});
  }
  return s;
}

// Character filter written independently of strip_question_marks: decode
// UTF-8 to code points, drop U+003F and U+FF1F, re-encode, trim trailing
// ASCII whitespace.
std::string filter_oracle(const std::string& s) {
  std::u32string cps;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    int len = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : 4;
    char32_t cp = len == 1 ? c : c & (0xFF >> (len + 1));
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (s[i + k] & 0x3F);
    cps.push_back(cp);
    i += len;
  }
  std::erase_if(cps, [](char32_t c) { return c == U'?' || c == U'？'; });
  while (!cps.empty() && (cps.back() == U' ' || cps.back() == U'\t' ||
                          cps.back() == U'\n' || cps.back() == U'\r' ||
                          cps.back() == U'\f' || cps.back() == U'\v'))
    cps.pop_back();
  std::string out;
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

const IntentPunctuationMap kDefault;

TEST(PunctuationClass, DefaultMap) {
  EXPECT_EQ(punctuation_class(Intent::kWhQuestion, kDefault), PunctClass::kQuestion);
  EXPECT_EQ(punctuation_class(Intent::kStatement, kDefault), PunctClass::kNonQuestion);
  EXPECT_EQ(punctuation_class(Intent::kCommand, kDefault), PunctClass::kNonQuestion);
  EXPECT_EQ(punctuation_class(Intent::kYesNoQuestion, kDefault), PunctClass::kQuestion);
  EXPECT_EQ(punctuation_class(Intent::kRhetoricalQuestion, kDefault), PunctClass::kQuestion);
  EXPECT_EQ(punctuation_class(Intent::kRequest, kDefault), PunctClass::kNonQuestion);
  EXPECT_EQ(punctuation_class(Intent::kRhetoricalCommand, kDefault),
            PunctClass::kNonQuestion);
}

TEST(PunctuationMap, LoadOverridesDefault) {
  std::istringstream in(
      "# comment\n"
      "request = question\n"
      "rhetorical_question: non_question\n"
      "\n"
      "command\tquestion  # trailing\n");
  const IntentPunctuationMap m = load_punctuation_map(in);
  EXPECT_EQ(m[Intent::kRequest], PunctClass::kQuestion);
  EXPECT_EQ(m[Intent::kRhetoricalQuestion], PunctClass::kNonQuestion);
  EXPECT_EQ(m[Intent::kCommand], PunctClass::kQuestion);
  EXPECT_EQ(m[Intent::kStatement], PunctClass::kNonQuestion);
  EXPECT_EQ(m[Intent::kWhQuestion], PunctClass::kQuestion);
}

TEST(PunctuationMap, LoadErrors) {
  auto err = [](const std::string& s) -> std::string {
    std::istringstream in(s);
    try {
      load_punctuation_map(in);
    } catch (const Error& e) {
      return e.what();
    }
    return {};
  };
  EXPECT_NE(err("shout question\n").find("line 1: unknown intent label 'shout'"),
            std::string::npos);
  EXPECT_NE(err("statement maybe\n").find("unknown punctuation class"), std::string::npos);
  EXPECT_NE(err("statement question\nstatement non_question\n").find("line 2"),
            std::string::npos);
  EXPECT_NE(err("statement\n").find("expected"), std::string::npos);
}

TEST(PunctuationMap, ToStringListsEveryIntent) {
  EXPECT_EQ(kDefault.to_string(),
            "statement=non_question,yes_no_question=question,wh_question=question,"
            "rhetorical_question=question,command=non_question,request=non_question,"
            "rhetorical_command=non_question");
}

TEST(Augment, Examples) {
  EXPECT_EQ(augment_transcription("누가 가입했대요", Intent::kWhQuestion, kDefault),
            "누가 가입했대요?");
  EXPECT_EQ(augment_transcription("누가 가입했대요", Intent::kStatement, kDefault),
            "누가 가입했대요");
  EXPECT_EQ(augment_transcription("누가 가입했대요?", Intent::kYesNoQuestion, kDefault),
            "누가 가입했대요?");
  EXPECT_EQ(augment_transcription("누가 가입했대요？", Intent::kYesNoQuestion, kDefault),
            "누가 가입했대요？");
  EXPECT_THROW(augment_transcription("", Intent::kWhQuestion, kDefault), Error);
  EXPECT_THROW(augment_transcription("  ", Intent::kStatement, kDefault), Error);
}

TEST(Strip, Examples) {
  EXPECT_EQ(strip_question_marks("누가 가입했대요?"), "누가 가입했대요");
  EXPECT_EQ(strip_question_marks("누가 가입했대요"), "누가 가입했대요");
  EXPECT_EQ(strip_question_marks("누가? 가입했대요?"), "누가 가입했대요");
  EXPECT_EQ(strip_question_marks("누가 가입했대요？ "), "누가 가입했대요");
  EXPECT_EQ(strip_question_marks(""), "");
  EXPECT_EQ(strip_question_marks("???"), "");
}

TEST(Strip, MatchesCharacterFilterOracle) {
  const std::vector<std::string> alphabet = {"누", "가", " ", "?", "？", "요", "a", "\t",
                                             "몇", "!"};
  std::mt19937 rng(11);
  for (int n = 0; n < 2000; ++n) {
    std::string s;
    const int len = static_cast<int>(rng() % 12);
    for (int k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
    EXPECT_EQ(strip_question_marks(s), filter_oracle(s)) << s;
  }
  EXPECT_EQ(filter_oracle("누가? 가입했대요?"), "누가 가입했대요");
}

TEST(AugmentStrip, IdempotenceAndComposition) {
  const std::vector<std::string> texts = {"누가 가입했대요", "뭐 먹었어요 ", "어디 갔어요",
                                          "a", "몇 개"};
  for (const auto& t : texts) {
    EXPECT_EQ(strip_question_marks(strip_question_marks(t + "?")),
              strip_question_marks(t + "?"));
    for (Intent i : kAllIntents) {
      const std::string once = augment_transcription(t, i, kDefault);
      EXPECT_EQ(augment_transcription(once, i, kDefault), once);
      EXPECT_EQ(strip_question_marks(once), strip_question_marks(t));
    }
  }
}

TEST(Classify, NugaExamples) {
  EXPECT_EQ(classify_set(make_set(Intent::kStatement,
                                  {Intent::kYesNoQuestion, Intent::kWhQuestion}),
                         kDefault),
            Ambiguity::kUnambiguous);
  EXPECT_EQ(classify_set(make_set(Intent::kWhQuestion,
                                  {Intent::kStatement, Intent::kYesNoQuestion}),
                         kDefault),
            Ambiguity::kAmbiguous);
  EXPECT_EQ(classify_set(make_set(Intent::kYesNoQuestion, {}), kDefault),
            Ambiguity::kUnambiguous);
}

TEST(Classify, NugaFixture) {
  const auto sets = build_contrastive_sets(testing::nuga_corpus());
  ASSERT_EQ(sets.size(), 3u);
  EXPECT_EQ(classify_set(sets[0], kDefault), Ambiguity::kUnambiguous);  // statement
  EXPECT_EQ(classify_set(sets[1], kDefault), Ambiguity::kAmbiguous);    // yes/no
  EXPECT_EQ(classify_set(sets[2], kDefault), Ambiguity::kAmbiguous);    // wh
}

IntentPunctuationMap random_map(std::mt19937& rng) {
  IntentPunctuationMap m;
  for (Intent i : kAllIntents)
    m.set(i, rng() % 2 ? PunctClass::kQuestion : PunctClass::kNonQuestion);
  return m;
}

TEST(Classify, Properties) {
  std::mt19937 rng(5);
  for (int n = 0; n < 1000; ++n) {
    std::vector<Intent> intents(kAllIntents.begin(), kAllIntents.end());
    std::shuffle(intents.begin(), intents.end(), rng);
    const std::size_t k = rng() % 4;
    ContrastiveSet s = make_set(intents[0], {intents.begin() + 1, intents.begin() + 1 + k});
    const IntentPunctuationMap m = random_map(rng);
    const Ambiguity a = classify_set(s, m);

    // Permutation invariance.
    std::shuffle(s.alternatives.begin(), s.alternatives.end(), rng);
    EXPECT_EQ(classify_set(s, m), a);

    // Depends only on the classes of the intents present.
    IntentPunctuationMap other = random_map(rng);
    other.set(s.gold.intent, m[s.gold.intent]);
    for (const Candidate& c : s.alternatives) other.set(c.intent, m[c.intent]);
    EXPECT_EQ(classify_set(s, other), a);

    // Definition: unambiguous iff the gold's class is unique.
    bool unique = true;
    for (const Candidate& c : s.alternatives) unique = unique && m[c.intent] != m[s.gold.intent];
    EXPECT_EQ(a == Ambiguity::kUnambiguous, unique);
  }
}

TEST(Partition, CountsAreTotal) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto sets = build_contrastive_sets(testing::synthetic_corpus(seed, 40));
    const PartitionCounts c = count_partitions(sets, kDefault);
    EXPECT_EQ(c.total(), sets.size());
    std::size_t by_gold = 0;
    for (Intent i : kAllIntents)
      by_gold += c.ambiguous_by_gold[index(i)] + c.unambiguous_by_gold[index(i)];
    EXPECT_EQ(by_gold, sets.size());
  }
}

TEST(Partition, ReconcileFindsDefaultFirst) {
  const auto sets = build_contrastive_sets(testing::synthetic_corpus(9, 60));
  const PartitionCounts c = count_partitions(sets, kDefault);
  const auto maps = reconcile_maps(sets, c.ambiguous, c.unambiguous);
  ASSERT_FALSE(maps.empty());
  EXPECT_EQ(maps.front(), kDefault);
  for (const auto& m : maps) {
    const PartitionCounts mc = count_partitions(sets, m);
    EXPECT_EQ(mc.ambiguous, c.ambiguous);
    EXPECT_EQ(m[Intent::kStatement], PunctClass::kNonQuestion);
    EXPECT_EQ(m[Intent::kYesNoQuestion], PunctClass::kQuestion);
    EXPECT_EQ(m[Intent::kWhQuestion], PunctClass::kQuestion);
  }
  EXPECT_TRUE(reconcile_maps(sets, sets.size() + 1, 0).empty());
}

TEST(Partition, ReconcileRecoversANonDefaultMap) {
  IntentPunctuationMap target;
  target.set(Intent::kRequest, PunctClass::kQuestion);
  target.set(Intent::kRhetoricalQuestion, PunctClass::kNonQuestion);
  const auto sets = build_contrastive_sets(testing::synthetic_corpus(21, 80));
  const PartitionCounts c = count_partitions(sets, target);
  const auto maps = reconcile_maps(sets, c.ambiguous, c.unambiguous);
  EXPECT_NE(std::find(maps.begin(), maps.end(), target), maps.end());
}

}  // namespace
}  // namespace contrastive
