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

#include "contrastive/metrics.hpp"

#include <numeric>

#include "contrastive/error.hpp"

namespace contrastive {
namespace {

constexpr std::string_view kModule = "metrics";

// lcm(1, 2, 3, 4): every per-set contribution 1/k is an integer multiple of
// 1/12 for k <= 4.
constexpr std::int64_t kUnit = 12;

Ratio reduced(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? Ratio{num / g, den / g} : Ratio{num, den};
}

bool partition_matches(Ambiguity a, Partition p) {
  switch (p) {
    case Partition::kAll:
      return true;
    case Partition::kAmbiguous:
      return a == Ambiguity::kAmbiguous;
    case Partition::kUnambiguous:
      return a == Ambiguity::kUnambiguous;
  }
  return false;
}

std::int64_t units_per_candidate(std::size_t k) {
  if (k == 0 || kUnit % static_cast<std::int64_t>(k) != 0)
    throw Error(kModule, "set with " + std::to_string(k) +
                             " candidates is outside the supported 1..4");
  return kUnit / static_cast<std::int64_t>(k);
}

// Contribution of one set, in units of 1/12.
std::int64_t pure_units(std::size_t k) { return units_per_candidate(k); }

std::int64_t biased_units(std::size_t k, bool has_wh, bool gold_is_wh) {
  if (has_wh) return gold_is_wh ? kUnit : 0;
  return units_per_candidate(k);
}

BaselineResult finish(BaselineKind kind, const Selection& sel,
                      std::int64_t units, std::size_t n) {
  if (n == 0)
    throw Error(kModule, std::string("no sets selected for the ") +
                             std::string(label(kind)) + " baseline (partition " +
                             std::string(label(sel.partition)) + ")");
  BaselineResult r;
  r.expected = reduced(units, kUnit * static_cast<std::int64_t>(n));
  r.kind = kind;
  r.selection = sel;
  r.sets = n;
  return r;
}

template <typename Contribution>
BaselineResult over_sets(const std::vector<ContrastiveSet>& sets,
                         const IntentPunctuationMap& map, const Selection& sel,
                         BaselineKind kind, Contribution contribution) {
  std::int64_t units = 0;
  std::size_t n = 0;
  for (const ContrastiveSet& s : sets) {
    if (!selected(s, classify_set(s, map), sel)) continue;
    units += contribution(s);
    ++n;
  }
  return finish(kind, sel, units, n);
}

template <typename Contribution>
BaselineResult over_outcomes(const std::vector<SetOutcome>& outcomes,
                             const Selection& sel, BaselineKind kind,
                             Contribution contribution) {
  std::int64_t units = 0;
  std::size_t n = 0;
  for (const SetOutcome& o : outcomes) {
    if (!selected(o, sel)) continue;
    units += contribution(o);
    ++n;
  }
  return finish(kind, sel, units, n);
}

}  // namespace

std::string_view label(Partition p) {
  switch (p) {
    case Partition::kAll:
      return "all";
    case Partition::kAmbiguous:
      return "ambiguous";
    case Partition::kUnambiguous:
      return "unambiguous";
  }
  return "all";
}

std::optional<Partition> parse_partition(std::string_view s) {
  for (Partition p : kAllPartitions)
    if (label(p) == s) return p;
  return std::nullopt;
}

std::string_view label(BaselineKind k) {
  return k == BaselineKind::kPureRandom ? "pure_random" : "whq_biased_random";
}

bool selected(const SetOutcome& o, const Selection& sel) {
  if (!sel.include_singletons && o.singleton()) return false;
  return partition_matches(o.ambiguity, sel.partition);
}

bool selected(const ContrastiveSet& s, Ambiguity a, const Selection& sel) {
  if (!sel.include_singletons && s.singleton()) return false;
  return partition_matches(a, sel.partition);
}

std::string Ratio::percent_1dp() const {
  // Tenths of a percent, rounded half-up in integer arithmetic.
  const std::int64_t tenths = (2000 * num + den) / (2 * den);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

Ratio accuracy(const std::vector<SetOutcome>& outcomes, const Selection& sel) {
  std::int64_t correct = 0, total = 0;
  for (const SetOutcome& o : outcomes) {
    if (!selected(o, sel)) continue;
    ++total;
    if (o.correct) ++correct;
  }
  if (total == 0)
    throw Error(kModule, "accuracy over an empty selection (partition " +
                             std::string(label(sel.partition)) + ")");
  return Ratio{correct, total};
}

double IntentPRF::micro_recall() const {
  if (total == 0) return 0.0;
  std::size_t correct = 0;
  for (const IntentScores& s : per_intent) correct += s.correct;
  return static_cast<double>(correct) / static_cast<double>(total);
}

IntentPRF intent_prf(const std::vector<SetOutcome>& outcomes,
                     const Selection& sel) {
  IntentPRF prf;
  for (const SetOutcome& o : outcomes) {
    if (!selected(o, sel)) continue;
    ++prf.total;
    ++prf.per_intent[index(o.gold_intent)].gold_support;
    ++prf.per_intent[index(o.predicted_intent)].predicted_support;
    if (o.correct) ++prf.per_intent[index(o.gold_intent)].correct;
  }
  if (prf.total == 0)
    throw Error(kModule, "precision/recall over an empty selection");
  for (IntentScores& s : prf.per_intent) {
    const double correct = static_cast<double>(s.correct);
    if (s.predicted_support > 0) s.precision = correct / s.predicted_support;
    if (s.gold_support > 0) s.recall = correct / s.gold_support;
    if (!s.precision && !s.recall) continue;
    const double p = s.precision.value_or(0.0);
    const double r = s.recall.value_or(0.0);
    s.f1 = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
  return prf;
}

ConfusionMatrix confusion_matrix(const std::vector<SetOutcome>& outcomes,
                                 const Selection& sel, bool normalize) {
  ConfusionMatrix cm;
  for (const SetOutcome& o : outcomes)
    if (selected(o, sel))
      ++cm.counts(index(o.gold_intent), index(o.predicted_intent));
  if (cm.total() == 0)
    throw Error(kModule, "confusion matrix over an empty selection");
  if (normalize) cm.normalized = row_normalized<double>(cm.counts);
  return cm;
}

BaselineResult random_baseline(const std::vector<ContrastiveSet>& sets,
                               const IntentPunctuationMap& map,
                               const Selection& sel) {
  return over_sets(sets, map, sel, BaselineKind::kPureRandom,
                   [](const ContrastiveSet& s) { return pure_units(s.size()); });
}

BaselineResult whq_biased_baseline(const std::vector<ContrastiveSet>& sets,
                                   const IntentPunctuationMap& map,
                                   const Selection& sel) {
  return over_sets(
      sets, map, sel, BaselineKind::kWhqBiasedRandom,
      [](const ContrastiveSet& s) {
        const bool gold_wh = s.gold.intent == Intent::kWhQuestion;
        bool has_wh = gold_wh;
        for (const Candidate& c : s.alternatives)
          has_wh = has_wh || c.intent == Intent::kWhQuestion;
        return biased_units(s.size(), has_wh, gold_wh);
      });
}

BaselineResult random_baseline(const std::vector<SetOutcome>& outcomes,
                               const Selection& sel) {
  return over_outcomes(
      outcomes, sel, BaselineKind::kPureRandom,
      [](const SetOutcome& o) { return pure_units(o.candidate_count); });
}

BaselineResult whq_biased_baseline(const std::vector<SetOutcome>& outcomes,
                                   const Selection& sel) {
  return over_outcomes(
      outcomes, sel, BaselineKind::kWhqBiasedRandom, [](const SetOutcome& o) {
        bool has_wh = false;
        for (const CandidateScore& c : o.scores)
          has_wh = has_wh || c.intent == Intent::kWhQuestion;
        return biased_units(o.candidate_count, has_wh,
                            o.gold_intent == Intent::kWhQuestion);
      });
}

}  // namespace contrastive
