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

#ifndef CONTRASTIVE_METRICS_HPP_
#define CONTRASTIVE_METRICS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "contrastive/corpus.hpp"
#include "contrastive/intent.hpp"
#include "contrastive/partition.hpp"
#include "contrastive/scoring.hpp"

namespace contrastive {

enum class Partition { kAll, kAmbiguous, kUnambiguous };

std::string_view label(Partition p);
std::optional<Partition> parse_partition(std::string_view s);

inline constexpr std::array<Partition, 3> kAllPartitions = {
    Partition::kAll, Partition::kAmbiguous, Partition::kUnambiguous};

/// Which outcomes or sets a metric aggregates over.
struct Selection {
  Partition partition = Partition::kAll;
  bool include_singletons = true;
};

bool selected(const SetOutcome& o, const Selection& sel);
bool selected(const ContrastiveSet& s, Ambiguity a, const Selection& sel);

/// Exact non-negative fraction. Accuracies and baselines are accumulated as
/// integers so the result does not depend on summation order.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  /// 100 * num / den rounded half-up to one decimal, e.g. "66.7".
  std::string percent_1dp() const;

  bool operator==(const Ratio& o) const { return num * o.den == o.num * den; }
};

/// Fraction of selected outcomes that are correct. Throws on an empty
/// selection.
Ratio accuracy(const std::vector<SetOutcome>& outcomes,
               const Selection& sel = {});

struct IntentScores {
  std::size_t gold_support = 0;       // outcomes whose gold has this intent
  std::size_t predicted_support = 0;  // outcomes predicting this intent
  std::size_t correct = 0;
  // Absent when the corresponding support is zero.
  std::optional<double> precision;
  std::optional<double> recall;
  // Absent only when both precision and recall are absent.
  std::optional<double> f1;
};

struct IntentPRF {
  std::array<IntentScores, kNumIntents> per_intent{};
  std::size_t total = 0;

  const IntentScores& operator[](Intent i) const {
    return per_intent[index(i)];
  }
  /// Correct predictions over all outcomes; equals accuracy.
  double micro_recall() const;
};

IntentPRF intent_prf(const std::vector<SetOutcome>& outcomes,
                     const Selection& sel = {});

using IntentCounts = Eigen::Matrix<std::int64_t, kNumIntents, kNumIntents>;

template <typename Scalar>
using IntentMatrix = Eigen::Matrix<Scalar, kNumIntents, kNumIntents>;

/// Row-normalised view: each nonzero row divided by its sum, zero rows kept.
template <typename Scalar = double>
IntentMatrix<Scalar> row_normalized(const IntentCounts& counts) {
  IntentMatrix<Scalar> out = counts.template cast<Scalar>();
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const Scalar sum = out.row(r).sum();
    if (sum != Scalar(0)) out.row(r) /= sum;
  }
  return out;
}

/// Counts indexed (gold intent, predicted intent).
struct ConfusionMatrix {
  IntentCounts counts = IntentCounts::Zero();
  std::optional<IntentMatrix<double>> normalized;

  std::int64_t total() const { return counts.sum(); }
  std::int64_t trace() const { return counts.trace(); }
};

ConfusionMatrix confusion_matrix(const std::vector<SetOutcome>& outcomes,
                                 const Selection& sel = {},
                                 bool normalize = false);

enum class BaselineKind { kPureRandom, kWhqBiasedRandom };

std::string_view label(BaselineKind k);

struct BaselineResult {
  Ratio expected;
  BaselineKind kind = BaselineKind::kPureRandom;
  Selection selection;
  std::size_t sets = 0;
};

/// Mean over selected sets of 1/k with k the number of candidates. Throws on
/// an empty selection.
BaselineResult random_baseline(const std::vector<ContrastiveSet>& sets,
                               const IntentPunctuationMap& map,
                               const Selection& sel = {});

/// Picks a wh-question candidate when one exists, uniformly otherwise.
BaselineResult whq_biased_baseline(const std::vector<ContrastiveSet>& sets,
                                   const IntentPunctuationMap& map,
                                   const Selection& sel = {});

// Same quantities recomputed from outcomes, which carry every candidate's
// intent and the set's ambiguity label.
BaselineResult random_baseline(const std::vector<SetOutcome>& outcomes,
                               const Selection& sel = {});
BaselineResult whq_biased_baseline(const std::vector<SetOutcome>& outcomes,
                                   const Selection& sel = {});

}  // namespace contrastive

#endif  // CONTRASTIVE_METRICS_HPP_
