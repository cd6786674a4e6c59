// Copyright 2026 The mecheval Authors.
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

#ifndef MECHEVAL_METRICS_H_
#define MECHEVAL_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/card.h"
#include "mecheval/equivalence.h"
#include "mecheval/judgments.h"
#include "mecheval/matcher.h"
#include "mecheval/model_graph.h"
#include "mecheval/refset.h"
#include "mecheval/status.h"

namespace mecheval {

// Exact non-negative rational, kept in lowest terms.
struct Ratio {
  int64_t num = 0;
  int64_t den = 1;

  static Ratio Make(int64_t num, int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string ToString() const;  // "19/32"
  nlohmann::json ToJson() const;  // {"num", "den", "value"}

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct VerdictCounts {
  int64_t correct = 0;
  int64_t incorrect = 0;
  int64_t skipped = 0;

  void Add(const Verdict& verdict);
  int64_t total() const { return correct + incorrect + skipped; }
  friend bool operator==(const VerdictCounts&, const VerdictCounts&) = default;
};

// Counts latest verdicts on card subjects; match and edge subjects are
// ignored.
VerdictCounts CountVerdicts(const std::map<std::string, Judgment>& snapshot);

// correct / (correct + incorrect).
Result<Ratio> Precision(const VerdictCounts& counts);
// correct / (correct + incorrect + skipped).
Result<Ratio> CorrectFraction(const VerdictCounts& counts);
// CorrectFraction × total_submitted / days.
Result<Ratio> CardsPerDay(const VerdictCounts& counts, int64_t total_submitted, Ratio days);

// 7 for machine-only runs, 3 for human+machine; no convention otherwise.
std::optional<int64_t> DefaultDays(SubmissionCondition condition);

// round(100·m/t), halves rounded up.
int64_t RoundedPercent(int64_t matches, int64_t total);

enum class OverlapGroup { kDirectPhosphoBind, kOtherDirect, kIndirectComplex };

std::string_view OverlapGroupToken(OverlapGroup group);
OverlapGroup GroupOf(RefCategory category);

struct OverlapCell {
  int64_t matches = 0;
  int64_t reference_total = 0;
  std::optional<int64_t> percent;  // absent when reference_total is 0
  friend bool operator==(const OverlapCell&, const OverlapCell&) = default;
};

struct OverlapReport {
  std::map<OverlapGroup, OverlapCell> by_group;  // every group present
  std::vector<std::string> matched_reference_ids;  // sorted
};

// True when `record` may be credited: a full match whose card is
// LargelyCorrect, not rejected by a reviewer, and, if auto-flagged,
// accepted by one.
bool CountsTowardOverlap(const MatchRecord& record,
                         const std::map<std::string, Judgment>& snapshot);

OverlapReport ReferenceOverlap(const std::vector<ReferenceInteraction>& refs,
                               const std::vector<MatchRecord>& records,
                               const std::map<std::string, Judgment>& snapshot);

// Up to `limit` cards per paper, by rank (unranked last) then input order.
std::vector<IndexCard> TopRanked(const std::vector<IndexCard>& cards, size_t limit = 10);

enum class ErrorType { kParticipant, kInteractionType, kGrounding, kInModel };

std::string_view ErrorTypeToken(ErrorType type);

struct ErrorRate {
  int64_t errors = 0;
  int64_t scored = 0;
  std::optional<Ratio> rate;  // absent when nothing was scored
  friend bool operator==(const ErrorRate&, const ErrorRate&) = default;
};

// Participant and interaction-type rates are per matching card; grounding
// and in-model rates are per scored participant. A reviewer's judgment on a
// match replaces the automatic flags within the scored fields.
std::map<ErrorType, ErrorRate> ConditionalErrorRates(
    const std::vector<MatchRecord>& records,
    const std::map<std::string, Judgment>* snapshot = nullptr);

struct EnsembleResult {
  std::string gold_id;
  int64_t pool_size = 0;
  int64_t a_correct = 0;
  int64_t b_correct = 0;
  int64_t type_correct = 0;
  bool combo = false;
  friend bool operator==(const EnsembleResult&, const EnsembleResult&) = default;
};

// Whether some card in the pool gets each of A, B and the exact type right.
EnsembleResult EnsembleCombination(std::string_view gold_id, const Interaction& gold,
                                   const std::vector<IndexCard>& pool,
                                   const EquivalenceTable& table = EquivalenceTable::Default());

struct ProvenanceMix {
  int64_t total = 0;
  std::map<int, int64_t> counts;  // ProvenanceClass mask -> edges
  Ratio Fraction(int mask) const;
};

Result<ProvenanceMix> ProvenanceComposition(const MechModel& model);

}  // namespace mecheval

#endif  // MECHEVAL_METRICS_H_
