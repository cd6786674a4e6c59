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


#include <gtest/gtest.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mecheval/judgments.h"
#include "mecheval/matcher.h"
#include "mecheval/metrics.h"
#include "mecheval/model_graph.h"
#include "published_tables.h"
#include "test_util.h"

namespace mecheval {
namespace {

using testing::Binds;
using testing::Ent;
using testing::Make;
using testing::MakeCard;
using testing::Phos;

Judgment With(const std::string& id, Verdict v) {
  Judgment j;
  j.card_id = id;
  j.verdict = v;
  j.revision = 1;
  return j;
}

// Reduced fraction by Euclid, kept apart from Ratio::Make.
std::pair<int64_t, int64_t> Reduce(int64_t num, int64_t den) {
  int64_t a = num < 0 ? -num : num;
  int64_t b = den;
  while (b != 0) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) return {0, 1};
  return {num / a, den / a};
}

TEST(MetricsTest, FormulasOnFixedCounts) {
  VerdictCounts c{2, 1, 1};
  EXPECT_EQ(*Precision(c), (Ratio{2, 3}));
  EXPECT_EQ(*CorrectFraction(c), (Ratio{1, 2}));
  EXPECT_EQ(*CardsPerDay(c, 400, Ratio{4, 1}), (Ratio{50, 1}));
  EXPECT_EQ(*CardsPerDay(VerdictCounts{1, 1, 0}, 1400, Ratio{7, 1}), (Ratio{100, 1}));
  EXPECT_EQ(*CardsPerDay(VerdictCounts{0, 3, 0}, 90, Ratio{7, 1}), (Ratio{0, 1}));
  EXPECT_EQ(*Precision(VerdictCounts{5, 0, 0}), (Ratio{1, 1}));
}

TEST(MetricsTest, EmptyDenominators) {
  EXPECT_EQ(Precision(VerdictCounts{0, 0, 4}).code(), ErrorCode::kEmptyDenominator);
  EXPECT_EQ(CorrectFraction(VerdictCounts{}).code(), ErrorCode::kEmptyScoredSample);
  EXPECT_EQ(CardsPerDay(VerdictCounts{1, 0, 0}, 10, Ratio{0, 1}).code(), ErrorCode::kNonpositiveDays);
  EXPECT_EQ(CardsPerDay(VerdictCounts{}, 10, Ratio{3, 1}).code(), ErrorCode::kEmptyScoredSample);
}

TEST(MetricsTest, RandomizedMultisetsMatchOracle) {
  std::mt19937_64 rng(20260116);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> size(1, 300);
  std::uniform_int_distribution<int64_t> total(0, 5000);
  std::uniform_int_distribution<int64_t> days(1, 14);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::string, Judgment> snapshot;
    int64_t c = 0, i = 0, s = 0;
    int n = size(rng);
    for (int k = 0; k < n; ++k) {
      int v = kind(rng);
      Verdict verdict = v == 0 ? Verdict::LargelyCorrect()
                        : v == 1 ? Verdict::Incorrect()
                                 : Verdict::Skipped(SkipReason::kBackgroundOrMethods);
      (v == 0 ? c : v == 1 ? i : s)++;
      snapshot.emplace("card" + std::to_string(k), With("card" + std::to_string(k), verdict));
    }
    // Subjects that are not cards never count.
    snapshot.emplace("match:g|card0", With("match:g|card0", Verdict::Incorrect()));
    VerdictCounts counts = CountVerdicts(snapshot);
    ASSERT_EQ(counts.correct, c);
    ASSERT_EQ(counts.incorrect, i);
    ASSERT_EQ(counts.skipped, s);

    if (c + i == 0) {
      EXPECT_FALSE(Precision(counts).ok());
    } else {
      auto [pn, pd] = Reduce(c, c + i);
      EXPECT_EQ(*Precision(counts), (Ratio{pn, pd}));
    }
    auto [fn, fd] = Reduce(c, c + i + s);
    EXPECT_EQ(*CorrectFraction(counts), (Ratio{fn, fd}));

    int64_t t = total(rng);
    int64_t q = days(rng);
    int64_t p = days(rng);
    // c/(c+i+s) * t / (q/p)
    auto [dn, dd] = Reduce(c * t * p, (c + i + s) * q);
    EXPECT_EQ(*CardsPerDay(counts, t, Ratio{q, p}), (Ratio{dn, dd})) << "trial " << trial;
    if (s > 0 && c + i > 0) {
      EXPECT_GE(Precision(counts)->value(), CorrectFraction(counts)->value());
    }
  }
}

TEST(MetricsTest, DaysConventionByCondition) {
  EXPECT_EQ(DefaultDays(SubmissionCondition::kMachineOnly), published::kMachineDays);
  EXPECT_EQ(DefaultDays(SubmissionCondition::kHumanMachine), published::kHumanMachineDays);
  EXPECT_FALSE(DefaultDays(SubmissionCondition::kHumanOnly).has_value());
}

TEST(MetricsTest, RoundedPercentIsNearestInteger) {
  EXPECT_EQ(RoundedPercent(22, 29), 76);
  EXPECT_EQ(RoundedPercent(19, 29), 66);
  EXPECT_EQ(RoundedPercent(4, 21), 19);
  EXPECT_EQ(RoundedPercent(1, 8), 13);  // 12.5 rounds up
  EXPECT_EQ(RoundedPercent(0, 21), 0);
}

TEST(MetricsTest, OverlapNeedsCorrectFullMatch) {
  std::vector<ReferenceInteraction> refs(3);
  refs[0].id = "r1";
  refs[1].id = "r2";
  refs[2].id = "r3";
  refs[2].category = RefCategory::kIndirect;
  MatchRecord full{"r1", "c1", MatchClass::kFull};
  MatchRecord wrong{"r2", "c2", MatchClass::kFull};
  MatchRecord partial{"r3", "c3", MatchClass::kPartial};
  std::map<std::string, Judgment> snap = {{"c1", With("c1", Verdict::LargelyCorrect())},
                                          {"c2", With("c2", Verdict::Incorrect())},
                                          {"c3", With("c3", Verdict::LargelyCorrect())}};
  OverlapReport o = ReferenceOverlap(refs, {full, wrong, partial}, snap);
  EXPECT_EQ(o.by_group[OverlapGroup::kDirectPhosphoBind].matches, 1);
  EXPECT_EQ(o.by_group[OverlapGroup::kDirectPhosphoBind].reference_total, 2);
  EXPECT_EQ(o.by_group[OverlapGroup::kDirectPhosphoBind].percent, 50);
  EXPECT_EQ(o.by_group[OverlapGroup::kIndirectComplex].matches, 0);
  EXPECT_FALSE(o.by_group[OverlapGroup::kOtherDirect].percent.has_value());
  EXPECT_EQ(o.matched_reference_ids, std::vector<std::string>{"r1"});
}

TEST(MetricsTest, FlaggedMatchWaitsForReview) {
  MatchRecord flagged{"r1", "c1", MatchClass::kFull};
  flagged.auto_flagged = true;
  std::map<std::string, Judgment> snap = {{"c1", With("c1", Verdict::LargelyCorrect())}};
  EXPECT_FALSE(CountsTowardOverlap(flagged, snap));
  snap.emplace(MatchSubject("r1", "c1"), With("m", Verdict::LargelyCorrect()));
  EXPECT_TRUE(CountsTowardOverlap(flagged, snap));
  snap[MatchSubject("r1", "c1")] = With("m", Verdict::Incorrect());
  EXPECT_FALSE(CountsTowardOverlap(flagged, snap));
}

TEST(MetricsTest, TopRankedPerPaper) {
  std::vector<IndexCard> cards;
  for (int r = 12; r >= 1; --r) {
    cards.push_back(MakeCard("a" + std::to_string(r), "PA", Binds("X", "Y" + std::to_string(r)),
                             r <= 10 ? std::optional<int>(r) : std::nullopt));
  }
  cards.push_back(MakeCard("b1", "PB", Binds("X", "Z")));
  auto top = TopRanked(cards, 10);
  ASSERT_EQ(top.size(), 11u);
  EXPECT_EQ(top[0].card_id, "a1");
  EXPECT_EQ(top[9].card_id, "a10");
  EXPECT_EQ(top[10].card_id, "b1");
}

TEST(MetricsTest, ErrorRatesUseScoredFlags) {
  Interaction gold = Phos("EGFR", "Shc");
  std::get<EntityRef>(gold.participant_b).grounding = Grounding{GroundingNamespace::kUniProt, "P29353"};
  IndexCard partial = MakeCard("p", "S", Make(BlankParticipant{}, InteractionKind::kAddsModification, Ent("Shc")));
  IndexCard full = MakeCard("f", "S", gold);
  std::vector<MatchRecord> records = {MatchInteraction(partial, "g", gold),
                                      MatchInteraction(full, "g", gold)};
  auto rates = ConditionalErrorRates(records);
  EXPECT_EQ(rates[ErrorType::kParticipant].scored, 2);
  EXPECT_EQ(rates[ErrorType::kParticipant].errors, 1);
  EXPECT_EQ(*rates[ErrorType::kParticipant].rate, (Ratio{1, 2}));
  EXPECT_EQ(rates[ErrorType::kGrounding].scored, 2);
  EXPECT_EQ(rates[ErrorType::kGrounding].errors, 1);
  EXPECT_FALSE(rates[ErrorType::kInModel].rate.has_value());
}

TEST(MetricsTest, HumanMatchJudgmentOverridesFlags) {
  Interaction gold = Phos("EGFR", "Shc");
  IndexCard typed = MakeCard("t", "S", Make(Ent("EGFR"), InteractionKind::kIncreasesActivity, Ent("Shc")));
  std::vector<MatchRecord> records = {MatchInteraction(typed, "g", gold)};
  Judgment review = With(MatchSubject("g", "t"), Verdict::LargelyCorrect());
  review.judge = Judge::Human("r");
  std::map<std::string, Judgment> snap = {{review.card_id, review}};
  EXPECT_EQ(ConditionalErrorRates(records)[ErrorType::kInteractionType].errors, 1);
  EXPECT_EQ(ConditionalErrorRates(records, &snap)[ErrorType::kInteractionType].errors, 0);
}

TEST(MetricsTest, ProvenanceMixFractions) {
  ModelInteraction a{"a", "X", "Y", InteractionKind::kIncreasesActivity};
  a.provenance = {MachineReading{"d", {"s"}, "r"}};
  ModelInteraction b{"b", "Y", "Z", InteractionKind::kIncreasesActivity};
  b.provenance = {CuratedDatabase{"db", "1"}, MachineReading{"d", {"s"}, "r"}};
  ModelInteraction c{"c", "Z", "X", InteractionKind::kIncreasesActivity};
  c.provenance = {ManualCuration{"me", ""}};
  MechModel m = MechModel::Unchecked("m", {{"X", "X"}, {"Y", "Y"}, {"Z", "Z"}}, {a, b, c});
  auto mix = ProvenanceComposition(m);
  ASSERT_TRUE(mix.ok());
  EXPECT_EQ(mix->total, 3);
  EXPECT_EQ(mix->Fraction(ProvenanceClass(a)), (Ratio{1, 3}));
  EXPECT_EQ(mix->Fraction(ProvenanceClass(b)), (Ratio{1, 3}));
  c.provenance.clear();
  auto missing = ProvenanceComposition(MechModel::Unchecked("m", {{"X", "X"}, {"Z", "Z"}}, {c}));
  ASSERT_FALSE(missing.ok());
  EXPECT_EQ(missing.code(), ErrorCode::kMissingProvenance);
}

}  // namespace
}  // namespace mecheval
