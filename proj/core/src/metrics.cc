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

#include "mecheval/metrics.h"

#include <algorithm>
#include <numeric>
#include <set>

namespace mecheval {

using nlohmann::json;

Ratio Ratio::Make(int64_t num, int64_t den) {
  int64_t g = std::gcd(num, den);
  if (g == 0) return Ratio{0, 1};
  return Ratio{num / g, den / g};
}

std::string Ratio::ToString() const { return std::to_string(num) + "/" + std::to_string(den); }

json Ratio::ToJson() const { return json{{"num", num}, {"den", den}, {"value", value()}}; }

void VerdictCounts::Add(const Verdict& verdict) {
  switch (verdict.kind()) {
    case Verdict::Kind::kLargelyCorrect: ++correct; break;
    case Verdict::Kind::kIncorrect: ++incorrect; break;
    case Verdict::Kind::kSkipped: ++skipped; break;
  }
}

namespace {

bool IsCardSubject(std::string_view id) {
  return id.rfind("match:", 0) != 0 && id.rfind("edge:", 0) != 0;
}

}  // namespace

VerdictCounts CountVerdicts(const std::map<std::string, Judgment>& snapshot) {
  VerdictCounts counts;
  for (const auto& [id, j] : snapshot) {
    if (IsCardSubject(id)) counts.Add(j.verdict);
  }
  return counts;
}

Result<Ratio> Precision(const VerdictCounts& counts) {
  int64_t den = counts.correct + counts.incorrect;
  if (den == 0) return MakeError(ErrorCode::kEmptyDenominator, "precision");
  return Ratio::Make(counts.correct, den);
}

Result<Ratio> CorrectFraction(const VerdictCounts& counts) {
  if (counts.total() == 0) return MakeError(ErrorCode::kEmptyScoredSample, "correct_fraction");
  return Ratio::Make(counts.correct, counts.total());
}

Result<Ratio> CardsPerDay(const VerdictCounts& counts, int64_t total_submitted, Ratio days) {
  ErrorList errors;
  if (days.num <= 0) errors.push_back(MakeError(ErrorCode::kNonpositiveDays, "days", days.ToString()));
  if (counts.total() == 0) errors.push_back(MakeError(ErrorCode::kEmptyScoredSample, "cards_per_day"));
  if (total_submitted < 0) {
    errors.push_back(MakeError(ErrorCode::kInvalidArgument, "total_submitted", std::to_string(total_submitted)));
  }
  if (!errors.empty()) return errors;
  // (c / n) · T / (p / q) = c·T·q / (n·p)
  Ratio a = Ratio::Make(counts.correct * total_submitted, counts.total());
  Ratio b = Ratio::Make(a.num * days.den, a.den * days.num);
  return b;
}

std::optional<int64_t> DefaultDays(SubmissionCondition condition) {
  switch (condition) {
    case SubmissionCondition::kMachineOnly: return 7;
    case SubmissionCondition::kHumanMachine: return 3;
    case SubmissionCondition::kHumanOnly: return std::nullopt;
  }
  return std::nullopt;
}

int64_t RoundedPercent(int64_t matches, int64_t total) {
  return (200 * matches + total) / (2 * total);
}

std::string_view OverlapGroupToken(OverlapGroup group) {
  switch (group) {
    case OverlapGroup::kDirectPhosphoBind: return "direct_phospho_bind";
    case OverlapGroup::kOtherDirect: return "other_direct";
    case OverlapGroup::kIndirectComplex: return "indirect_complex";
  }
  return "";
}

OverlapGroup GroupOf(RefCategory category) {
  switch (category) {
    case RefCategory::kDirectPhosphoBind: return OverlapGroup::kDirectPhosphoBind;
    case RefCategory::kOtherDirect: return OverlapGroup::kOtherDirect;
    case RefCategory::kIndirect:
    case RefCategory::kComplexComposite: return OverlapGroup::kIndirectComplex;
  }
  return OverlapGroup::kOtherDirect;
}

bool CountsTowardOverlap(const MatchRecord& record, const std::map<std::string, Judgment>& snapshot) {
  if (record.match_class != MatchClass::kFull) return false;
  auto card = snapshot.find(record.candidate_card_id);
  if (card == snapshot.end() || !card->second.verdict.is_correct()) return false;
  auto review = snapshot.find(MatchSubject(record.gold_id, record.candidate_card_id));
  if (review != snapshot.end()) return review->second.verdict.is_correct();
  return !record.auto_flagged;
}

OverlapReport ReferenceOverlap(const std::vector<ReferenceInteraction>& refs,
                               const std::vector<MatchRecord>& records,
                               const std::map<std::string, Judgment>& snapshot) {
  OverlapReport report;
  for (OverlapGroup g : {OverlapGroup::kDirectPhosphoBind, OverlapGroup::kOtherDirect,
                         OverlapGroup::kIndirectComplex}) {
    report.by_group[g];
  }
  std::set<std::string> matched;
  for (const MatchRecord& r : records) {
    if (CountsTowardOverlap(r, snapshot)) matched.insert(r.gold_id);
  }
  for (const ReferenceInteraction& ref : refs) {
    OverlapCell& cell = report.by_group[GroupOf(ref.category)];
    ++cell.reference_total;
    if (matched.count(ref.id) != 0) {
      ++cell.matches;
      report.matched_reference_ids.push_back(ref.id);
    }
  }
  for (auto& [group, cell] : report.by_group) {
    if (cell.reference_total > 0) cell.percent = RoundedPercent(cell.matches, cell.reference_total);
  }
  std::sort(report.matched_reference_ids.begin(), report.matched_reference_ids.end());
  return report;
}

std::vector<IndexCard> TopRanked(const std::vector<IndexCard>& cards, size_t limit) {
  std::vector<size_t> order(cards.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&cards](size_t a, size_t b) {
    if (cards[a].paper_id != cards[b].paper_id) return cards[a].paper_id < cards[b].paper_id;
    return cards[a].rank.value_or(1 << 30) < cards[b].rank.value_or(1 << 30);
  });
  std::vector<IndexCard> out;
  std::map<std::string, size_t> taken;
  for (size_t i : order) {
    if (taken[cards[i].paper_id]++ < limit) out.push_back(cards[i]);
  }
  return out;
}

std::string_view ErrorTypeToken(ErrorType type) {
  switch (type) {
    case ErrorType::kParticipant: return "participant";
    case ErrorType::kInteractionType: return "interaction_type";
    case ErrorType::kGrounding: return "grounding";
    case ErrorType::kInModel: return "in_model";
  }
  return "";
}

std::map<ErrorType, ErrorRate> ConditionalErrorRates(const std::vector<MatchRecord>& records,
                                                     const std::map<std::string, Judgment>* snapshot) {
  std::map<ErrorType, ErrorRate> rates;
  for (ErrorType t : {ErrorType::kParticipant, ErrorType::kInteractionType, ErrorType::kGrounding,
                      ErrorType::kInModel}) {
    rates[t];
  }
  auto tally = [](ErrorRate& rate, bool scored, bool error) {
    if (!scored) return;
    ++rate.scored;
    if (error) ++rate.errors;
  };
  for (const MatchRecord& r : records) {
    if (r.match_class == MatchClass::kNone) continue;
    FieldFlagSet flags = r.field_flags;
    if (snapshot != nullptr) {
      auto it = snapshot->find(MatchSubject(r.gold_id, r.candidate_card_id));
      if (it != snapshot->end() && it->second.judge.kind == Judge::Kind::kHuman) {
        flags = FieldFlagSet();
        for (FieldFlag f : kAllFieldFlags) {
          if (r.scored.has(f) && it->second.field_flags.has(f)) flags.set(f);
        }
      }
    }
    tally(rates[ErrorType::kParticipant], true,
          flags.has(FieldFlag::kParticipantAError) || flags.has(FieldFlag::kParticipantBError));
    tally(rates[ErrorType::kInteractionType], true, flags.has(FieldFlag::kInteractionTypeError));
    tally(rates[ErrorType::kGrounding], r.scored.has(FieldFlag::kGroundingErrorA),
          flags.has(FieldFlag::kGroundingErrorA));
    tally(rates[ErrorType::kGrounding], r.scored.has(FieldFlag::kGroundingErrorB),
          flags.has(FieldFlag::kGroundingErrorB));
    tally(rates[ErrorType::kInModel], r.scored.has(FieldFlag::kInModelErrorA),
          flags.has(FieldFlag::kInModelErrorA));
    tally(rates[ErrorType::kInModel], r.scored.has(FieldFlag::kInModelErrorB),
          flags.has(FieldFlag::kInModelErrorB));
  }
  for (auto& [type, rate] : rates) {
    if (rate.scored > 0) rate.rate = Ratio::Make(rate.errors, rate.scored);
  }
  return rates;
}

EnsembleResult EnsembleCombination(std::string_view gold_id, const Interaction& gold,
                                   const std::vector<IndexCard>& pool,
                                   const EquivalenceTable& table) {
  EnsembleResult out;
  out.gold_id = std::string(gold_id);
  out.pool_size = static_cast<int64_t>(pool.size());
  for (const IndexCard& card : pool) {
    FieldCorrectness f = AssessFields(card, gold, table);
    out.a_correct += f.a_correct;
    out.b_correct += f.b_correct;
    out.type_correct += f.type_correct;
  }
  out.combo = out.a_correct > 0 && out.b_correct > 0 && out.type_correct > 0;
  return out;
}

Ratio ProvenanceMix::Fraction(int mask) const {
  auto it = counts.find(mask);
  if (it == counts.end() || total == 0) return Ratio{0, 1};
  return Ratio::Make(it->second, total);
}

Result<ProvenanceMix> ProvenanceComposition(const MechModel& model) {
  ProvenanceMix mix;
  ErrorList errors;
  for (const ModelInteraction& edge : model.interactions()) {
    if (edge.provenance.empty()) {
      errors.push_back(MakeError(ErrorCode::kMissingProvenance, edge.id));
      continue;
    }
    ++mix.counts[ProvenanceClass(edge)];
    ++mix.total;
  }
  if (!errors.empty()) return errors;
  return mix;
}

}  // namespace mecheval
