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

#include "mecheval/matcher.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "mecheval/signature.h"
#include "mecheval/text.h"

namespace mecheval {

using nlohmann::json;

std::string_view MatchClassToken(MatchClass c) {
  switch (c) {
    case MatchClass::kNone: return "none";
    case MatchClass::kPartial: return "partial";
    case MatchClass::kFull: return "full";
  }
  return "";
}

std::optional<MatchClass> ParseMatchClass(std::string_view token) {
  if (token == "none") return MatchClass::kNone;
  if (token == "partial") return MatchClass::kPartial;
  if (token == "full") return MatchClass::kFull;
  return std::nullopt;
}

std::string_view FieldFlagToken(FieldFlag flag) {
  switch (flag) {
    case FieldFlag::kInteractionTypeError: return "interaction_type_error";
    case FieldFlag::kParticipantAError: return "participant_a_error";
    case FieldFlag::kParticipantBError: return "participant_b_error";
    case FieldFlag::kGroundingErrorA: return "grounding_error_a";
    case FieldFlag::kGroundingErrorB: return "grounding_error_b";
    case FieldFlag::kInModelErrorA: return "in_model_error_a";
    case FieldFlag::kInModelErrorB: return "in_model_error_b";
  }
  return "";
}

std::optional<FieldFlag> ParseFieldFlag(std::string_view token) {
  for (FieldFlag f : kAllFieldFlags) {
    if (FieldFlagToken(f) == token) return f;
  }
  return std::nullopt;
}

json FieldFlagSet::ToJson() const {
  json out = json::array();
  for (FieldFlag f : kAllFieldFlags) {
    if (has(f)) out.push_back(FieldFlagToken(f));
  }
  return out;
}

Result<FieldFlagSet> FieldFlagSet::FromJson(const json& doc) {
  if (!doc.is_array()) return MakeError(ErrorCode::kMalformedDocument, "flags", "expected array");
  FieldFlagSet out;
  for (const json& t : doc) {
    if (!t.is_string()) return MakeError(ErrorCode::kBadEnumValue, "flags", t.dump());
    auto f = ParseFieldFlag(t.get<std::string>());
    if (!f) return MakeError(ErrorCode::kBadEnumValue, "flags", t.get<std::string>());
    out.set(*f);
  }
  return out;
}

json MatchRecord::ToJson() const {
  json out{{"gold_id", gold_id},
           {"candidate_card_id", candidate_card_id},
           {"class", MatchClassToken(match_class)},
           {"field_flags", field_flags.ToJson()},
           {"scored", scored.ToJson()},
           {"auto_flagged", auto_flagged},
           {"swapped", swapped}};
  if (rank) out["rank"] = *rank;
  return out;
}

Result<MatchRecord> MatchRecord::FromJson(const json& doc) {
  if (!doc.is_object()) return MakeError(ErrorCode::kMalformedDocument, "match", "expected object");
  MatchRecord r;
  try {
    r.gold_id = doc.at("gold_id").get<std::string>();
    r.candidate_card_id = doc.at("candidate_card_id").get<std::string>();
    auto c = ParseMatchClass(doc.at("class").get<std::string>());
    if (!c) return MakeError(ErrorCode::kBadEnumValue, "class", doc.at("class").dump());
    r.match_class = *c;
    auto flags = FieldFlagSet::FromJson(doc.at("field_flags"));
    if (!flags.ok()) return flags.errors();
    r.field_flags = *flags;
    auto scored = FieldFlagSet::FromJson(doc.value("scored", json::array()));
    if (!scored.ok()) return scored.errors();
    r.scored = *scored;
    r.auto_flagged = doc.value("auto_flagged", false);
    r.swapped = doc.value("swapped", false);
    if (doc.contains("rank") && !doc["rank"].is_null()) r.rank = doc["rank"].get<int>();
  } catch (const json::exception& e) {
    return MakeError(ErrorCode::kMalformedDocument, "match", e.what());
  }
  return r;
}

bool IsGroundable(EntityType type) {
  return type == EntityType::kProtein || type == EntityType::kChemical ||
         type == EntityType::kGene;
}

namespace {

bool SameModificationType(const Interaction& a, const Interaction& b) {
  if (!a.modification || !b.modification) return a.modification.has_value() == b.modification.has_value();
  return NormalizeSurface(a.modification->type) == NormalizeSurface(b.modification->type);
}

bool EntityTextMatch(const EntityRef& a, const EntityRef& b) {
  return NormalizeSurface(a.text) == NormalizeSurface(b.text);
}

bool FullMatch(const Interaction& cand, const Interaction& gold, const EquivalenceTable& table,
               bool* swapped) {
  if (!table.SameFamily(cand, gold)) return false;
  if (ParticipantsMatch(cand.participant_a, gold.participant_a, table) &&
      ParticipantsMatch(cand.participant_b, gold.participant_b, table)) {
    if (swapped != nullptr) *swapped = false;
    return true;
  }
  if (IsSymmetricKind(cand.kind) && IsSymmetricKind(gold.kind) &&
      ParticipantsMatch(cand.participant_a, gold.participant_b, table) &&
      ParticipantsMatch(cand.participant_b, gold.participant_a, table)) {
    if (swapped != nullptr) *swapped = true;
    return true;
  }
  return false;
}

// Grounding and in-model scoring for one identified participant.
void ScoreEntity(const Participant& cand, const Participant& gold, FieldFlag grounding_flag,
                 FieldFlag in_model_flag, MatchRecord& record) {
  const EntityRef* c = AsEntity(cand);
  const EntityRef* g = AsEntity(gold);
  if (c == nullptr || g == nullptr || !IsGroundable(g->type) || !EntityTextMatch(*c, *g)) return;
  if (g->grounding) {
    record.scored.set(grounding_flag);
    bool right = c->grounding && SameGrounding(*c->grounding, *g->grounding);
    record.field_flags.set(grounding_flag, !right);
  }
  if (g->in_model) {
    record.scored.set(in_model_flag);
    record.field_flags.set(in_model_flag, c->in_model != g->in_model);
  }
}

bool GroundedCorrect(const EntityRef& cand, const EntityRef& gold) {
  if (!EntityTextMatch(cand, gold)) return false;
  if (!gold.grounding) return true;
  return cand.grounding && SameGrounding(*cand.grounding, *gold.grounding);
}

bool ParticipantFullyCorrect(const Participant& cand, const Participant& gold,
                             const EquivalenceTable& table) {
  if (!ParticipantsMatch(cand, gold, table)) return false;
  if (const EntityRef* g = AsEntity(gold)) return GroundedCorrect(*AsEntity(cand), *g);
  if (const auto* g = std::get_if<ComplexParticipant>(&gold)) {
    const auto& c = std::get<ComplexParticipant>(cand);
    for (const EntityRef& gm : g->members) {
      bool found = std::any_of(c.members.begin(), c.members.end(),
                               [&gm](const EntityRef& cm) { return GroundedCorrect(cm, gm); });
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

bool ParticipantsMatch(const Participant& a, const Participant& b, const EquivalenceTable& table) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& pa) -> bool {
        using T = std::decay_t<decltype(pa)>;
        const T& pb = std::get<T>(b);
        if constexpr (std::is_same_v<T, BlankParticipant>) {
          return true;
        } else if constexpr (std::is_same_v<T, EntityRef>) {
          return EntityTextMatch(pa, pb);
        } else if constexpr (std::is_same_v<T, GenericParticipant>) {
          return NormalizeSurface(pa.label) == NormalizeSurface(pb.label);
        } else if constexpr (std::is_same_v<T, ComplexParticipant>) {
          return CanonicalParticipant(pa, table) == CanonicalParticipant(pb, table);
        } else {
          return FullMatch(*pa.interaction, *pb.interaction, table, nullptr);
        }
      },
      a);
}

MatchRecord MatchInteraction(const IndexCard& candidate, std::string_view gold_id,
                             const Interaction& gold, const EquivalenceTable& table) {
  MatchRecord record;
  record.gold_id = std::string(gold_id);
  record.candidate_card_id = candidate.card_id;
  record.rank = candidate.rank;
  const Interaction& cand = candidate.interaction;

  bool swapped = false;
  if (FullMatch(cand, gold, table, &swapped)) {
    record.match_class = MatchClass::kFull;
    record.swapped = swapped;
  } else if (table.SameFamily(cand, gold) && IsBlank(cand.participant_a) &&
             ParticipantsMatch(cand.participant_b, gold.participant_b, table)) {
    record.match_class = MatchClass::kPartial;
  } else {
    return record;
  }

  record.scored.set(FieldFlag::kInteractionTypeError);
  record.scored.set(FieldFlag::kParticipantAError);
  record.scored.set(FieldFlag::kParticipantBError);
  if (KindKey(cand) != KindKey(gold) || !SameModificationType(cand, gold)) {
    record.field_flags.set(FieldFlag::kInteractionTypeError);
  }
  if (record.match_class == MatchClass::kPartial) {
    record.field_flags.set(FieldFlag::kParticipantAError);
    ScoreEntity(cand.participant_b, gold.participant_b, FieldFlag::kGroundingErrorB,
                FieldFlag::kInModelErrorB, record);
  } else {
    const Participant& ca = swapped ? cand.participant_b : cand.participant_a;
    const Participant& cb = swapped ? cand.participant_a : cand.participant_b;
    ScoreEntity(ca, gold.participant_a, FieldFlag::kGroundingErrorA, FieldFlag::kInModelErrorA,
                record);
    ScoreEntity(cb, gold.participant_b, FieldFlag::kGroundingErrorB, FieldFlag::kInModelErrorB,
                record);
  }
  record.auto_flagged = record.match_class == MatchClass::kPartial ||
                        record.field_flags.has(FieldFlag::kInteractionTypeError);
  return record;
}

MatchRecord MatchCards(const IndexCard& candidate, const IndexCard& gold,
                       const EquivalenceTable& table) {
  return MatchInteraction(candidate, gold.card_id, gold.interaction, table);
}

bool BetterMatch(const MatchRecord& a, const MatchRecord& b) {
  auto key = [](const MatchRecord& r) {
    return std::make_tuple(r.match_class == MatchClass::kFull ? 0 : 1, r.field_flags.count(),
                           r.rank.value_or(1 << 30), std::cref(r.candidate_card_id));
  };
  return key(a) < key(b);
}

std::optional<MatchRecord> BestMatch(const std::vector<IndexCard>& candidates,
                                     std::string_view gold_id, const Interaction& gold,
                                     const EquivalenceTable& table) {
  std::optional<MatchRecord> best;
  for (const IndexCard& c : candidates) {
    MatchRecord r = MatchInteraction(c, gold_id, gold, table);
    if (r.match_class == MatchClass::kNone) continue;
    if (!best || BetterMatch(r, *best)) best = std::move(r);
  }
  return best;
}

DedupResult DedupSubmission(const std::vector<IndexCard>& cards, const EquivalenceTable& table) {
  // Pick the keeper per signature first, then emit in input order.
  std::map<std::string, size_t> keeper;
  std::vector<std::string> signatures;
  signatures.reserve(cards.size());
  for (size_t i = 0; i < cards.size(); ++i) {
    signatures.push_back(CardSignature(cards[i], table));
    auto [it, inserted] = keeper.emplace(signatures.back(), i);
    if (!inserted) {
      const IndexCard& held = cards[it->second];
      if (cards[i].rank.value_or(1 << 30) < held.rank.value_or(1 << 30)) it->second = i;
    }
  }
  DedupResult out;
  for (size_t i = 0; i < cards.size(); ++i) {
    size_t k = keeper[signatures[i]];
    if (k == i) {
      out.unique.push_back(cards[i]);
    } else {
      out.duplicates.push_back(DuplicateCard{cards[i], cards[k].card_id});
    }
  }
  return out;
}

FieldCorrectness AssessFields(const IndexCard& candidate, const Interaction& gold,
                              const EquivalenceTable& table) {
  const Interaction& cand = candidate.interaction;
  FieldCorrectness out;
  bool swap = false;
  if (IsSymmetricKind(cand.kind) && IsSymmetricKind(gold.kind)) {
    bool direct = ParticipantsMatch(cand.participant_a, gold.participant_a, table) ||
                  ParticipantsMatch(cand.participant_b, gold.participant_b, table);
    bool crossed = ParticipantsMatch(cand.participant_a, gold.participant_b, table) ||
                   ParticipantsMatch(cand.participant_b, gold.participant_a, table);
    swap = crossed && !direct;
  }
  const Participant& ca = swap ? cand.participant_b : cand.participant_a;
  const Participant& cb = swap ? cand.participant_a : cand.participant_b;
  out.a_correct = ParticipantFullyCorrect(ca, gold.participant_a, table);
  out.b_correct = ParticipantFullyCorrect(cb, gold.participant_b, table);
  out.type_correct = KindKey(cand) == KindKey(gold) && SameModificationType(cand, gold);
  return out;
}

}  // namespace mecheval
