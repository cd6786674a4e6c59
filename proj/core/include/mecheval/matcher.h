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

#ifndef MECHEVAL_MATCHER_H_
#define MECHEVAL_MATCHER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/card.h"
#include "mecheval/equivalence.h"

namespace mecheval {

enum class MatchClass { kNone, kPartial, kFull };

std::string_view MatchClassToken(MatchClass c);
std::optional<MatchClass> ParseMatchClass(std::string_view token);

enum class FieldFlag : uint32_t {
  kInteractionTypeError = 1u << 0,
  kParticipantAError = 1u << 1,
  kParticipantBError = 1u << 2,
  kGroundingErrorA = 1u << 3,
  kGroundingErrorB = 1u << 4,
  kInModelErrorA = 1u << 5,
  kInModelErrorB = 1u << 6,
};

inline constexpr FieldFlag kAllFieldFlags[] = {
    FieldFlag::kInteractionTypeError, FieldFlag::kParticipantAError,
    FieldFlag::kParticipantBError,    FieldFlag::kGroundingErrorA,
    FieldFlag::kGroundingErrorB,      FieldFlag::kInModelErrorA,
    FieldFlag::kInModelErrorB,
};

std::string_view FieldFlagToken(FieldFlag flag);
std::optional<FieldFlag> ParseFieldFlag(std::string_view token);

class FieldFlagSet {
 public:
  FieldFlagSet() = default;
  FieldFlagSet(std::initializer_list<FieldFlag> flags) {
    for (FieldFlag f : flags) set(f);
  }

  bool has(FieldFlag f) const { return (bits_ & static_cast<uint32_t>(f)) != 0; }
  void set(FieldFlag f, bool on = true) {
    if (on) {
      bits_ |= static_cast<uint32_t>(f);
    } else {
      bits_ &= ~static_cast<uint32_t>(f);
    }
  }
  bool empty() const { return bits_ == 0; }
  int count() const { return __builtin_popcount(bits_); }
  uint32_t bits() const { return bits_; }

  FieldFlagSet operator|(FieldFlagSet other) const {
    FieldFlagSet out;
    out.bits_ = bits_ | other.bits_;
    return out;
  }

  nlohmann::json ToJson() const;  // sorted token array
  static Result<FieldFlagSet> FromJson(const nlohmann::json& doc);

  friend bool operator==(FieldFlagSet, FieldFlagSet) = default;

 private:
  uint32_t bits_ = 0;
};

struct MatchRecord {
  std::string gold_id;
  std::string candidate_card_id;
  MatchClass match_class = MatchClass::kNone;
  FieldFlagSet field_flags;
  // Fields that carried scoreable information on this match; the
  // denominators of the conditional error rates.
  FieldFlagSet scored;
  bool auto_flagged = false;
  bool swapped = false;
  std::optional<int> rank;

  nlohmann::json ToJson() const;
  static Result<MatchRecord> FromJson(const nlohmann::json& doc);
  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

// Surface match of two participants: normalized text for entities and
// generics, order-free member sets for complexes, full match for embedded
// interactions. Grounding is ignored.
bool ParticipantsMatch(const Participant& a, const Participant& b,
                       const EquivalenceTable& table = EquivalenceTable::Default());

// Classifies `candidate` against a gold interaction and records field errors.
MatchRecord MatchInteraction(const IndexCard& candidate, std::string_view gold_id,
                             const Interaction& gold,
                             const EquivalenceTable& table = EquivalenceTable::Default());
MatchRecord MatchCards(const IndexCard& candidate, const IndexCard& gold,
                       const EquivalenceTable& table = EquivalenceTable::Default());

// Orders records best first: Full before Partial, fewer flags, lower rank
// (unranked last), lower card id.
bool BetterMatch(const MatchRecord& a, const MatchRecord& b);

std::optional<MatchRecord> BestMatch(const std::vector<IndexCard>& candidates,
                                     std::string_view gold_id, const Interaction& gold,
                                     const EquivalenceTable& table = EquivalenceTable::Default());

struct DuplicateCard {
  IndexCard card;
  std::string kept_card_id;
};

struct DedupResult {
  std::vector<IndexCard> unique;  // input order
  std::vector<DuplicateCard> duplicates;
};

// Keeps one card per signature: the lowest rank, then the earliest in input.
DedupResult DedupSubmission(const std::vector<IndexCard>& cards,
                            const EquivalenceTable& table = EquivalenceTable::Default());

// Per-field correctness of a card against gold, grounding included; used for
// the ensemble analysis. Participant order follows the swap rule.
struct FieldCorrectness {
  bool a_correct = false;
  bool b_correct = false;
  bool type_correct = false;
};

FieldCorrectness AssessFields(const IndexCard& candidate, const Interaction& gold,
                              const EquivalenceTable& table = EquivalenceTable::Default());

// Entity types for which a grounding is expected.
bool IsGroundable(EntityType type);

}  // namespace mecheval

#endif  // MECHEVAL_MATCHER_H_
