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

#include "mecheval/signature.h"

#include <algorithm>
#include <vector>

#include "mecheval/text.h"

namespace mecheval {

std::string CanonicalParticipant(const Participant& participant, const EquivalenceTable& table) {
  return std::visit(
      [&table](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BlankParticipant>) {
          return "_";
        } else if constexpr (std::is_same_v<T, EntityRef>) {
          return "e:" + NormalizeSurface(p.text);
        } else if constexpr (std::is_same_v<T, GenericParticipant>) {
          return "g:" + NormalizeSurface(p.label);
        } else if constexpr (std::is_same_v<T, ComplexParticipant>) {
          std::vector<std::string> members;
          for (const EntityRef& m : p.members) members.push_back(NormalizeSurface(m.text));
          std::sort(members.begin(), members.end());
          std::string out = "c:{";
          for (size_t i = 0; i < members.size(); ++i) {
            if (i > 0) out += ",";
            out += members[i];
          }
          return out + "}";
        } else {
          return "x:[" + InteractionSignature(*p.interaction, table) + "]";
        }
      },
      participant);
}

std::string InteractionSignature(const Interaction& interaction, const EquivalenceTable& table) {
  std::string a = CanonicalParticipant(interaction.participant_a, table);
  std::string b = CanonicalParticipant(interaction.participant_b, table);
  if (IsSymmetricKind(interaction.kind) && b < a) std::swap(a, b);
  std::string mod;
  if (interaction.modification) mod = NormalizeSurface(interaction.modification->type);
  std::string out = table.FamilyOf(interaction);
  out += "|" + a + "|" + b + "|" + mod;
  out += interaction.negative_information ? "|not" : "|";
  return out;
}

std::string CardSignature(const IndexCard& card, const EquivalenceTable& table) {
  return InteractionSignature(card.interaction, table);
}

}  // namespace mecheval
