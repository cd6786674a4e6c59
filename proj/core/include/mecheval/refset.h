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

#ifndef MECHEVAL_REFSET_H_
#define MECHEVAL_REFSET_H_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/card.h"
#include "mecheval/equivalence.h"
#include "mecheval/status.h"

namespace mecheval {

enum class RefCategory { kDirectPhosphoBind, kOtherDirect, kIndirect, kComplexComposite };

std::string_view RefCategoryToken(RefCategory category);
std::optional<RefCategory> ParseRefCategory(std::string_view token);

// Phosphorylation, dephosphorylation and binding are kDirectPhosphoBind; an
// interaction embedded as participant A ("A when bound to B phosphorylates
// C") is kComplexComposite; one embedded as participant B ("A increases B
// phosphorylating C") is kIndirect; everything else is kOtherDirect.
RefCategory DeriveCategory(const Interaction& interaction);

struct ReferenceInteraction {
  std::string id;
  std::string paper_id;
  Interaction interaction;
  RefCategory category = RefCategory::kDirectPhosphoBind;
  std::set<std::string> found_by;
  std::vector<std::string> components;  // ids of the embedded parts

  nlohmann::json ToJson() const;
  static Result<ReferenceInteraction> FromJson(const nlohmann::json& doc,
                                               const std::string& path = "");
  friend bool operator==(const ReferenceInteraction&, const ReferenceInteraction&) = default;
};

struct CuratorInteraction {
  std::string paper_id;
  Interaction interaction;
};

struct CuratorSet {
  std::string curator_id;
  std::vector<CuratorInteraction> interactions;
};

// Key under which two interactions count as the same finding: family plus
// participants, with the participant pair sorted for binds and translocates.
std::string AgreementKey(const Interaction& interaction,
                         const EquivalenceTable& table = EquivalenceTable::Default());

// Keeps interactions found by at least `min_agreement` curators. Output is
// ordered by paper then agreement key; ids are "<paper>/ref<n>".
Result<std::vector<ReferenceInteraction>> MergeConsensus(
    const std::vector<CuratorSet>& curator_sets, int min_agreement = 2,
    const EquivalenceTable& table = EquivalenceTable::Default());

// Splits an interaction with embedded content into its parts. The returned
// list starts with `ref` (components filled in) followed by parts that do
// not already appear in `existing`. Direct interactions come back alone.
std::vector<ReferenceInteraction> ExpandEmbedded(
    const ReferenceInteraction& ref, const std::vector<ReferenceInteraction>& existing = {},
    const EquivalenceTable& table = EquivalenceTable::Default());

// ExpandEmbedded over a whole set, preserving order.
std::vector<ReferenceInteraction> ExpandAll(
    const std::vector<ReferenceInteraction>& refs,
    const EquivalenceTable& table = EquivalenceTable::Default());

// Reference-set file: {"references": [...]} or a bare array.
Result<std::vector<ReferenceInteraction>> LoadReferenceSet(const std::filesystem::path& file);
nlohmann::json ReferenceSetToJson(const std::vector<ReferenceInteraction>& refs);
std::string ReferenceSetToTsv(const std::vector<ReferenceInteraction>& refs);

// Curator file: {"curator_id": "...", "interactions": [{"paper_id": ..., <interaction fields>}]}
Result<CuratorSet> LoadCuratorSet(const std::filesystem::path& file);

}  // namespace mecheval

#endif  // MECHEVAL_REFSET_H_
