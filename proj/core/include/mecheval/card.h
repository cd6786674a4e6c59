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

#ifndef MECHEVAL_CARD_H_
#define MECHEVAL_CARD_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/status.h"

namespace mecheval {

// ---------------------------------------------------------------------------
// Entities

enum class EntityType { kProtein, kChemical, kGene, kProteinFamily, kComplexMember };

enum class GroundingNamespace { kUniProt, kHgnc, kPubChem, kGo, kNone };

struct Grounding {
  GroundingNamespace ns = GroundingNamespace::kNone;
  std::string identifier;

  // "UniProt:P52333"
  std::string ToString() const;
  friend bool operator==(const Grounding&, const Grounding&) = default;
};

// True when both groundings name the same record; identifiers compare
// case-insensitively.
bool SameGrounding(const Grounding& a, const Grounding& b);

// One modification site. Positions written as "Y63" split into residue and
// integer; anything else is kept verbatim in `raw` with no position.
struct Site {
  std::string residue;
  std::optional<int> position;
  std::string raw;

  bool opaque() const { return !position.has_value(); }
  friend bool operator==(const Site&, const Site&) = default;
};

enum class FeatureKind { kModification, kIsoform, kMutant };

struct Feature {
  FeatureKind kind = FeatureKind::kModification;
  // Modification type ("phosphorylation"), isoform tag or mutant tag.
  std::string label;
  std::vector<Site> sites;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct EntityRef {
  std::string text;
  EntityType type = EntityType::kProtein;
  std::optional<Grounding> grounding;
  std::vector<Feature> features;
  // Absent when the card did not say; such participants are not scoreable
  // for in-model errors.
  std::optional<bool> in_model;

  bool HasModificationFeature() const;
  friend bool operator==(const EntityRef&, const EntityRef&) = default;
};

// ---------------------------------------------------------------------------
// Participants and interactions

struct Interaction;

struct BlankParticipant {
  friend bool operator==(const BlankParticipant&, const BlankParticipant&) = default;
};

struct GenericParticipant {
  std::string label;
  friend bool operator==(const GenericParticipant&, const GenericParticipant&) = default;
};

struct ComplexParticipant {
  std::vector<EntityRef> members;  // at least two
  friend bool operator==(const ComplexParticipant&, const ComplexParticipant&) = default;
};

// An interaction used as a participant, e.g. the bracketed part of
// "A increases [B phosphorylates C]". Immutable once built, so sharing the
// pointee between copies keeps value semantics.
struct EmbeddedParticipant {
  std::shared_ptr<const Interaction> interaction;
  friend bool operator==(const EmbeddedParticipant& a, const EmbeddedParticipant& b);
};

using Participant = std::variant<BlankParticipant, EntityRef, ComplexParticipant,
                                 EmbeddedParticipant, GenericParticipant>;

inline bool IsBlank(const Participant& p) {
  return std::holds_alternative<BlankParticipant>(p);
}
inline const EntityRef* AsEntity(const Participant& p) { return std::get_if<EntityRef>(&p); }

enum class InteractionKind {
  kBinds,
  kAddsModification,
  kInhibitsModification,
  kTranslocates,
  kIncreasesAmount,
  kDecreasesAmount,
  kIncreasesActivity,
  kDecreasesActivity,
};

// Wire tokens: "binds", "adds_modification", "inhibits_modification",
// "translocates", "increases", "decreases", "increases_activity",
// "decreases_activity".
std::string_view InteractionKindToken(InteractionKind kind);
std::optional<InteractionKind> ParseInteractionKind(std::string_view token);

// Binds and translocates allow participants to be read in either order.
bool IsSymmetricKind(InteractionKind kind);

struct Modification {
  std::string type;  // "phosphorylation"
  std::vector<Site> sites;
  friend bool operator==(const Modification&, const Modification&) = default;
};

struct Interaction {
  InteractionKind kind = InteractionKind::kBinds;
  Participant participant_a;
  Participant participant_b;
  bool negative_information = false;
  // Kind-specific subfields.
  std::optional<std::string> binding_site;   // kBinds
  std::optional<Modification> modification;  // kAddsModification, kInhibitsModification
  std::optional<std::string> from_location;  // kTranslocates, GO cellular component
  std::optional<std::string> to_location;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

Participant Embed(Interaction interaction);

// ---------------------------------------------------------------------------
// Cards

enum class SourceType { kHuman, kMachine, kHumanMachine };

enum class ModelRelationKind { kExtension, kSpecification, kCorroboration, kConflicting };

struct ModelRelation {
  ModelRelationKind kind = ModelRelationKind::kExtension;
  std::optional<std::string> element_id;
  friend bool operator==(const ModelRelation&, const ModelRelation&) = default;
};

struct EvidenceSpan {
  std::string text;
  std::optional<std::string> section;
  std::optional<std::string> figure;
  friend bool operator==(const EvidenceSpan&, const EvidenceSpan&) = default;
};

struct IndexCard {
  std::string card_id;
  std::string paper_id;
  std::string source;
  SourceType source_type = SourceType::kMachine;
  std::string timestamp;
  Interaction interaction;
  ModelRelation model_relation;
  std::vector<EvidenceSpan> evidence;
  std::optional<int> rank;
  // Unrecognized top-level fields, carried through unchanged.
  nlohmann::json extras = nlohmann::json::object();

  friend bool operator==(const IndexCard&, const IndexCard&) = default;
};

enum class SubmissionCondition { kMachineOnly, kHumanMachine, kHumanOnly };

struct Submission {
  std::string team_id;
  SubmissionCondition condition = SubmissionCondition::kMachineOnly;
  std::vector<IndexCard> cards;  // grouped by paper_id, input order within a paper

  std::vector<std::string> PaperIds() const;
  std::vector<IndexCard> CardsForPaper(std::string_view paper_id) const;
};

// ---------------------------------------------------------------------------
// Parsing and serialization

// Parses one card document. On failure every violation found is returned,
// not just the first. Non-fatal findings (opaque site positions, a protein
// grounded to GO) are appended to `warnings` when it is non-null.
Result<IndexCard> ParseCard(std::string_view raw, std::vector<std::string>* warnings = nullptr);
Result<IndexCard> ParseCardJson(const nlohmann::json& doc,
                                std::vector<std::string>* warnings = nullptr);

// Validation applied by the parser, exposed for cards built in code.
ErrorList ValidateCard(const IndexCard& card);

nlohmann::json CardToJson(const IndexCard& card);
std::string SerializeCard(const IndexCard& card);

nlohmann::json InteractionToJson(const Interaction& interaction);
Result<Interaction> ParseInteractionJson(const nlohmann::json& doc, const std::string& path = "");

nlohmann::json ParticipantToJson(const Participant& participant);

// "Y63" -> {Y, 63}; "200" -> {"", 200}; anything else is opaque.
Site ParseSite(std::string_view text);

std::string_view SourceTypeToken(SourceType type);
std::string_view ModelRelationToken(ModelRelationKind kind);
std::string_view EntityTypeToken(EntityType type);
std::string_view SubmissionConditionToken(SubmissionCondition condition);
std::optional<SubmissionCondition> ParseSubmissionCondition(std::string_view token);

// Short human-readable rendering, e.g. "EphB1 binds Grb7".
std::string DescribeInteraction(const Interaction& interaction);
std::string DescribeParticipant(const Participant& participant);

// Loads a submission laid out as <dir>/<paper_id>/*.card.json. An optional
// <dir>/submission.json supplies {"team_id", "condition"}; otherwise the
// directory name is the team id. Cards without a card_id get
// "<paper_id>/<file stem>". Parse failures are collected across all files.
Result<Submission> LoadSubmission(const std::filesystem::path& dir,
                                  std::vector<std::string>* warnings = nullptr);

// Reads a JSON array of card documents (fixture and export format).
Result<std::vector<IndexCard>> LoadCardArray(const std::filesystem::path& file);

}  // namespace mecheval

#endif  // MECHEVAL_CARD_H_
