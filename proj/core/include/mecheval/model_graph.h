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

#ifndef MECHEVAL_MODEL_GRAPH_H_
#define MECHEVAL_MODEL_GRAPH_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/card.h"
#include "mecheval/status.h"

namespace mecheval {

enum class Role { kKinase, kPhosphatase, kTranscriptionFactor, kDrug, kOther };

std::string_view RoleToken(Role role);
std::optional<Role> ParseRole(std::string_view token);

struct ModelEntity {
  std::string id;
  std::string name;
  std::optional<Grounding> grounding;
  std::set<Role> roles;
  friend bool operator==(const ModelEntity&, const ModelEntity&) = default;
};

struct MachineReading {
  std::string doc_id;
  std::vector<std::string> evidence;
  std::string reader_id;
  friend bool operator==(const MachineReading&, const MachineReading&) = default;
};

struct CuratedDatabase {
  std::string db_name;
  std::string record_id;
  friend bool operator==(const CuratedDatabase&, const CuratedDatabase&) = default;
};

struct ManualCuration {
  std::string curator_id;
  std::string note;
  friend bool operator==(const ManualCuration&, const ManualCuration&) = default;
};

using Provenance = std::variant<MachineReading, CuratedDatabase, ManualCuration>;

enum class EdgeEffect { kUnspecified, kActivating, kDeactivating };

struct ModelInteraction {
  std::string id;
  std::string source;
  std::string target;
  InteractionKind kind = InteractionKind::kIncreasesAmount;
  std::optional<std::string> modification;  // "phosphorylation"
  EdgeEffect effect = EdgeEffect::kUnspecified;
  // +1 or -1; absent for edges that carry no sign (translocation, plain
  // binding).
  std::optional<int> sign;
  std::vector<Provenance> provenance;
  friend bool operator==(const ModelInteraction&, const ModelInteraction&) = default;
};

struct MutationNote {
  std::string entity;
  std::string description;
  friend bool operator==(const MutationNote&, const MutationNote&) = default;
};

struct CellContext {
  std::string cell_line;
  std::set<std::string> knockouts;
  std::vector<MutationNote> mutations;
  std::optional<std::map<std::string, double>> expression;
  friend bool operator==(const CellContext&, const CellContext&) = default;
};

// Sign implied by kind and effect annotation. Phosphorylation without an
// annotation counts as activating and sets `*defaulted`.
std::optional<int> DeriveSign(InteractionKind kind, EdgeEffect effect, bool* defaulted = nullptr);

class MechModel {
 public:
  const std::string& id() const { return id_; }
  const std::vector<ModelEntity>& entities() const { return entities_; }
  const std::vector<ModelInteraction>& interactions() const { return interactions_; }
  const std::map<std::string, CellContext>& contexts() const { return contexts_; }

  const ModelEntity* FindEntity(std::string_view id) const;
  const ModelInteraction* FindInteraction(std::string_view id) const;
  const CellContext* FindContext(std::string_view cell_line) const;
  // Entity id whose id, name or grounding matches `ref` (case-insensitive).
  std::optional<std::string> ResolveEntity(std::string_view ref) const;

  // Directed edges source -> target; binds edges match in either direction.
  Result<std::vector<const ModelInteraction*>> EdgesBetween(std::string_view source,
                                                            std::string_view target) const;

  nlohmann::json ToJson() const;
  // Returns the model or every violation found. Non-fatal findings go to
  // `warnings`.
  static Result<MechModel> FromJson(const nlohmann::json& doc,
                                    std::vector<std::string>* warnings = nullptr);
  static Result<MechModel> Load(const std::filesystem::path& file,
                                std::vector<std::string>* warnings = nullptr);

  // Assembles a model without validation; for generated graphs and tests.
  static MechModel Unchecked(std::string id, std::vector<ModelEntity> entities,
                             std::vector<ModelInteraction> interactions,
                             std::map<std::string, CellContext> contexts = {});

  friend bool operator==(const MechModel&, const MechModel&) = default;

 private:
  std::string id_;
  std::vector<ModelEntity> entities_;
  std::vector<ModelInteraction> interactions_;
  std::map<std::string, CellContext> contexts_;
};

// Exclusive provenance class of an edge as a bit set over
// {reading = 1, database = 2, manual = 4}.
int ProvenanceClass(const ModelInteraction& edge);
std::string ProvenanceClassName(int mask);  // "reading", "database+manual", ...

}  // namespace mecheval

#endif  // MECHEVAL_MODEL_GRAPH_H_
