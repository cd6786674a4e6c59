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

#include "mecheval/equivalence.h"

#include <fstream>

#include "mecheval/text.h"

namespace mecheval {

using nlohmann::json;

namespace {

// Keep in sync with core/data/equivalence_default.json; a unit test compares
// the two.
constexpr const char kDefaultTable[] = R"json({
  "version": "1",
  "families": [
    {
      "name": "MOD_FAMILY",
      "members": [
        "adds_modification",
        "inhibits_modification",
        "increases_modified_form",
        "decreases_modified_form",
        "increases_activity",
        "decreases_activity"
      ]
    },
    {"name": "BINDS", "members": ["binds"]},
    {"name": "TRANSLOCATES", "members": ["translocates"]},
    {"name": "AMOUNT", "members": ["increases", "decreases"]}
  ]
}
)json";

bool ModifiedTarget(const Participant& p) {
  const EntityRef* e = AsEntity(p);
  return e != nullptr && e->HasModificationFeature();
}

}  // namespace

std::string KindKey(const Interaction& interaction) {
  switch (interaction.kind) {
    case InteractionKind::kIncreasesAmount:
      return ModifiedTarget(interaction.participant_b) ? "increases_modified_form" : "increases";
    case InteractionKind::kDecreasesAmount:
      return ModifiedTarget(interaction.participant_b) ? "decreases_modified_form" : "decreases";
    default:
      return std::string(InteractionKindToken(interaction.kind));
  }
}

const char* EquivalenceTable::DefaultJson() { return kDefaultTable; }

const EquivalenceTable& EquivalenceTable::Default() {
  static const EquivalenceTable* table = [] {
    auto parsed = FromJson(json::parse(kDefaultTable));
    return new EquivalenceTable(std::move(parsed).value());
  }();
  return *table;
}

Result<EquivalenceTable> EquivalenceTable::FromJson(const json& doc) {
  if (!doc.is_object()) {
    return MakeError(ErrorCode::kMalformedDocument, "", "equivalence table must be an object");
  }
  ErrorList errors;
  EquivalenceTable table;
  if (auto it = doc.find("version"); it != doc.end() && it->is_string()) {
    table.version_ = it->get<std::string>();
  } else {
    errors.push_back(MakeError(ErrorCode::kMissingField, "version"));
  }
  auto families = doc.find("families");
  if (families == doc.end() || !families->is_array()) {
    errors.push_back(MakeError(ErrorCode::kMissingField, "families"));
    return errors;
  }
  for (size_t i = 0; i < families->size(); ++i) {
    const json& f = (*families)[i];
    std::string path = "families[" + std::to_string(i) + "]";
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string() ||
        !f.contains("members") || !f["members"].is_array()) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, path, "expected {name, members}"));
      continue;
    }
    Family family;
    family.name = f["name"].get<std::string>();
    for (const json& m : f["members"]) {
      if (!m.is_string()) {
        errors.push_back(MakeError(ErrorCode::kMalformedDocument, path + ".members", m.dump()));
        continue;
      }
      std::string key = AsciiLower(Trim(m.get<std::string>()));
      auto [pos, inserted] = table.family_of_.emplace(key, family.name);
      if (!inserted) {
        errors.push_back(MakeError(ErrorCode::kDuplicateId, path + ".members", key));
        continue;
      }
      family.members.push_back(std::move(key));
    }
    table.families_.push_back(std::move(family));
  }
  if (!errors.empty()) return errors;
  return table;
}

Result<EquivalenceTable> EquivalenceTable::Load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return MakeError(ErrorCode::kMissingInput, file.string(), "cannot open");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) return MakeError(ErrorCode::kMalformedDocument, file.string(), "not valid JSON");
  return FromJson(doc);
}

std::string EquivalenceTable::FamilyOf(std::string_view kind_key) const {
  auto it = family_of_.find(kind_key);
  if (it != family_of_.end()) return it->second;
  return std::string(kind_key);
}

json EquivalenceTable::ToJson() const {
  json families = json::array();
  for (const Family& f : families_) {
    families.push_back(json{{"name", f.name}, {"members", f.members}});
  }
  return json{{"version", version_}, {"families", std::move(families)}};
}

}  // namespace mecheval
