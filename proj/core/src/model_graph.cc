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

#include "mecheval/model_graph.h"

#include <fstream>

#include "mecheval/text.h"

namespace mecheval {

using nlohmann::json;

std::string_view RoleToken(Role role) {
  switch (role) {
    case Role::kKinase: return "kinase";
    case Role::kPhosphatase: return "phosphatase";
    case Role::kTranscriptionFactor: return "transcription_factor";
    case Role::kDrug: return "drug";
    case Role::kOther: return "other";
  }
  return "";
}

std::optional<Role> ParseRole(std::string_view token) {
  std::string t = AsciiLower(Trim(token));
  for (Role r : {Role::kKinase, Role::kPhosphatase, Role::kTranscriptionFactor, Role::kDrug,
                 Role::kOther}) {
    if (RoleToken(r) == t) return r;
  }
  return std::nullopt;
}

namespace {

std::string_view EffectToken(EdgeEffect e) {
  switch (e) {
    case EdgeEffect::kUnspecified: return "";
    case EdgeEffect::kActivating: return "activating";
    case EdgeEffect::kDeactivating: return "deactivating";
  }
  return "";
}

json ProvenanceToJson(const Provenance& p) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MachineReading>) {
          return json{{"type", "reading"},
                      {"doc_id", v.doc_id},
                      {"evidence", v.evidence},
                      {"reader_id", v.reader_id}};
        } else if constexpr (std::is_same_v<T, CuratedDatabase>) {
          return json{{"type", "database"}, {"db_name", v.db_name}, {"record_id", v.record_id}};
        } else {
          return json{{"type", "manual"}, {"curator_id", v.curator_id}, {"note", v.note}};
        }
      },
      p);
}

std::string Str(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

std::optional<Grounding> GroundingFromString(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;
  size_t colon = text.find(':');
  if (colon == std::string_view::npos) return Grounding{GroundingNamespace::kNone, std::string(text)};
  std::string ns = AsciiLower(text.substr(0, colon));
  GroundingNamespace parsed = GroundingNamespace::kNone;
  if (ns == "uniprot") {
    parsed = GroundingNamespace::kUniProt;
  } else if (ns == "hgnc") {
    parsed = GroundingNamespace::kHgnc;
  } else if (ns == "pubchem") {
    parsed = GroundingNamespace::kPubChem;
  } else if (ns == "go") {
    parsed = GroundingNamespace::kGo;
  } else {
    return Grounding{GroundingNamespace::kNone, std::string(text)};
  }
  return Grounding{parsed, std::string(text.substr(colon + 1))};
}

}  // namespace

std::optional<int> DeriveSign(InteractionKind kind, EdgeEffect effect, bool* defaulted) {
  if (defaulted != nullptr) *defaulted = false;
  switch (kind) {
    case InteractionKind::kIncreasesAmount:
    case InteractionKind::kIncreasesActivity:
      return 1;
    case InteractionKind::kDecreasesAmount:
    case InteractionKind::kDecreasesActivity:
      return -1;
    case InteractionKind::kAddsModification:
    case InteractionKind::kInhibitsModification: {
      int base = kind == InteractionKind::kAddsModification ? 1 : -1;
      if (effect == EdgeEffect::kUnspecified && defaulted != nullptr) *defaulted = true;
      return effect == EdgeEffect::kDeactivating ? -base : base;
    }
    case InteractionKind::kBinds:
      if (effect == EdgeEffect::kActivating) return 1;
      if (effect == EdgeEffect::kDeactivating) return -1;
      return std::nullopt;
    case InteractionKind::kTranslocates:
      return std::nullopt;
  }
  return std::nullopt;
}

int ProvenanceClass(const ModelInteraction& edge) {
  int mask = 0;
  for (const Provenance& p : edge.provenance) {
    if (std::holds_alternative<MachineReading>(p)) mask |= 1;
    if (std::holds_alternative<CuratedDatabase>(p)) mask |= 2;
    if (std::holds_alternative<ManualCuration>(p)) mask |= 4;
  }
  return mask;
}

std::string ProvenanceClassName(int mask) {
  static constexpr const char* kNames[] = {"reading", "database", "manual"};
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if ((mask & (1 << i)) == 0) continue;
    if (!out.empty()) out += "+";
    out += kNames[i];
  }
  return out.empty() ? "none" : out;
}

const ModelEntity* MechModel::FindEntity(std::string_view id) const {
  for (const ModelEntity& e : entities_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const ModelInteraction* MechModel::FindInteraction(std::string_view id) const {
  for (const ModelInteraction& i : interactions_) {
    if (i.id == id) return &i;
  }
  return nullptr;
}

const CellContext* MechModel::FindContext(std::string_view cell_line) const {
  auto it = contexts_.find(std::string(cell_line));
  return it == contexts_.end() ? nullptr : &it->second;
}

std::optional<std::string> MechModel::ResolveEntity(std::string_view ref) const {
  if (FindEntity(ref) != nullptr) return std::string(ref);
  std::string needle = NormalizeSurface(ref);
  for (const ModelEntity& e : entities_) {
    if (NormalizeSurface(e.id) == needle || NormalizeSurface(e.name) == needle) return e.id;
    if (e.grounding && NormalizeSurface(e.grounding->ToString()) == needle) return e.id;
  }
  return std::nullopt;
}

Result<std::vector<const ModelInteraction*>> MechModel::EdgesBetween(std::string_view source,
                                                                     std::string_view target) const {
  ErrorList errors;
  if (FindEntity(source) == nullptr) errors.push_back(MakeError(ErrorCode::kUnknownEntity, std::string(source)));
  if (FindEntity(target) == nullptr) errors.push_back(MakeError(ErrorCode::kUnknownEntity, std::string(target)));
  if (!errors.empty()) return errors;
  std::vector<const ModelInteraction*> out;
  for (const ModelInteraction& i : interactions_) {
    bool forward = i.source == source && i.target == target;
    bool backward = i.kind == InteractionKind::kBinds && i.source == target && i.target == source;
    if (forward || backward) out.push_back(&i);
  }
  return out;
}

json MechModel::ToJson() const {
  json entities = json::array();
  for (const ModelEntity& e : entities_) {
    json ej{{"id", e.id}, {"name", e.name}};
    if (e.grounding) ej["grounding"] = e.grounding->ToString();
    json roles = json::array();
    for (Role r : e.roles) roles.push_back(RoleToken(r));
    ej["roles"] = std::move(roles);
    entities.push_back(std::move(ej));
  }
  json interactions = json::array();
  for (const ModelInteraction& i : interactions_) {
    json ij{{"id", i.id},
            {"source", i.source},
            {"target", i.target},
            {"kind", InteractionKindToken(i.kind)}};
    if (i.modification) ij["modification"] = *i.modification;
    if (i.effect != EdgeEffect::kUnspecified) ij["effect"] = EffectToken(i.effect);
    if (i.sign) ij["sign"] = *i.sign;
    json prov = json::array();
    for (const Provenance& p : i.provenance) prov.push_back(ProvenanceToJson(p));
    ij["provenance"] = std::move(prov);
    interactions.push_back(std::move(ij));
  }
  json contexts = json::array();
  for (const auto& [line, c] : contexts_) {
    json cj{{"cell_line", line}, {"knockouts", c.knockouts}};
    json muts = json::array();
    for (const MutationNote& m : c.mutations) {
      muts.push_back(json{{"entity", m.entity}, {"description", m.description}});
    }
    cj["mutations"] = std::move(muts);
    if (c.expression) cj["expression"] = *c.expression;
    contexts.push_back(std::move(cj));
  }
  return json{{"id", id_},
              {"entities", std::move(entities)},
              {"interactions", std::move(interactions)},
              {"contexts", std::move(contexts)}};
}

Result<MechModel> MechModel::FromJson(const json& doc, std::vector<std::string>* warnings) {
  if (!doc.is_object()) return MakeError(ErrorCode::kMalformedDocument, "", "model must be an object");
  auto warn = [warnings](std::string message) {
    if (warnings != nullptr) warnings->push_back(std::move(message));
  };
  ErrorList errors;
  MechModel model;
  model.id_ = Str(doc, "id");
  if (model.id_.empty()) errors.push_back(MakeError(ErrorCode::kMissingField, "id"));

  std::set<std::string> entity_ids;
  const json& entities = doc.value("entities", json::array());
  for (size_t n = 0; n < entities.size(); ++n) {
    const json& ej = entities[n];
    std::string path = "entities[" + std::to_string(n) + "]";
    ModelEntity e;
    e.id = Str(ej, "id");
    if (e.id.empty()) {
      errors.push_back(MakeError(ErrorCode::kMissingField, path + ".id"));
      continue;
    }
    if (!entity_ids.insert(e.id).second) {
      errors.push_back(MakeError(ErrorCode::kDuplicateId, path, e.id));
      continue;
    }
    e.name = Str(ej, "name");
    if (e.name.empty()) e.name = e.id;
    e.grounding = GroundingFromString(Str(ej, "grounding"));
    for (const json& r : ej.value("roles", json::array())) {
      auto role = r.is_string() ? ParseRole(r.get<std::string>()) : std::nullopt;
      if (!role) {
        errors.push_back(MakeError(ErrorCode::kBadEnumValue, path + ".roles", r.dump()));
        continue;
      }
      e.roles.insert(*role);
    }
    model.entities_.push_back(std::move(e));
  }

  std::set<std::string> edge_ids;
  const json& interactions = doc.value("interactions", json::array());
  for (size_t n = 0; n < interactions.size(); ++n) {
    const json& ij = interactions[n];
    std::string path = "interactions[" + std::to_string(n) + "]";
    ModelInteraction i;
    i.id = Str(ij, "id");
    if (i.id.empty()) {
      errors.push_back(MakeError(ErrorCode::kMissingField, path + ".id"));
      continue;
    }
    if (!edge_ids.insert(i.id).second) {
      errors.push_back(MakeError(ErrorCode::kDuplicateId, path, i.id));
      continue;
    }
    i.source = Str(ij, "source");
    i.target = Str(ij, "target");
    for (const std::string* end : {&i.source, &i.target}) {
      if (entity_ids.count(*end) == 0) {
        errors.push_back(MakeError(ErrorCode::kDanglingEndpoint, i.id, *end));
      }
    }
    std::string kind = Str(ij, "kind");
    if (auto k = ParseInteractionKind(kind)) {
      i.kind = *k;
    } else {
      errors.push_back(MakeError(ErrorCode::kBadEnumValue, path + ".kind", kind));
      continue;
    }
    if (std::string mod = Str(ij, "modification"); !mod.empty()) i.modification = mod;
    std::string effect = AsciiLower(Str(ij, "effect"));
    if (effect == "activating") {
      i.effect = EdgeEffect::kActivating;
    } else if (effect == "deactivating") {
      i.effect = EdgeEffect::kDeactivating;
    } else if (!effect.empty()) {
      errors.push_back(MakeError(ErrorCode::kBadEnumValue, path + ".effect", effect));
    }
    bool defaulted = false;
    i.sign = DeriveSign(i.kind, i.effect, &defaulted);
    if (defaulted) warn(i.id + ": modification edge without effect annotation treated as activating");
    if (auto s = ij.find("sign"); s != ij.end() && !s->is_null()) {
      std::optional<int> declared;
      if (s->is_number_integer()) declared = s->get<int>();
      if (declared != i.sign) {
        errors.push_back(MakeError(ErrorCode::kSignMismatch, i.id,
                                   "declared " + s->dump() + ", derived " +
                                       (i.sign ? std::to_string(*i.sign) : "none")));
      }
    }
    const json& prov = ij.value("provenance", json::array());
    for (size_t p = 0; p < prov.size(); ++p) {
      const json& pj = prov[p];
      std::string type = AsciiLower(Str(pj, "type"));
      if (type == "reading") {
        MachineReading r{Str(pj, "doc_id"), {}, Str(pj, "reader_id")};
        for (const json& s : pj.value("evidence", json::array())) {
          if (s.is_string() && !Trim(s.get<std::string>()).empty()) r.evidence.push_back(s.get<std::string>());
        }
        if (r.evidence.empty()) warn(i.id + ": machine-reading provenance without evidence");
        i.provenance.push_back(std::move(r));
      } else if (type == "database") {
        i.provenance.push_back(CuratedDatabase{Str(pj, "db_name"), Str(pj, "record_id")});
      } else if (type == "manual") {
        i.provenance.push_back(ManualCuration{Str(pj, "curator_id"), Str(pj, "note")});
      } else {
        errors.push_back(MakeError(ErrorCode::kBadEnumValue,
                                   path + ".provenance[" + std::to_string(p) + "].type", type));
      }
    }
    if (prov.empty()) errors.push_back(MakeError(ErrorCode::kMissingProvenance, i.id));
    model.interactions_.push_back(std::move(i));
  }

  const json& contexts = doc.value("contexts", json::array());
  for (size_t n = 0; n < contexts.size(); ++n) {
    const json& cj = contexts[n];
    std::string path = "contexts[" + std::to_string(n) + "]";
    CellContext c;
    c.cell_line = Str(cj, "cell_line");
    if (c.cell_line.empty()) {
      errors.push_back(MakeError(ErrorCode::kMissingField, path + ".cell_line"));
      continue;
    }
    for (const json& k : cj.value("knockouts", json::array())) {
      std::string id = k.is_string() ? k.get<std::string>() : k.dump();
      if (entity_ids.count(id) == 0) {
        errors.push_back(MakeError(ErrorCode::kUnknownEntity, path + ".knockouts", id));
        continue;
      }
      c.knockouts.insert(id);
    }
    for (const json& m : cj.value("mutations", json::array())) {
      c.mutations.push_back(MutationNote{Str(m, "entity"), Str(m, "description")});
    }
    if (auto e = cj.find("expression"); e != cj.end() && e->is_object()) {
      std::map<std::string, double> levels;
      for (auto it = e->begin(); it != e->end(); ++it) {
        if (it.value().is_number()) levels[it.key()] = it.value().get<double>();
      }
      c.expression = std::move(levels);
    }
    if (!model.contexts_.emplace(c.cell_line, c).second) {
      errors.push_back(MakeError(ErrorCode::kDuplicateId, path, c.cell_line));
    }
  }

  if (!errors.empty()) return errors;
  return model;
}

MechModel MechModel::Unchecked(std::string id, std::vector<ModelEntity> entities,
                               std::vector<ModelInteraction> interactions,
                               std::map<std::string, CellContext> contexts) {
  MechModel model;
  model.id_ = std::move(id);
  model.entities_ = std::move(entities);
  model.interactions_ = std::move(interactions);
  model.contexts_ = std::move(contexts);
  return model;
}

Result<MechModel> MechModel::Load(const std::filesystem::path& file,
                                  std::vector<std::string>* warnings) {
  std::ifstream in(file);
  if (!in) return MakeError(ErrorCode::kMissingInput, file.string(), "cannot open");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) return MakeError(ErrorCode::kMalformedDocument, file.string(), "not valid JSON");
  return FromJson(doc, warnings);
}

}  // namespace mecheval
