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

#include "mecheval/refset.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "mecheval/signature.h"
#include "mecheval/text.h"

namespace mecheval {

using nlohmann::json;

std::string_view RefCategoryToken(RefCategory category) {
  switch (category) {
    case RefCategory::kDirectPhosphoBind: return "direct_phospho_bind";
    case RefCategory::kOtherDirect: return "other_direct";
    case RefCategory::kIndirect: return "indirect";
    case RefCategory::kComplexComposite: return "complex_composite";
  }
  return "";
}

std::optional<RefCategory> ParseRefCategory(std::string_view token) {
  for (RefCategory c : {RefCategory::kDirectPhosphoBind, RefCategory::kOtherDirect,
                        RefCategory::kIndirect, RefCategory::kComplexComposite}) {
    if (RefCategoryToken(c) == token) return c;
  }
  return std::nullopt;
}

namespace {

bool IsEmbedded(const Participant& p) { return std::holds_alternative<EmbeddedParticipant>(p); }

const Interaction& Inner(const Participant& p) {
  return *std::get<EmbeddedParticipant>(p).interaction;
}

bool PhosphoType(const Interaction& in) {
  if (!in.modification) return false;
  std::string t = NormalizeSurface(in.modification->type);
  return t == "phosphorylation" || t == "dephosphorylation";
}

}  // namespace

RefCategory DeriveCategory(const Interaction& in) {
  if (IsEmbedded(in.participant_a)) return RefCategory::kComplexComposite;
  if (IsEmbedded(in.participant_b)) return RefCategory::kIndirect;
  if (in.kind == InteractionKind::kBinds) return RefCategory::kDirectPhosphoBind;
  if ((in.kind == InteractionKind::kAddsModification ||
       in.kind == InteractionKind::kInhibitsModification) &&
      PhosphoType(in)) {
    return RefCategory::kDirectPhosphoBind;
  }
  return RefCategory::kOtherDirect;
}

json ReferenceInteraction::ToJson() const {
  return json{{"id", id},
              {"paper_id", paper_id},
              {"category", RefCategoryToken(category)},
              {"found_by", found_by},
              {"components", components},
              {"interaction", InteractionToJson(interaction)}};
}

Result<ReferenceInteraction> ReferenceInteraction::FromJson(const json& doc,
                                                            const std::string& path) {
  if (!doc.is_object()) return MakeError(ErrorCode::kMalformedDocument, path, "expected object");
  ErrorList errors;
  ReferenceInteraction ref;
  auto str = [&](const char* key, bool required) -> std::string {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_string()) {
      if (required) errors.push_back(MakeError(ErrorCode::kMissingField, path + "." + key));
      return {};
    }
    return it->get<std::string>();
  };
  ref.id = str("id", true);
  ref.paper_id = str("paper_id", true);
  auto it = doc.find("interaction");
  if (it == doc.end()) {
    errors.push_back(MakeError(ErrorCode::kMissingField, path + ".interaction"));
  } else {
    auto in = ParseInteractionJson(*it, path + ".interaction");
    if (in.ok()) {
      ref.interaction = *in;
    } else {
      errors.insert(errors.end(), in.errors().begin(), in.errors().end());
    }
  }
  std::string cat = str("category", false);
  if (cat.empty()) {
    ref.category = DeriveCategory(ref.interaction);
  } else if (auto c = ParseRefCategory(cat)) {
    ref.category = *c;
  } else {
    errors.push_back(MakeError(ErrorCode::kBadEnumValue, path + ".category", cat));
  }
  if (auto f = doc.find("found_by"); f != doc.end() && f->is_array()) {
    for (const json& c : *f) {
      if (c.is_string()) ref.found_by.insert(c.get<std::string>());
    }
  }
  if (auto c = doc.find("components"); c != doc.end() && c->is_array()) {
    for (const json& id : *c) {
      if (id.is_string()) ref.components.push_back(id.get<std::string>());
    }
  }
  if (!errors.empty()) return errors;
  return ref;
}

std::string AgreementKey(const Interaction& in, const EquivalenceTable& table) {
  std::string a = CanonicalParticipant(in.participant_a, table);
  std::string b = CanonicalParticipant(in.participant_b, table);
  if (IsSymmetricKind(in.kind) && b < a) std::swap(a, b);
  return table.FamilyOf(in) + "|" + a + "|" + b;
}

Result<std::vector<ReferenceInteraction>> MergeConsensus(const std::vector<CuratorSet>& sets,
                                                         int min_agreement,
                                                         const EquivalenceTable& table) {
  if (sets.size() < 2) {
    return MakeError(ErrorCode::kTooFewCurators, "", std::to_string(sets.size()) + " curator set(s)");
  }
  if (min_agreement < 1) {
    return MakeError(ErrorCode::kInvalidArgument, "min_agreement", std::to_string(min_agreement));
  }
  struct Group {
    std::set<std::string> found_by;
    std::string rep_curator;
    const Interaction* rep = nullptr;
  };
  std::map<std::pair<std::string, std::string>, Group> groups;
  for (const CuratorSet& set : sets) {
    for (const CuratorInteraction& ci : set.interactions) {
      Group& g = groups[{ci.paper_id, AgreementKey(ci.interaction, table)}];
      g.found_by.insert(set.curator_id);
      // Representative: the earliest entry of the lowest curator id.
      if (g.rep == nullptr || set.curator_id < g.rep_curator) {
        g.rep = &ci.interaction;
        g.rep_curator = set.curator_id;
      }
    }
  }
  std::vector<ReferenceInteraction> out;
  std::map<std::string, int> per_paper;
  for (const auto& [key, g] : groups) {
    if (static_cast<int>(g.found_by.size()) < min_agreement) continue;
    ReferenceInteraction ref;
    ref.paper_id = key.first;
    ref.id = key.first + "/ref" + std::to_string(++per_paper[key.first]);
    ref.interaction = *g.rep;
    ref.category = DeriveCategory(ref.interaction);
    ref.found_by = g.found_by;
    out.push_back(std::move(ref));
  }
  return out;
}

std::vector<ReferenceInteraction> ExpandEmbedded(const ReferenceInteraction& ref,
                                                 const std::vector<ReferenceInteraction>& existing,
                                                 const EquivalenceTable& table) {
  const Interaction& in = ref.interaction;
  std::vector<Interaction> parts;
  if (IsEmbedded(in.participant_a)) {
    const Interaction& inner = Inner(in.participant_a);
    parts.push_back(inner);
    Interaction outer = in;
    outer.participant_a = inner.participant_a;
    parts.push_back(std::move(outer));
  }
  if (IsEmbedded(in.participant_b)) parts.push_back(Inner(in.participant_b));

  ReferenceInteraction composite = ref;
  std::vector<ReferenceInteraction> added;
  if (!parts.empty()) composite.components.clear();
  for (const Interaction& part : parts) {
    std::string key = AgreementKey(part, table);
    auto same = [&](const ReferenceInteraction& r) {
      return r.paper_id == ref.paper_id && AgreementKey(r.interaction, table) == key;
    };
    auto hit = std::find_if(existing.begin(), existing.end(), same);
    if (hit == existing.end()) {
      hit = std::find_if(added.begin(), added.end(), same);
      if (hit == added.end()) {
        ReferenceInteraction c;
        c.id = ref.id + "/" + std::to_string(added.size() + 1);
        c.paper_id = ref.paper_id;
        c.interaction = part;
        c.category = DeriveCategory(part);
        c.found_by = ref.found_by;
        added.push_back(std::move(c));
        hit = added.end() - 1;
      }
    }
    if (std::find(composite.components.begin(), composite.components.end(), hit->id) ==
        composite.components.end()) {
      composite.components.push_back(hit->id);
    }
  }
  std::vector<ReferenceInteraction> out;
  out.push_back(std::move(composite));
  out.insert(out.end(), added.begin(), added.end());
  return out;
}

std::vector<ReferenceInteraction> ExpandAll(const std::vector<ReferenceInteraction>& refs,
                                            const EquivalenceTable& table) {
  std::vector<ReferenceInteraction> out = refs;
  for (size_t i = 0; i < refs.size(); ++i) {
    auto expanded = ExpandEmbedded(refs[i], out, table);
    out[i] = expanded.front();
    out.insert(out.end(), expanded.begin() + 1, expanded.end());
  }
  return out;
}

Result<std::vector<ReferenceInteraction>> LoadReferenceSet(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return MakeError(ErrorCode::kMissingInput, file.string(), "cannot open");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) return MakeError(ErrorCode::kMalformedDocument, file.string(), "not valid JSON");
  const json* list = &doc;
  if (doc.is_object() && doc.contains("references")) list = &doc["references"];
  if (!list->is_array()) {
    return MakeError(ErrorCode::kMalformedDocument, file.string(), "expected a references array");
  }
  std::vector<ReferenceInteraction> refs;
  ErrorList errors;
  std::set<std::string> ids;
  for (size_t i = 0; i < list->size(); ++i) {
    std::string path = "references[" + std::to_string(i) + "]";
    auto ref = ReferenceInteraction::FromJson((*list)[i], path);
    if (!ref.ok()) {
      errors.insert(errors.end(), ref.errors().begin(), ref.errors().end());
      continue;
    }
    if (!ids.insert(ref->id).second) {
      errors.push_back(MakeError(ErrorCode::kDuplicateId, path, ref->id));
      continue;
    }
    refs.push_back(std::move(ref).value());
  }
  if (!errors.empty()) return errors;
  return refs;
}

json ReferenceSetToJson(const std::vector<ReferenceInteraction>& refs) {
  json list = json::array();
  for (const ReferenceInteraction& r : refs) list.push_back(r.ToJson());
  return json{{"references", std::move(list)}};
}

std::string ReferenceSetToTsv(const std::vector<ReferenceInteraction>& refs) {
  auto join = [](const auto& items) {
    std::string out;
    for (const std::string& s : items) {
      if (!out.empty()) out += ",";
      out += s;
    }
    return out;
  };
  std::ostringstream out;
  out << "id\tpaper_id\tcategory\tfound_by\tcomponents\tinteraction\n";
  for (const ReferenceInteraction& r : refs) {
    out << r.id << '\t' << r.paper_id << '\t' << RefCategoryToken(r.category) << '\t'
        << join(r.found_by) << '\t' << join(r.components) << '\t'
        << DescribeInteraction(r.interaction) << '\n';
  }
  return out.str();
}

Result<CuratorSet> LoadCuratorSet(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return MakeError(ErrorCode::kMissingInput, file.string(), "cannot open");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return MakeError(ErrorCode::kMalformedDocument, file.string(), "expected an object");
  }
  CuratorSet set;
  if (!doc.contains("curator_id") || !doc["curator_id"].is_string()) {
    return MakeError(ErrorCode::kMissingField, file.string() + ":curator_id");
  }
  set.curator_id = doc["curator_id"].get<std::string>();
  ErrorList errors;
  const json& list = doc.value("interactions", json::array());
  for (size_t i = 0; i < list.size(); ++i) {
    std::string path = "interactions[" + std::to_string(i) + "]";
    const json& item = list[i];
    if (!item.is_object() || !item.contains("paper_id") || !item["paper_id"].is_string()) {
      errors.push_back(MakeError(ErrorCode::kMissingField, path + ".paper_id"));
      continue;
    }
    auto parsed = ParseInteractionJson(item, path);
    if (!parsed.ok()) {
      errors.insert(errors.end(), parsed.errors().begin(), parsed.errors().end());
      continue;
    }
    set.interactions.push_back({item["paper_id"].get<std::string>(), std::move(parsed).value()});
  }
  if (!errors.empty()) return errors;
  return set;
}

}  // namespace mecheval
