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

#include "mecheval/card.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mecheval/text.h"

namespace mecheval {

using nlohmann::json;

namespace {

constexpr int kMaxRank = 10;

std::string Join(const std::string& path, std::string_view key) {
  if (path.empty()) return std::string(key);
  return path + "." + std::string(key);
}

std::string Index(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string Dump(const json& value) { return value.dump(); }

// Accumulates violations while a document is walked.
class Collector {
 public:
  explicit Collector(std::vector<std::string>* warnings) : warnings_(warnings) {}

  void Missing(const std::string& path) {
    errors_.push_back(MakeError(ErrorCode::kMissingField, path));
  }
  void BadValue(const std::string& path, const std::string& value) {
    errors_.push_back(MakeError(ErrorCode::kBadEnumValue, path, value));
  }
  void Malformed(const std::string& path, const std::string& detail) {
    errors_.push_back(MakeError(ErrorCode::kMalformedDocument, path, detail));
  }
  void Invariant(const std::string& path, const std::string& detail) {
    errors_.push_back(MakeError(ErrorCode::kInvariantViolation, path, detail));
  }
  void Warn(const std::string& message) {
    if (warnings_ != nullptr) warnings_->push_back(message);
  }

  bool clean() const { return errors_.empty(); }
  ErrorList take() { return std::move(errors_); }

 private:
  ErrorList errors_;
  std::vector<std::string>* warnings_;
};

const json* Find(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::optional<std::string> ReadString(const json& obj, std::string_view key,
                                      const std::string& path, Collector& c) {
  const json* v = Find(obj, key);
  if (v == nullptr) return std::nullopt;
  if (!v->is_string()) {
    c.Malformed(Join(path, key), "expected string");
    return std::nullopt;
  }
  return v->get<std::string>();
}

std::optional<bool> ReadFlag(const json& obj, std::string_view key, const std::string& path,
                             Collector& c) {
  const json* v = Find(obj, key);
  if (v == nullptr) return std::nullopt;
  if (v->is_boolean()) return v->get<bool>();
  if (v->is_string()) {
    std::string s = AsciiLower(Trim(v->get<std::string>()));
    if (s == "yes" || s == "true") return true;
    if (s == "no" || s == "false") return false;
  }
  c.BadValue(Join(path, key), Dump(*v));
  return std::nullopt;
}

std::optional<EntityType> ParseEntityType(std::string_view token) {
  std::string t = AsciiLower(token);
  if (t == "protein") return EntityType::kProtein;
  if (t == "chemical") return EntityType::kChemical;
  if (t == "gene") return EntityType::kGene;
  if (t == "protein_family" || t == "family") return EntityType::kProteinFamily;
  if (t == "complex_member") return EntityType::kComplexMember;
  return std::nullopt;
}

std::optional<GroundingNamespace> ParseNamespace(std::string_view token) {
  std::string t = AsciiLower(token);
  if (t == "uniprot") return GroundingNamespace::kUniProt;
  if (t == "hgnc") return GroundingNamespace::kHgnc;
  if (t == "pubchem") return GroundingNamespace::kPubChem;
  if (t == "go") return GroundingNamespace::kGo;
  return std::nullopt;
}

std::string_view NamespaceToken(GroundingNamespace ns) {
  switch (ns) {
    case GroundingNamespace::kUniProt: return "UniProt";
    case GroundingNamespace::kHgnc: return "HGNC";
    case GroundingNamespace::kPubChem: return "PubChem";
    case GroundingNamespace::kGo: return "GO";
    case GroundingNamespace::kNone: return "";
  }
  return "";
}

std::optional<Grounding> ParseGrounding(const std::string& raw, const std::string& path,
                                        Collector& c) {
  std::string_view text = Trim(raw);
  if (text.empty() || AsciiLower(text) == "none") return std::nullopt;
  size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    return Grounding{GroundingNamespace::kNone, std::string(text)};
  }
  auto ns = ParseNamespace(text.substr(0, colon));
  if (!ns) {
    c.BadValue(path, std::string(text));
    return std::nullopt;
  }
  return Grounding{*ns, std::string(text.substr(colon + 1))};
}

// Positions may be an integer, a string with ';' or ',' separators, or an
// array of either.
std::vector<Site> ParseSites(const json& value, const std::string& path, Collector& c) {
  std::vector<Site> sites;
  auto add_text = [&](std::string_view text, const std::string& at) {
    for (std::string part : Split(text, ';')) {
      for (std::string piece : Split(part, ',')) {
        std::string_view t = Trim(piece);
        if (t.empty()) continue;
        Site site = ParseSite(t);
        if (site.position && *site.position <= 0) {
          c.BadValue(at, std::string(t));
          continue;
        }
        if (site.opaque()) c.Warn(at + ": unparsed site position '" + std::string(t) + "'");
        sites.push_back(std::move(site));
      }
    }
  };
  auto add_one = [&](const json& v, const std::string& at) {
    if (v.is_number_integer()) {
      long long pos = v.get<long long>();
      if (pos <= 0 || pos > 1'000'000) {
        c.BadValue(at, Dump(v));
        return;
      }
      sites.push_back(Site{"", static_cast<int>(pos), std::to_string(pos)});
    } else if (v.is_string()) {
      add_text(v.get<std::string>(), at);
    } else {
      c.Malformed(at, "expected site position");
    }
  };
  if (value.is_array()) {
    for (size_t i = 0; i < value.size(); ++i) add_one(value[i], Index(path, i));
  } else {
    add_one(value, path);
  }
  return sites;
}

std::vector<Site> ReadSites(const json& obj, const std::string& path, Collector& c) {
  if (const json* v = Find(obj, "positions")) return ParseSites(*v, Join(path, "positions"), c);
  if (const json* v = Find(obj, "position")) return ParseSites(*v, Join(path, "position"), c);
  return {};
}

std::optional<Feature> ParseFeature(const json& doc, const std::string& path, Collector& c) {
  if (!doc.is_object()) {
    c.Malformed(path, "expected object");
    return std::nullopt;
  }
  Feature f;
  std::string kind = AsciiLower(ReadString(doc, "feature_type", path, c).value_or("modification"));
  if (kind == "modification") {
    f.kind = FeatureKind::kModification;
  } else if (kind == "isoform") {
    f.kind = FeatureKind::kIsoform;
  } else if (kind == "mutant" || kind == "mutation") {
    f.kind = FeatureKind::kMutant;
  } else {
    c.BadValue(Join(path, "feature_type"), kind);
    return std::nullopt;
  }
  auto label = ReadString(doc, "modification_type", path, c);
  if (!label) label = ReadString(doc, "label", path, c);
  if (!label || Trim(*label).empty()) {
    c.Missing(Join(path, f.kind == FeatureKind::kModification ? "modification_type" : "label"));
    return std::nullopt;
  }
  f.label = std::string(Trim(*label));
  f.sites = ReadSites(doc, path, c);
  return f;
}

std::optional<EntityRef> ParseEntity(const json& doc, EntityType type, const std::string& path,
                                     Collector& c) {
  EntityRef e;
  e.type = type;
  auto text = ReadString(doc, "entity_text", path, c);
  if (!text || Trim(*text).empty()) {
    c.Missing(Join(path, "entity_text"));
    return std::nullopt;
  }
  e.text = *text;
  if (auto id = ReadString(doc, "grounded_entity_id", path, c)) {
    e.grounding = ParseGrounding(*id, Join(path, "grounded_entity_id"), c);
  }
  if (e.grounding && e.type == EntityType::kProtein &&
      !(e.grounding->ns == GroundingNamespace::kUniProt ||
        e.grounding->ns == GroundingNamespace::kHgnc || e.grounding->ns == GroundingNamespace::kNone)) {
    c.Warn(path + ": protein '" + e.text + "' grounded outside UniProt/HGNC (" +
           e.grounding->ToString() + ")");
  }
  if (const json* features = Find(doc, "features")) {
    if (!features->is_array()) {
      c.Malformed(Join(path, "features"), "expected array");
    } else {
      for (size_t i = 0; i < features->size(); ++i) {
        if (auto f = ParseFeature((*features)[i], Index(Join(path, "features"), i), c)) {
          e.features.push_back(std::move(*f));
        }
      }
    }
  }
  e.in_model = ReadFlag(doc, "in_model", path, c);
  return e;
}

std::optional<Participant> ParseParticipant(const json* doc, const std::string& path,
                                            int depth, Collector& c);

std::optional<Interaction> ParseInteractionImpl(const json& doc, const std::string& path,
                                                int depth, Collector& c) {
  if (!doc.is_object()) {
    c.Malformed(path, "expected object");
    return std::nullopt;
  }
  Interaction in;
  bool ok = true;
  auto kind_token = ReadString(doc, "interaction_type", path, c);
  if (!kind_token) {
    c.Missing(Join(path, "interaction_type"));
    ok = false;
  } else if (auto kind = ParseInteractionKind(Trim(*kind_token))) {
    in.kind = *kind;
  } else {
    c.BadValue(Join(path, "interaction_type"), *kind_token);
    ok = false;
  }

  auto a = ParseParticipant(Find(doc, "participant_a"), Join(path, "participant_a"), depth, c);
  auto b = ParseParticipant(Find(doc, "participant_b"), Join(path, "participant_b"), depth, c);
  if (a) in.participant_a = std::move(*a);
  if (b) {
    if (IsBlank(*b)) {
      c.Missing(Join(path, "participant_b"));
      ok = false;
    }
    in.participant_b = std::move(*b);
  }
  ok = ok && a.has_value() && b.has_value();

  if (auto neg = ReadFlag(doc, "negative_information", path, c)) in.negative_information = *neg;
  in.binding_site = ReadString(doc, "binding_site", path, c);
  in.from_location = ReadString(doc, "from_location", path, c);
  in.to_location = ReadString(doc, "to_location", path, c);

  if (const json* mod = Find(doc, "modification")) {
    std::string mpath = Join(path, "modification");
    if (!mod->is_object()) {
      c.Malformed(mpath, "expected object");
    } else {
      Modification m;
      auto type = ReadString(*mod, "modification_type", mpath, c);
      if (!type || Trim(*type).empty()) {
        c.Missing(Join(mpath, "modification_type"));
      } else {
        m.type = std::string(Trim(*type));
      }
      m.sites = ReadSites(*mod, mpath, c);
      in.modification = std::move(m);
    }
  }

  if (ok) {
    if ((in.kind == InteractionKind::kAddsModification ||
         in.kind == InteractionKind::kInhibitsModification) &&
        !in.modification) {
      c.Missing(Join(path, "modification"));
    }
    if (in.kind == InteractionKind::kTranslocates && !in.from_location && !in.to_location) {
      c.Missing(Join(path, "from_location"));
    }
  }
  if (!ok) return std::nullopt;
  return in;
}

std::optional<Participant> ParseParticipant(const json* doc, const std::string& path,
                                            int depth, Collector& c) {
  if (doc == nullptr) return Participant{BlankParticipant{}};
  if (!doc->is_object()) {
    c.Malformed(path, "expected object or null");
    return std::nullopt;
  }
  auto type_token = ReadString(*doc, "entity_type", path, c);
  if (!type_token) {
    c.Missing(Join(path, "entity_type"));
    return std::nullopt;
  }
  std::string type = AsciiLower(Trim(*type_token));
  if (type == "blank") return Participant{BlankParticipant{}};
  if (type == "generic") {
    auto label = ReadString(*doc, "entity_text", path, c);
    if (!label || Trim(*label).empty()) {
      c.Missing(Join(path, "entity_text"));
      return std::nullopt;
    }
    return Participant{GenericParticipant{*label}};
  }
  if (type == "complex") {
    const json* members = Find(*doc, "entities");
    std::string mpath = Join(path, "entities");
    if (members == nullptr) {
      c.Missing(mpath);
      return std::nullopt;
    }
    if (!members->is_array()) {
      c.Malformed(mpath, "expected array");
      return std::nullopt;
    }
    ComplexParticipant complex;
    for (size_t i = 0; i < members->size(); ++i) {
      const json& m = (*members)[i];
      std::string ipath = Index(mpath, i);
      if (!m.is_object()) {
        c.Malformed(ipath, "expected object");
        continue;
      }
      EntityType mtype = EntityType::kComplexMember;
      if (auto t = ReadString(m, "entity_type", ipath, c)) {
        if (auto parsed = ParseEntityType(Trim(*t))) {
          mtype = *parsed;
        } else {
          c.BadValue(Join(ipath, "entity_type"), *t);
        }
      }
      if (auto e = ParseEntity(m, mtype, ipath, c)) complex.members.push_back(std::move(*e));
    }
    if (complex.members.size() < 2) {
      c.Invariant(mpath, "a complex needs at least two members");
      return std::nullopt;
    }
    return Participant{std::move(complex)};
  }
  if (type == "interaction") {
    if (depth >= 1) {
      c.Invariant(path, "embedded interactions may nest only one level");
      return std::nullopt;
    }
    const json* inner = Find(*doc, "interaction");
    if (inner == nullptr) {
      c.Missing(Join(path, "interaction"));
      return std::nullopt;
    }
    auto in = ParseInteractionImpl(*inner, Join(path, "interaction"), depth + 1, c);
    if (!in) return std::nullopt;
    return Embed(std::move(*in));
  }
  auto etype = ParseEntityType(type);
  if (!etype) {
    c.BadValue(Join(path, "entity_type"), *type_token);
    return std::nullopt;
  }
  auto e = ParseEntity(*doc, *etype, path, c);
  if (!e) return std::nullopt;
  return Participant{std::move(*e)};
}

const std::set<std::string, std::less<>>& CardKeys() {
  static const auto* keys = new std::set<std::string, std::less<>>{
      "card_id",           "paper_id",          "source",
      "source_type",       "timestamp",         "rank",
      "participant_a",     "participant_b",     "interaction_type",
      "negative_information", "binding_site",   "modification",
      "from_location",     "to_location",       "relationship_to_model",
      "model_element",     "evidence"};
  return *keys;
}

std::optional<SourceType> ParseSourceType(std::string_view token) {
  std::string t = AsciiLower(token);
  if (t == "human") return SourceType::kHuman;
  if (t == "machine") return SourceType::kMachine;
  if (t == "human_machine" || t == "human+machine") return SourceType::kHumanMachine;
  return std::nullopt;
}

std::optional<ModelRelationKind> ParseModelRelation(std::string_view token) {
  std::string t = AsciiLower(token);
  if (t == "extension") return ModelRelationKind::kExtension;
  if (t == "specification") return ModelRelationKind::kSpecification;
  if (t == "corroboration") return ModelRelationKind::kCorroboration;
  if (t == "conflicting") return ModelRelationKind::kConflicting;
  return std::nullopt;
}

json SitesToJson(const std::vector<Site>& sites) {
  json out = json::array();
  for (const Site& s : sites) out.push_back(s.raw);
  return out;
}

json EntityToJson(const EntityRef& e) {
  json out;
  out["entity_type"] = EntityTypeToken(e.type);
  out["entity_text"] = e.text;
  if (e.grounding) out["grounded_entity_id"] = e.grounding->ToString();
  if (!e.features.empty()) {
    json fs = json::array();
    for (const Feature& f : e.features) {
      json fj;
      switch (f.kind) {
        case FeatureKind::kModification:
          fj["feature_type"] = "modification";
          fj["modification_type"] = f.label;
          break;
        case FeatureKind::kIsoform:
          fj["feature_type"] = "isoform";
          fj["label"] = f.label;
          break;
        case FeatureKind::kMutant:
          fj["feature_type"] = "mutant";
          fj["label"] = f.label;
          break;
      }
      if (!f.sites.empty()) fj["positions"] = SitesToJson(f.sites);
      fs.push_back(std::move(fj));
    }
    out["features"] = std::move(fs);
  }
  if (e.in_model) out["in_model"] = *e.in_model;
  return out;
}

void WriteInteractionFields(const Interaction& in, json& out) {
  out["participant_a"] = ParticipantToJson(in.participant_a);
  out["interaction_type"] = InteractionKindToken(in.kind);
  out["participant_b"] = ParticipantToJson(in.participant_b);
  out["negative_information"] = in.negative_information;
  if (in.binding_site) out["binding_site"] = *in.binding_site;
  if (in.modification) {
    json m;
    m["modification_type"] = in.modification->type;
    if (!in.modification->sites.empty()) m["positions"] = SitesToJson(in.modification->sites);
    out["modification"] = std::move(m);
  }
  if (in.from_location) out["from_location"] = *in.from_location;
  if (in.to_location) out["to_location"] = *in.to_location;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string Grounding::ToString() const {
  if (ns == GroundingNamespace::kNone) return identifier;
  return std::string(NamespaceToken(ns)) + ":" + identifier;
}

bool SameGrounding(const Grounding& a, const Grounding& b) {
  return a.ns == b.ns && AsciiLower(Trim(a.identifier)) == AsciiLower(Trim(b.identifier));
}

bool EntityRef::HasModificationFeature() const {
  return std::any_of(features.begin(), features.end(),
                     [](const Feature& f) { return f.kind == FeatureKind::kModification; });
}

bool operator==(const EmbeddedParticipant& a, const EmbeddedParticipant& b) {
  if (a.interaction == b.interaction) return true;
  if (!a.interaction || !b.interaction) return false;
  return *a.interaction == *b.interaction;
}

Participant Embed(Interaction interaction) {
  return EmbeddedParticipant{std::make_shared<const Interaction>(std::move(interaction))};
}

std::string_view InteractionKindToken(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::kBinds: return "binds";
    case InteractionKind::kAddsModification: return "adds_modification";
    case InteractionKind::kInhibitsModification: return "inhibits_modification";
    case InteractionKind::kTranslocates: return "translocates";
    case InteractionKind::kIncreasesAmount: return "increases";
    case InteractionKind::kDecreasesAmount: return "decreases";
    case InteractionKind::kIncreasesActivity: return "increases_activity";
    case InteractionKind::kDecreasesActivity: return "decreases_activity";
  }
  return "";
}

std::optional<InteractionKind> ParseInteractionKind(std::string_view token) {
  std::string t = AsciiLower(token);
  if (t == "binds") return InteractionKind::kBinds;
  if (t == "adds_modification") return InteractionKind::kAddsModification;
  if (t == "inhibits_modification") return InteractionKind::kInhibitsModification;
  if (t == "translocates") return InteractionKind::kTranslocates;
  if (t == "increases" || t == "increases_amount") return InteractionKind::kIncreasesAmount;
  if (t == "decreases" || t == "decreases_amount") return InteractionKind::kDecreasesAmount;
  if (t == "increases_activity") return InteractionKind::kIncreasesActivity;
  if (t == "decreases_activity") return InteractionKind::kDecreasesActivity;
  return std::nullopt;
}

bool IsSymmetricKind(InteractionKind kind) {
  return kind == InteractionKind::kBinds || kind == InteractionKind::kTranslocates;
}

Site ParseSite(std::string_view text) {
  text = Trim(text);
  Site site;
  site.raw = std::string(text);
  std::string_view digits = text;
  std::string residue;
  if (!text.empty() && std::isalpha(static_cast<unsigned char>(text.front()))) {
    residue = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(text.front()))));
    digits = text.substr(1);
  }
  if (digits.empty()) return site;
  bool negative = digits.front() == '-';
  std::string_view body = negative ? digits.substr(1) : digits;
  if (body.empty() ||
      !std::all_of(body.begin(), body.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    return site;
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc()) return site;
  site.residue = residue;
  site.position = negative ? -value : value;
  return site;
}

std::string_view SourceTypeToken(SourceType type) {
  switch (type) {
    case SourceType::kHuman: return "human";
    case SourceType::kMachine: return "machine";
    case SourceType::kHumanMachine: return "human_machine";
  }
  return "";
}

std::string_view ModelRelationToken(ModelRelationKind kind) {
  switch (kind) {
    case ModelRelationKind::kExtension: return "extension";
    case ModelRelationKind::kSpecification: return "specification";
    case ModelRelationKind::kCorroboration: return "corroboration";
    case ModelRelationKind::kConflicting: return "conflicting";
  }
  return "";
}

std::string_view EntityTypeToken(EntityType type) {
  switch (type) {
    case EntityType::kProtein: return "protein";
    case EntityType::kChemical: return "chemical";
    case EntityType::kGene: return "gene";
    case EntityType::kProteinFamily: return "protein_family";
    case EntityType::kComplexMember: return "complex_member";
  }
  return "";
}

std::string_view SubmissionConditionToken(SubmissionCondition condition) {
  switch (condition) {
    case SubmissionCondition::kMachineOnly: return "machine_only";
    case SubmissionCondition::kHumanMachine: return "human_machine";
    case SubmissionCondition::kHumanOnly: return "human_only";
  }
  return "";
}

std::optional<SubmissionCondition> ParseSubmissionCondition(std::string_view token) {
  std::string t = AsciiLower(token);
  if (t == "machine_only" || t == "machine") return SubmissionCondition::kMachineOnly;
  if (t == "human_machine" || t == "human+machine") return SubmissionCondition::kHumanMachine;
  if (t == "human_only" || t == "human") return SubmissionCondition::kHumanOnly;
  return std::nullopt;
}

std::vector<std::string> Submission::PaperIds() const {
  std::vector<std::string> ids;
  for (const IndexCard& card : cards) {
    if (std::find(ids.begin(), ids.end(), card.paper_id) == ids.end()) ids.push_back(card.paper_id);
  }
  return ids;
}

std::vector<IndexCard> Submission::CardsForPaper(std::string_view paper_id) const {
  std::vector<IndexCard> out;
  for (const IndexCard& card : cards) {
    if (card.paper_id == paper_id) out.push_back(card);
  }
  return out;
}

Result<Interaction> ParseInteractionJson(const json& doc, const std::string& path) {
  Collector c(nullptr);
  auto in = ParseInteractionImpl(doc, path, 0, c);
  if (!c.clean()) return c.take();
  if (!in) return MakeError(ErrorCode::kMalformedDocument, path, "unreadable interaction");
  return std::move(*in);
}

Result<IndexCard> ParseCardJson(const json& doc, std::vector<std::string>* warnings) {
  if (!doc.is_object()) return MakeError(ErrorCode::kMalformedDocument, "", "card must be an object");
  Collector c(warnings);
  IndexCard card;
  card.card_id = ReadString(doc, "card_id", "", c).value_or("");
  if (auto paper = ReadString(doc, "paper_id", "", c); paper && !Trim(*paper).empty()) {
    card.paper_id = std::string(Trim(*paper));
  } else {
    c.Missing("paper_id");
  }
  card.source = ReadString(doc, "source", "", c).value_or("");
  if (auto st = ReadString(doc, "source_type", "", c)) {
    if (auto parsed = ParseSourceType(Trim(*st))) {
      card.source_type = *parsed;
    } else {
      c.BadValue("source_type", *st);
    }
  }
  card.timestamp = ReadString(doc, "timestamp", "", c).value_or("");

  if (auto in = ParseInteractionImpl(doc, "", 0, c)) card.interaction = std::move(*in);

  if (auto rel = ReadString(doc, "relationship_to_model", "", c)) {
    if (auto parsed = ParseModelRelation(Trim(*rel))) {
      card.model_relation.kind = *parsed;
    } else {
      c.BadValue("relationship_to_model", *rel);
    }
  }
  card.model_relation.element_id = ReadString(doc, "model_element", "", c);

  const json* evidence = Find(doc, "evidence");
  if (evidence == nullptr || (evidence->is_array() && evidence->empty())) {
    c.Missing("evidence");
  } else if (!evidence->is_array()) {
    c.Malformed("evidence", "expected array");
  } else {
    for (size_t i = 0; i < evidence->size(); ++i) {
      const json& e = (*evidence)[i];
      std::string path = Index("evidence", i);
      EvidenceSpan span;
      if (e.is_string()) {
        span.text = e.get<std::string>();
      } else if (e.is_object()) {
        span.text = ReadString(e, "text", path, c).value_or("");
        span.section = ReadString(e, "section", path, c);
        span.figure = ReadString(e, "figure", path, c);
      } else {
        c.Malformed(path, "expected string or object");
        continue;
      }
      if (Trim(span.text).empty()) {
        c.Missing(Join(path, "text"));
        continue;
      }
      card.evidence.push_back(std::move(span));
    }
  }

  if (const json* rank = Find(doc, "rank")) {
    if (!rank->is_number_integer()) {
      c.BadValue("rank", Dump(*rank));
    } else {
      long long r = rank->get<long long>();
      if (r < 1 || r > kMaxRank) {
        c.BadValue("rank", std::to_string(r));
      } else {
        card.rank = static_cast<int>(r);
      }
    }
  }

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (CardKeys().count(it.key()) == 0) card.extras[it.key()] = it.value();
  }

  if (!c.clean()) return c.take();
  ErrorList invariants = ValidateCard(card);
  if (!invariants.empty()) return invariants;
  return card;
}

Result<IndexCard> ParseCard(std::string_view raw, std::vector<std::string>* warnings) {
  json doc = json::parse(raw.begin(), raw.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return MakeError(ErrorCode::kMalformedDocument, "", "not valid JSON");
  return ParseCardJson(doc, warnings);
}

ErrorList ValidateCard(const IndexCard& card) {
  ErrorList errors;
  if (card.paper_id.empty()) errors.push_back(MakeError(ErrorCode::kMissingField, "paper_id"));
  if (card.evidence.empty()) errors.push_back(MakeError(ErrorCode::kMissingField, "evidence"));
  for (size_t i = 0; i < card.evidence.size(); ++i) {
    if (Trim(card.evidence[i].text).empty()) {
      errors.push_back(MakeError(ErrorCode::kMissingField, Index("evidence", i) + ".text"));
    }
  }
  if (card.rank && (*card.rank < 1 || *card.rank > kMaxRank)) {
    errors.push_back(MakeError(ErrorCode::kBadEnumValue, "rank", std::to_string(*card.rank)));
  }
  if (card.model_relation.kind == ModelRelationKind::kExtension && card.model_relation.element_id) {
    errors.push_back(MakeError(ErrorCode::kInvariantViolation, "model_element",
                               "an extension cannot name an existing model element"));
  }
  if (IsBlank(card.interaction.participant_b)) {
    errors.push_back(MakeError(ErrorCode::kMissingField, "participant_b"));
  }
  return errors;
}

json ParticipantToJson(const Participant& participant) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BlankParticipant>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, EntityRef>) {
          return EntityToJson(p);
        } else if constexpr (std::is_same_v<T, GenericParticipant>) {
          return json{{"entity_type", "generic"}, {"entity_text", p.label}};
        } else if constexpr (std::is_same_v<T, ComplexParticipant>) {
          json members = json::array();
          for (const EntityRef& m : p.members) members.push_back(EntityToJson(m));
          return json{{"entity_type", "complex"}, {"entities", std::move(members)}};
        } else {
          return json{{"entity_type", "interaction"},
                      {"interaction", InteractionToJson(*p.interaction)}};
        }
      },
      participant);
}

json InteractionToJson(const Interaction& interaction) {
  json out = json::object();
  WriteInteractionFields(interaction, out);
  return out;
}

json CardToJson(const IndexCard& card) {
  json out = card.extras.is_object() ? card.extras : json::object();
  if (!card.card_id.empty()) out["card_id"] = card.card_id;
  out["paper_id"] = card.paper_id;
  if (!card.source.empty()) out["source"] = card.source;
  out["source_type"] = SourceTypeToken(card.source_type);
  if (!card.timestamp.empty()) out["timestamp"] = card.timestamp;
  if (card.rank) out["rank"] = *card.rank;
  WriteInteractionFields(card.interaction, out);
  out["relationship_to_model"] = ModelRelationToken(card.model_relation.kind);
  if (card.model_relation.element_id) out["model_element"] = *card.model_relation.element_id;
  json evidence = json::array();
  for (const EvidenceSpan& e : card.evidence) {
    json ej{{"text", e.text}};
    if (e.section) ej["section"] = *e.section;
    if (e.figure) ej["figure"] = *e.figure;
    evidence.push_back(std::move(ej));
  }
  out["evidence"] = std::move(evidence);
  return out;
}

std::string SerializeCard(const IndexCard& card) { return CardToJson(card).dump(2); }

std::string DescribeParticipant(const Participant& participant) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BlankParticipant>) {
          return "(blank)";
        } else if constexpr (std::is_same_v<T, EntityRef>) {
          return p.text;
        } else if constexpr (std::is_same_v<T, GenericParticipant>) {
          return p.label;
        } else if constexpr (std::is_same_v<T, ComplexParticipant>) {
          std::string out;
          for (const EntityRef& m : p.members) {
            if (!out.empty()) out += ":";
            out += m.text;
          }
          return out;
        } else {
          return "[" + DescribeInteraction(*p.interaction) + "]";
        }
      },
      participant);
}

std::string DescribeInteraction(const Interaction& in) {
  std::string out = DescribeParticipant(in.participant_a) + " " +
                    std::string(InteractionKindToken(in.kind));
  if (in.modification) out += "(" + in.modification->type + ")";
  out += " " + DescribeParticipant(in.participant_b);
  if (in.negative_information) out = "NOT " + out;
  return out;
}

Result<Submission> LoadSubmission(const std::filesystem::path& dir,
                                  std::vector<std::string>* warnings) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    return MakeError(ErrorCode::kMissingInput, dir.string(), "submission directory not found");
  }
  Submission submission;
  submission.team_id = dir.filename().string();
  if (submission.team_id.empty()) submission.team_id = dir.parent_path().filename().string();

  ErrorList errors;
  fs::path meta = dir / "submission.json";
  if (fs::exists(meta, ec)) {
    std::ifstream in(meta);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, meta.string(), "not valid JSON"));
    } else {
      if (doc.contains("team_id") && doc["team_id"].is_string()) {
        submission.team_id = doc["team_id"].get<std::string>();
      }
      if (doc.contains("condition") && doc["condition"].is_string()) {
        std::string token = doc["condition"].get<std::string>();
        if (auto cond = ParseSubmissionCondition(token)) {
          submission.condition = *cond;
        } else {
          errors.push_back(MakeError(ErrorCode::kBadEnumValue, meta.string() + ":condition", token));
        }
      }
    }
  }

  std::vector<fs::path> paper_dirs;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_directory()) paper_dirs.push_back(entry.path());
  }
  std::sort(paper_dirs.begin(), paper_dirs.end());
  for (const fs::path& paper_dir : paper_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(paper_dir, ec)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.size() > 10 &&
          name.compare(name.size() - 10, 10, ".card.json") == 0) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      std::ifstream in(file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      std::vector<std::string> local_warnings;
      auto card = ParseCard(buffer.str(), &local_warnings);
      for (const std::string& w : local_warnings) {
        if (warnings != nullptr) warnings->push_back(file.string() + ": " + w);
      }
      if (!card.ok()) {
        for (Error e : card.errors()) {
          e.path = file.string() + (e.path.empty() ? "" : ":" + e.path);
          errors.push_back(std::move(e));
        }
        continue;
      }
      IndexCard parsed = std::move(card).value();
      std::string stem = file.filename().string();
      stem = stem.substr(0, stem.size() - 10);
      if (parsed.card_id.empty()) parsed.card_id = paper_dir.filename().string() + "/" + stem;
      if (parsed.paper_id != paper_dir.filename().string() && warnings != nullptr) {
        warnings->push_back(file.string() + ": paper_id '" + parsed.paper_id +
                            "' differs from directory name");
      }
      submission.cards.push_back(std::move(parsed));
    }
  }
  if (!errors.empty()) return errors;
  std::stable_sort(submission.cards.begin(), submission.cards.end(),
                   [](const IndexCard& a, const IndexCard& b) { return a.paper_id < b.paper_id; });
  return submission;
}

Result<std::vector<IndexCard>> LoadCardArray(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return MakeError(ErrorCode::kMissingInput, file.string(), "cannot open");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    return MakeError(ErrorCode::kMalformedDocument, file.string(), "expected a JSON array of cards");
  }
  std::vector<IndexCard> cards;
  ErrorList errors;
  for (size_t i = 0; i < doc.size(); ++i) {
    auto card = ParseCardJson(doc[i]);
    if (!card.ok()) {
      for (Error e : card.errors()) {
        e.path = Index(file.string(), i) + (e.path.empty() ? "" : ":" + e.path);
        errors.push_back(std::move(e));
      }
      continue;
    }
    cards.push_back(std::move(card).value());
  }
  if (!errors.empty()) return errors;
  return cards;
}

}  // namespace mecheval
