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

#include "mecheval/explanation.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>
#include <utility>

#include "mecheval/csv.h"
#include "mecheval/judgments.h"
#include "mecheval/text.h"

namespace mecheval {

using nlohmann::json;

namespace {

std::optional<json> ReadJsonFile(const std::filesystem::path& file, ErrorList& errors) {
  std::ifstream in(file);
  if (!in) {
    errors.push_back(MakeError(ErrorCode::kMissingInput, file.string(), "cannot open"));
    return std::nullopt;
  }
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    errors.push_back(MakeError(ErrorCode::kMalformedDocument, file.string(), "not valid JSON"));
    return std::nullopt;
  }
  return doc;
}

std::optional<bool> ParseBool(std::string_view text) {
  std::string t = AsciiLower(Trim(text));
  if (t == "yes" || t == "true" || t == "1" || t == "y" || t == "single") return true;
  if (t == "no" || t == "false" || t == "0" || t == "n" || t == "combination") return false;
  return std::nullopt;
}

std::optional<double> ParseDouble(std::string_view text) {
  text = Trim(text);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<int> ParseDirection(const json& v) {
  if (v.is_number_integer()) {
    int s = v.get<int>();
    if (s == 1 || s == -1 || s == 0) return s;
    return std::nullopt;
  }
  if (!v.is_string()) return std::nullopt;
  std::string t = AsciiLower(Trim(v.get<std::string>()));
  if (t == "increase" || t == "up" || t == "+1" || t == "+") return 1;
  if (t == "decrease" || t == "down" || t == "-1" || t == "-") return -1;
  if (t == "none" || t == "no_change" || t == "0") return 0;
  return std::nullopt;
}

std::string SignText(int sign) {
  if (sign > 0) return "increase";
  if (sign < 0) return "decrease";
  return "no change";
}

int Severity(Outcome o) {
  switch (o) {
    case Outcome::kPass: return 0;
    case Outcome::kNeedsHumanReview: return 1;
    case Outcome::kFail: return 2;
  }
  return 0;
}

// Accumulates findings for one criterion, keeping the most severe outcome.
class CriterionBuilder {
 public:
  void Add(Outcome outcome, const std::string& detail) {
    if (Severity(outcome) > Severity(result_.outcome)) result_.outcome = outcome;
    if (outcome != Outcome::kPass && !detail.empty()) notes_.push_back(detail);
  }
  CriterionResult Build() const {
    CriterionResult out = result_;
    for (size_t i = 0; i < notes_.size(); ++i) {
      if (i > 0) out.detail += "; ";
      out.detail += notes_[i];
    }
    return out;
  }

 private:
  CriterionResult result_;
  std::vector<std::string> notes_;
};

std::string PathName(size_t i) { return "path " + std::to_string(i + 1); }

bool IsPhosphorylation(const ModelInteraction& e) {
  return e.kind == InteractionKind::kAddsModification && e.modification &&
         NormalizeSurface(*e.modification) == "phosphorylation";
}

bool IsDephosphorylation(const ModelInteraction& e) {
  return e.modification && NormalizeSurface(*e.modification) == "dephosphorylation";
}

std::set<Role> RolesOf(const MechModel& model, const EntityRoleTable& table, const std::string& id) {
  std::set<Role> roles;
  const ModelEntity* entity = model.FindEntity(id);
  if (entity != nullptr) roles = entity->roles;
  for (const std::string& key : {id, entity != nullptr ? entity->name : id}) {
    auto it = table.find(key);
    if (it != table.end()) roles.insert(it->second.begin(), it->second.end());
  }
  return roles;
}

// Plausibility for one cell line and one expected direction (or none, for
// narrative claims).
PlausibilityVerdict CheckSingle(const MechModel& model, const Observation& obs,
                                const Explanation& expl, const std::vector<EdgePath>& paths,
                                const std::string& cell_line,
                                std::optional<int> expected, const EntityRoleTable& roles,
                                const EvidenceReviews& reviews) {
  PlausibilityVerdict v;
  v.explanation_id = expl.id;
  v.observation_id = obs.id;
  std::set<std::string> pending;

  auto review = [&](const std::string& subject) -> std::optional<bool> {
    auto it = reviews.find(subject);
    if (it == reviews.end()) {
      pending.insert(subject);
      return std::nullopt;
    }
    return it->second;
  };

  // C1 direction. Findings the paths cannot settle go to one reviewer
  // question per explanation.
  CriterionBuilder c1;
  std::vector<std::string> unsettled;
  if (!expected) {
    unsettled.push_back("narrative claim");
  } else if (*expected == 0) {
    unsettled.push_back("no-change expectation in " + cell_line);
  } else if (paths.empty()) {
    c1.Add(Outcome::kFail, "no explanation path");
  } else {
    // One agreeing path suffices as long as no path contradicts; paths
    // through unsigned edges neither agree nor contradict.
    std::set<int> signs;
    std::vector<std::string> unsigned_paths;
    for (size_t i = 0; i < paths.size(); ++i) {
      auto s = PropagateSign(model, paths[i], obs.perturbation_sign);
      if (s.ok()) {
        signs.insert(*s);
      } else if (s.code() == ErrorCode::kUnsignedEdge) {
        unsigned_paths.push_back(PathName(i) + " uses an unsigned edge");
      } else {
        c1.Add(Outcome::kFail, PathName(i) + ": " + s.error().ToString());
      }
    }
    if (expl.predicted_sign && *expl.predicted_sign != *expected) {
      c1.Add(Outcome::kFail, "submitted prediction " + SignText(*expl.predicted_sign) +
                                 " contradicts observed " + SignText(*expected));
    }
    if (signs.size() > 1) {
      c1.Add(Outcome::kFail, "paths disagree in sign");
    } else if (signs.size() == 1) {
      int s = *signs.begin();
      if (s != *expected) {
        if (expl.predicted_sign && *expl.predicted_sign == *expected) {
          unsettled.push_back("submitted prediction differs from path sign " + SignText(s));
        } else {
          c1.Add(Outcome::kFail, "paths predict " + SignText(s) + ", observed " + SignText(*expected));
        }
      }
    } else if (unsigned_paths.empty()) {
      c1.Add(Outcome::kFail, "no path yields a sign");
    } else {
      unsettled.insert(unsettled.end(), unsigned_paths.begin(), unsigned_paths.end());
    }
  }
  if (!unsettled.empty() && c1.Build().outcome != Outcome::kFail) {
    std::string what;
    for (const std::string& u : unsettled) what += (what.empty() ? "" : "; ") + u;
    auto answer = review(ClaimSubject(expl.id));
    if (!answer) {
      c1.Add(Outcome::kNeedsHumanReview, what);
    } else if (!*answer) {
      c1.Add(Outcome::kFail, "reviewer rejected: " + what);
    }
  }
  v.criteria[0] = c1.Build();

  // C2 connectivity.
  CriterionBuilder c2;
  std::optional<std::string> target = model.ResolveEntity(obs.target);
  std::optional<std::string> readout = model.ResolveEntity(obs.readout.entity);
  std::vector<std::vector<std::string>> walks;
  if (!target) c2.Add(Outcome::kFail, "perturbation target " + obs.target + " not in model");
  if (!readout) c2.Add(Outcome::kFail, "readout " + obs.readout.entity + " not in model");
  if (paths.empty()) c2.Add(Outcome::kFail, "no explanation path");
  for (size_t i = 0; i < paths.size() && target && readout; ++i) {
    if (paths[i].empty()) {
      if (*target != *readout) c2.Add(Outcome::kFail, PathName(i) + " is empty but target is not the readout");
      walks.push_back({*target});
      continue;
    }
    auto walk = WalkPath(model, paths[i], *target);
    if (!walk.ok()) {
      c2.Add(Outcome::kFail, PathName(i) + ": " + walk.error().ToString());
      continue;
    }
    if (walk->back() != *readout) {
      c2.Add(Outcome::kFail, PathName(i) + " ends at " + walk->back() + ", not " + *readout);
    }
    walks.push_back(*walk);
  }
  v.criteria[1] = c2.Build();

  // Edges used, first occurrence order.
  std::vector<const ModelInteraction*> edges;
  for (const EdgePath& path : paths) {
    for (const std::string& id : path) {
      const ModelInteraction* e = model.FindInteraction(id);
      if (e != nullptr && std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
  }

  // C3 commonsense roles.
  CriterionBuilder c3;
  for (const ModelInteraction* e : edges) {
    std::optional<Role> needed;
    if (IsPhosphorylation(*e)) needed = Role::kKinase;
    if (IsDephosphorylation(*e)) needed = Role::kPhosphatase;
    if (!needed) continue;
    std::set<Role> have = RolesOf(model, roles, e->source);
    std::string what = e->id + ": " + e->source + " needs role " + std::string(RoleToken(*needed));
    if (have.empty()) {
      auto answer = review(RoleSubject(model.id(), e->source, *needed));
      if (!answer) {
        c3.Add(Outcome::kNeedsHumanReview, what + " (no role information)");
      } else if (!*answer) {
        c3.Add(Outcome::kFail, what);
      }
    } else if (have.count(*needed) == 0) {
      c3.Add(Outcome::kFail, what);
    }
  }
  v.criteria[2] = c3.Build();

  // C4 provenance and evidence.
  CriterionBuilder c4;
  for (const ModelInteraction* e : edges) {
    if (e->provenance.empty()) {
      c4.Add(Outcome::kFail, e->id + " has no provenance");
      continue;
    }
    int mask = ProvenanceClass(*e);
    if ((mask & ~1) != 0) continue;  // database or manual source
    bool has_evidence = std::any_of(e->provenance.begin(), e->provenance.end(), [](const Provenance& p) {
      const auto* r = std::get_if<MachineReading>(&p);
      return r != nullptr && !r->evidence.empty();
    });
    if (!has_evidence) {
      c4.Add(Outcome::kFail, e->id + " is machine-read without evidence");
      continue;
    }
    auto answer = review(EdgeSubject(model.id(), e->id));
    if (!answer) {
      c4.Add(Outcome::kNeedsHumanReview, e->id + " evidence awaits review");
    } else if (!*answer) {
      c4.Add(Outcome::kFail, e->id + " evidence does not support the interaction");
    }
  }
  v.criteria[3] = c4.Build();

  // C5 cell context.
  CriterionBuilder c5;
  if (!cell_line.empty() && !expl.cell_line.empty() && cell_line != expl.cell_line &&
      obs.kind == Observation::Kind::kDirectional) {
    c5.Add(Outcome::kFail, "explanation is for " + expl.cell_line + ", observation for " + cell_line);
  }
  const std::string& line = cell_line.empty() ? expl.cell_line : cell_line;
  const CellContext* context = model.FindContext(line);
  if (context == nullptr) {
    auto answer = review(ContextSubject(model.id(), line));
    if (!answer) {
      c5.Add(Outcome::kNeedsHumanReview, "model has no context for cell line " + line);
    } else if (!*answer) {
      c5.Add(Outcome::kFail, "reviewer found the model invalid in " + line);
    }
  } else {
    std::set<std::string> reported;
    for (const auto& walk : walks) {
      for (const std::string& node : walk) {
        if (context->knockouts.count(node) != 0 && reported.insert(node).second) {
          c5.Add(Outcome::kFail, node + " is knocked out in " + context->cell_line);
        }
      }
    }
  }
  v.criteria[4] = c5.Build();

  // C6 model consistency; the cross-explanation part is a separate check.
  CriterionBuilder c6;
  if (expl.model_id != model.id()) {
    c6.Add(Outcome::kFail, "explanation names model " + expl.model_id + ", checked against " + model.id());
  }
  v.criteria[5] = c6.Build();

  v.overall = CombineOverall(v.criteria);
  v.pending_reviews.assign(pending.begin(), pending.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

Result<std::vector<PerturbationRow>> ParseObservationCsv(std::string_view text) {
  auto table = ParseCsv(text);
  if (!table.ok()) return table.errors();
  static constexpr const char* kRequired[] = {"obs_id", "treatment", "dose", "is_single_drug", "target",
                                              "antibody", "readout_entity", "fold_change", "cell_line"};
  ErrorList errors;
  std::map<std::string, size_t> col;
  for (const char* name : kRequired) {
    auto c = table->Column(name);
    if (!c) {
      errors.push_back(MakeError(ErrorCode::kMissingField, name));
      continue;
    }
    col[name] = *c;
  }
  if (!errors.empty()) return errors;
  auto sign_col = table->Column("perturbation_sign");

  std::vector<PerturbationRow> rows;
  for (size_t r = 0; r < table->rows.size(); ++r) {
    const auto& f = table->rows[r];
    std::string where = "row " + std::to_string(r + 1);
    PerturbationRow row;
    row.obs_id = std::string(Trim(f[col["obs_id"]]));
    row.treatment = std::string(Trim(f[col["treatment"]]));
    row.dose = std::string(Trim(f[col["dose"]]));
    row.target = std::string(Trim(f[col["target"]]));
    row.antibody = std::string(Trim(f[col["antibody"]]));
    row.readout_entity = std::string(Trim(f[col["readout_entity"]]));
    row.cell_line = std::string(Trim(f[col["cell_line"]]));
    auto single = ParseBool(f[col["is_single_drug"]]);
    if (!single) {
      errors.push_back(MakeError(ErrorCode::kBadEnumValue, where + ".is_single_drug", f[col["is_single_drug"]]));
    } else {
      row.is_single_drug = *single;
    }
    auto fold = ParseDouble(f[col["fold_change"]]);
    if (!fold) {
      errors.push_back(MakeError(ErrorCode::kBadEnumValue, where + ".fold_change", f[col["fold_change"]]));
    } else {
      row.fold_change = *fold;
    }
    if (sign_col && !Trim(f[*sign_col]).empty()) {
      auto s = ParseDirection(json(std::string(Trim(f[*sign_col]))));
      if (!s || *s == 0) {
        errors.push_back(MakeError(ErrorCode::kBadEnumValue, where + ".perturbation_sign", f[*sign_col]));
      } else {
        row.perturbation_sign = *s;
      }
    }
    rows.push_back(std::move(row));
  }
  if (!errors.empty()) return errors;
  return rows;
}

Result<std::vector<PerturbationRow>> LoadObservationCsv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return MakeError(ErrorCode::kMissingInput, file.string(), "cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseObservationCsv(buffer.str());
}

const std::string& Observation::cell_line() const {
  static const std::string kNone;
  return expected.empty() ? kNone : expected.front().cell_line;
}

std::optional<std::string> SiteFromAntibody(std::string_view antibody) {
  static const std::regex kSite("(?:^|_)p([STY][0-9]+)(?:_|$)");
  std::string text(antibody);
  std::smatch m;
  if (std::regex_search(text, m, kSite)) return m[1].str();
  return std::nullopt;
}

Result<std::vector<Observation>> SelectObservations(const std::vector<PerturbationRow>& rows,
                                                    double hi, double lo) {
  ErrorList errors;
  std::vector<Observation> out;
  for (const PerturbationRow& row : rows) {
    if (!(row.fold_change > 0)) {
      errors.push_back(MakeError(ErrorCode::kNonpositiveFold, row.obs_id, std::to_string(row.fold_change)));
      continue;
    }
    if (!row.is_single_drug || !(row.fold_change > hi || row.fold_change < lo)) continue;
    Observation obs;
    obs.id = row.obs_id;
    obs.drug = row.treatment;
    obs.dose = row.dose;
    obs.target = row.target;
    obs.perturbation_sign = row.perturbation_sign;
    obs.readout.antibody = row.antibody;
    obs.readout.site = SiteFromAntibody(row.antibody);
    obs.readout.entity = row.readout_entity;
    if (obs.readout.entity.empty()) obs.readout.entity = row.antibody.substr(0, row.antibody.find('_'));
    obs.fold_change = row.fold_change;
    obs.expected.push_back({row.cell_line, row.fold_change < 1 ? -1 : 1});
    out.push_back(std::move(obs));
  }
  if (!errors.empty()) return errors;
  return out;
}

Result<std::vector<Observation>> FindingsFromJson(const json& doc) {
  const json* list = &doc;
  if (doc.is_object() && doc.contains("findings")) list = &doc["findings"];
  if (!list->is_array()) return MakeError(ErrorCode::kMalformedDocument, "findings", "expected array");
  ErrorList errors;
  std::vector<Observation> out;
  for (size_t i = 0; i < list->size(); ++i) {
    const json& f = (*list)[i];
    std::string path = "findings[" + std::to_string(i) + "]";
    if (!f.is_object()) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, path, "expected object"));
      continue;
    }
    Observation obs;
    obs.id = f.value("id", std::string());
    obs.drug = f.value("drug", std::string());
    obs.target = f.value("target", std::string());
    obs.readout.entity = f.value("readout", std::string());
    obs.readout.antibody = f.value("antibody", std::string());
    obs.readout.site = SiteFromAntibody(obs.readout.antibody);
    obs.narrative = f.value("narrative", std::string());
    if (obs.id.empty()) errors.push_back(MakeError(ErrorCode::kMissingField, path + ".id"));
    if (auto s = f.find("perturbation_sign"); s != f.end()) {
      auto sign = ParseDirection(*s);
      if (!sign || *sign == 0) {
        errors.push_back(MakeError(ErrorCode::kBadEnumValue, path + ".perturbation_sign", s->dump()));
      } else {
        obs.perturbation_sign = *sign;
      }
    }
    if (auto c = f.find("comparative"); c != f.end() && c->is_array() && !c->empty()) {
      obs.kind = Observation::Kind::kComparative;
      for (const json& sub : *c) {
        auto sign = sub.contains("direction") ? ParseDirection(sub["direction"]) : std::nullopt;
        std::string line = sub.value("cell_line", std::string());
        if (!sign || line.empty()) {
          errors.push_back(MakeError(ErrorCode::kMalformedDocument, path + ".comparative", sub.dump()));
          continue;
        }
        obs.expected.push_back({line, *sign});
      }
    } else {
      obs.kind = Observation::Kind::kNarrative;
      if (f.contains("cell_line")) obs.expected.push_back({f["cell_line"].get<std::string>(), 0});
    }
    out.push_back(std::move(obs));
  }
  if (!errors.empty()) return errors;
  return out;
}

Result<std::vector<Observation>> LoadFindings(const std::filesystem::path& file) {
  ErrorList errors;
  auto doc = ReadJsonFile(file, errors);
  if (!doc) return errors;
  return FindingsFromJson(*doc);
}

Result<std::vector<Explanation>> ExplanationsFromJson(const json& doc) {
  const json* list = &doc;
  if (doc.is_object() && doc.contains("explanations")) list = &doc["explanations"];
  if (!list->is_array()) return MakeError(ErrorCode::kMalformedDocument, "explanations", "expected array");
  ErrorList errors;
  std::vector<Explanation> out;
  auto read_paths = [&](const json& v, const std::string& path, std::vector<EdgePath>& into) {
    if (!v.is_array()) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, path, "expected array of edge lists"));
      return;
    }
    for (const json& p : v) {
      if (!p.is_array()) {
        errors.push_back(MakeError(ErrorCode::kMalformedDocument, path, p.dump()));
        continue;
      }
      EdgePath edges;
      for (const json& e : p) {
        if (e.is_string()) edges.push_back(e.get<std::string>());
      }
      into.push_back(std::move(edges));
    }
  };
  for (size_t i = 0; i < list->size(); ++i) {
    const json& x = (*list)[i];
    std::string path = "explanations[" + std::to_string(i) + "]";
    if (!x.is_object()) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, path, "expected object"));
      continue;
    }
    Explanation e;
    e.submission_id = x.value("submission", std::string());
    e.observation_id = x.value("observation_id", std::string());
    e.model_id = x.value("model_id", std::string());
    e.cell_line = x.value("cell_line", std::string());
    e.narrative = x.value("narrative", std::string());
    e.id = x.value("id", std::string());
    if (e.observation_id.empty()) errors.push_back(MakeError(ErrorCode::kMissingField, path + ".observation_id"));
    if (e.model_id.empty()) errors.push_back(MakeError(ErrorCode::kMissingField, path + ".model_id"));
    if (e.id.empty()) e.id = (e.submission_id.empty() ? "" : e.submission_id + "/") + e.observation_id;
    if (auto p = x.find("paths"); p != x.end()) read_paths(*p, path + ".paths", e.paths);
    if (auto p = x.find("cell_line_paths"); p != x.end() && p->is_object()) {
      for (auto it = p->begin(); it != p->end(); ++it) {
        read_paths(it.value(), path + ".cell_line_paths." + it.key(), e.cell_line_paths[it.key()]);
      }
    }
    if (auto d = x.find("predicted_direction"); d != x.end() && !d->is_null()) {
      auto s = ParseDirection(*d);
      if (!s) {
        errors.push_back(MakeError(ErrorCode::kBadEnumValue, path + ".predicted_direction", d->dump()));
      } else {
        e.predicted_sign = *s;
      }
    }
    if (auto s = x.find("edge_signs"); s != x.end() && s->is_object()) {
      for (auto it = s->begin(); it != s->end(); ++it) {
        auto sign = ParseDirection(it.value());
        if (!sign || *sign == 0) {
          errors.push_back(MakeError(ErrorCode::kBadEnumValue, path + ".edge_signs." + it.key(), it.value().dump()));
          continue;
        }
        e.edge_signs[it.key()] = *sign;
      }
    }
    out.push_back(std::move(e));
  }
  if (!errors.empty()) return errors;
  return out;
}

Result<std::vector<Explanation>> LoadExplanations(const std::filesystem::path& file) {
  ErrorList errors;
  auto doc = ReadJsonFile(file, errors);
  if (!doc) return errors;
  return ExplanationsFromJson(*doc);
}

json ExplanationToJson(const Explanation& e) {
  json out{{"id", e.id},
           {"submission", e.submission_id},
           {"observation_id", e.observation_id},
           {"model_id", e.model_id},
           {"cell_line", e.cell_line},
           {"paths", e.paths}};
  if (!e.cell_line_paths.empty()) out["cell_line_paths"] = e.cell_line_paths;
  if (!e.narrative.empty()) out["narrative"] = e.narrative;
  if (e.predicted_sign) out["predicted_direction"] = *e.predicted_sign;
  if (!e.edge_signs.empty()) out["edge_signs"] = e.edge_signs;
  return out;
}

Result<EntityRoleTable> LoadRoleTable(const std::filesystem::path& file) {
  ErrorList errors;
  auto doc = ReadJsonFile(file, errors);
  if (!doc) return errors;
  if (!doc->is_object()) return MakeError(ErrorCode::kMalformedDocument, file.string(), "expected object");
  EntityRoleTable table;
  for (auto it = doc->begin(); it != doc->end(); ++it) {
    std::set<Role>& roles = table[it.key()];
    const json& v = it.value();
    for (const json& r : v.is_array() ? v : json::array({v})) {
      auto role = r.is_string() ? ParseRole(r.get<std::string>()) : std::nullopt;
      if (!role) {
        errors.push_back(MakeError(ErrorCode::kBadEnumValue, it.key(), r.dump()));
        continue;
      }
      roles.insert(*role);
    }
  }
  if (!errors.empty()) return errors;
  return table;
}

Result<EvidenceReviews> LoadReviews(const std::filesystem::path& file) {
  ErrorList errors;
  auto doc = ReadJsonFile(file, errors);
  if (!doc) return errors;
  if (!doc->is_object()) return MakeError(ErrorCode::kMalformedDocument, file.string(), "expected object");
  EvidenceReviews reviews;
  for (auto it = doc->begin(); it != doc->end(); ++it) {
    if (!it.value().is_boolean()) {
      errors.push_back(MakeError(ErrorCode::kBadEnumValue, it.key(), it.value().dump()));
      continue;
    }
    reviews[it.key()] = it.value().get<bool>();
  }
  if (!errors.empty()) return errors;
  return reviews;
}

std::string ClaimSubject(std::string_view explanation_id) {
  return "claim:" + std::string(explanation_id);
}

std::string RoleSubject(std::string_view model_id, std::string_view entity, Role role) {
  return "role:" + std::string(model_id) + "/" + std::string(entity) + "/" + std::string(RoleToken(role));
}

std::string ContextSubject(std::string_view model_id, std::string_view cell_line) {
  return "context:" + std::string(model_id) + "/" + std::string(cell_line);
}

// ---------------------------------------------------------------------------

Result<std::vector<std::string>> WalkPath(const MechModel& model, const EdgePath& path,
                                          std::optional<std::string> start) {
  ErrorList unknown;
  std::vector<const ModelInteraction*> edges;
  for (const std::string& id : path) {
    const ModelInteraction* e = model.FindInteraction(id);
    if (e == nullptr) {
      unknown.push_back(MakeError(ErrorCode::kUnknownEdge, id));
    } else {
      edges.push_back(e);
    }
  }
  if (!unknown.empty()) return unknown;
  if (edges.empty()) {
    if (start) return std::vector<std::string>{*start};
    return std::vector<std::string>{};
  }
  auto touches = [](const ModelInteraction* e, const std::string& node) {
    return e->source == node || (e->kind == InteractionKind::kBinds && e->target == node);
  };
  const ModelInteraction* first = edges.front();
  std::vector<std::string> nodes;
  bool reversed = false;
  if (start) {
    if (first->source == *start) {
      reversed = false;
    } else if (first->kind == InteractionKind::kBinds && first->target == *start) {
      reversed = true;
    } else {
      return MakeError(ErrorCode::kDisconnectedPath, first->id, "does not start at " + *start);
    }
  } else if (first->kind == InteractionKind::kBinds && edges.size() > 1) {
    reversed = !touches(edges[1], first->target) && touches(edges[1], first->source);
  }
  nodes.push_back(reversed ? first->target : first->source);
  nodes.push_back(reversed ? first->source : first->target);
  for (size_t i = 1; i < edges.size(); ++i) {
    const ModelInteraction* e = edges[i];
    const std::string& at = nodes.back();
    if (e->source == at) {
      nodes.push_back(e->target);
    } else if (e->kind == InteractionKind::kBinds && e->target == at) {
      nodes.push_back(e->source);
    } else {
      return MakeError(ErrorCode::kDisconnectedPath, e->id, "does not continue from " + at);
    }
  }
  return nodes;
}

Result<int> PropagateSign(const MechModel& model, const EdgePath& path, int perturbation_sign) {
  auto walk = WalkPath(model, path);
  if (!walk.ok()) return walk.errors();
  int sign = perturbation_sign;
  ErrorList unsigned_edges;
  for (const std::string& id : path) {
    const ModelInteraction* e = model.FindInteraction(id);
    if (!e->sign) {
      unsigned_edges.push_back(MakeError(ErrorCode::kUnsignedEdge, id));
      continue;
    }
    sign *= *e->sign;
  }
  if (!unsigned_edges.empty()) return unsigned_edges;
  return sign;
}

std::string_view OutcomeToken(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPass: return "pass";
    case Outcome::kFail: return "fail";
    case Outcome::kNeedsHumanReview: return "needs_human_review";
  }
  return "";
}

std::string_view OverallToken(Overall overall) {
  switch (overall) {
    case Overall::kPlausible: return "plausible";
    case Overall::kNotPlausible: return "not_plausible";
    case Overall::kPending: return "pending";
  }
  return "";
}

Overall CombineOverall(const std::array<CriterionResult, kCriteria>& criteria) {
  bool pending = false;
  for (const CriterionResult& c : criteria) {
    if (c.outcome == Outcome::kFail) return Overall::kNotPlausible;
    if (c.outcome == Outcome::kNeedsHumanReview) pending = true;
  }
  return pending ? Overall::kPending : Overall::kPlausible;
}

json PlausibilityVerdict::ToJson() const {
  json criteria_json = json::array();
  for (int i = 0; i < kCriteria; ++i) {
    json c{{"criterion", "C" + std::to_string(i + 1)}, {"outcome", OutcomeToken(criteria[i].outcome)}};
    if (!criteria[i].detail.empty()) c["detail"] = criteria[i].detail;
    criteria_json.push_back(std::move(c));
  }
  return json{{"explanation_id", explanation_id},
              {"observation_id", observation_id},
              {"overall", OverallToken(overall)},
              {"criteria", std::move(criteria_json)},
              {"pending_reviews", pending_reviews}};
}

Result<PlausibilityVerdict> CheckPlausibility(const MechModel& model, const Observation& obs,
                                              const Explanation& expl, const EntityRoleTable& roles,
                                              const EvidenceReviews& reviews) {
  if (expl.observation_id != obs.id) {
    return MakeError(ErrorCode::kUnknownObservation, expl.observation_id,
                     "explanation " + expl.id + " checked against observation " + obs.id);
  }
  ErrorList unknown;
  auto check_edges = [&](const std::vector<EdgePath>& paths) {
    for (const EdgePath& p : paths) {
      for (const std::string& id : p) {
        if (model.FindInteraction(id) == nullptr) unknown.push_back(MakeError(ErrorCode::kUnknownEdge, id));
      }
    }
  };
  check_edges(expl.paths);
  for (const auto& [line, paths] : expl.cell_line_paths) check_edges(paths);
  if (!unknown.empty()) return unknown;

  switch (obs.kind) {
    case Observation::Kind::kDirectional: {
      const DirectionalExpectation& ex = obs.expected.front();
      return CheckSingle(model, obs, expl, expl.paths, ex.cell_line, ex.sign, roles, reviews);
    }
    case Observation::Kind::kNarrative:
      return CheckSingle(model, obs, expl, expl.paths, obs.cell_line(), std::nullopt, roles, reviews);
    case Observation::Kind::kComparative:
      break;
  }

  // Comparative: one sub-check per cell line; the result is their conjunction.
  PlausibilityVerdict combined;
  combined.explanation_id = expl.id;
  combined.observation_id = obs.id;
  std::array<CriterionBuilder, kCriteria> builders;
  std::set<std::string> pending;
  bool any_fail = false;
  bool any_pending = false;
  for (const DirectionalExpectation& ex : obs.expected) {
    auto it = expl.cell_line_paths.find(ex.cell_line);
    const std::vector<EdgePath>& paths = it != expl.cell_line_paths.end() ? it->second : expl.paths;
    Explanation sub = expl;
    sub.cell_line = ex.cell_line;
    PlausibilityVerdict v = CheckSingle(model, obs, sub, paths, ex.cell_line, ex.sign, roles, reviews);
    for (int i = 0; i < kCriteria; ++i) {
      builders[i].Add(v.criteria[i].outcome,
                      v.criteria[i].detail.empty() ? "" : ex.cell_line + ": " + v.criteria[i].detail);
    }
    pending.insert(v.pending_reviews.begin(), v.pending_reviews.end());
    any_fail = any_fail || v.overall == Overall::kNotPlausible;
    any_pending = any_pending || v.overall == Overall::kPending;
  }
  for (int i = 0; i < kCriteria; ++i) combined.criteria[i] = builders[i].Build();
  combined.overall = any_fail ? Overall::kNotPlausible : any_pending ? Overall::kPending : Overall::kPlausible;
  combined.pending_reviews.assign(pending.begin(), pending.end());
  return combined;
}

std::vector<ConsistencyViolation> CheckCellLineConsistency(
    const std::vector<Explanation>& explanations, const std::map<std::string, MechModel>& models) {
  // Each submission answers for its own models only.
  std::map<std::pair<std::string, std::string>, std::vector<const Explanation*>> by_line;
  for (const Explanation& e : explanations) by_line[{e.submission_id, e.cell_line}].push_back(&e);

  auto signs_of = [&models](const Explanation& e) {
    std::map<std::string, int> signs;
    auto model = models.find(e.model_id);
    auto add_paths = [&](const std::vector<EdgePath>& paths) {
      for (const EdgePath& p : paths) {
        for (const std::string& id : p) {
          if (auto a = e.edge_signs.find(id); a != e.edge_signs.end()) {
            signs[id] = a->second;
          } else if (model != models.end()) {
            const ModelInteraction* edge = model->second.FindInteraction(id);
            if (edge != nullptr && edge->sign) signs[id] = *edge->sign;
          }
        }
      }
    };
    add_paths(e.paths);
    for (const auto& [line, paths] : e.cell_line_paths) add_paths(paths);
    return signs;
  };

  std::vector<ConsistencyViolation> out;
  for (const auto& [key, group] : by_line) {
    const std::string& line = key.second;
    std::vector<std::map<std::string, int>> signs;
    for (const Explanation* e : group) signs.push_back(signs_of(*e));
    for (size_t i = 0; i < group.size(); ++i) {
      for (size_t j = i + 1; j < group.size(); ++j) {
        const Explanation& a = *group[i];
        const Explanation& b = *group[j];
        if (a.model_id != b.model_id) {
          out.push_back({line, a.id, b.id, "models differ: " + a.model_id + " vs " + b.model_id});
        }
        for (const auto& [edge, sa] : signs[i]) {
          auto sb = signs[j].find(edge);
          if (sb != signs[j].end() && sb->second != sa) {
            out.push_back({line, a.id, b.id, "edge " + edge + " used with opposite signs"});
          }
        }
      }
    }
  }
  return out;
}

std::string_view GridCellToken(GridCell cell) {
  switch (cell) {
    case GridCell::kSupported: return "supported";
    case GridCell::kUnsupported: return "unsupported";
    case GridCell::kIncorrectPrediction: return "incorrect_prediction";
    case GridCell::kNotAttempted: return "not_attempted";
  }
  return "";
}

namespace {

int CellRank(GridCell c) {
  switch (c) {
    case GridCell::kSupported: return 3;
    case GridCell::kIncorrectPrediction: return 2;
    case GridCell::kUnsupported: return 1;
    case GridCell::kNotAttempted: return 0;
  }
  return 0;
}

std::string_view GridLetter(GridCell c) {
  switch (c) {
    case GridCell::kSupported: return "S";
    case GridCell::kUnsupported: return "N";
    case GridCell::kIncorrectPrediction: return "I";
    case GridCell::kNotAttempted: return "";
  }
  return "";
}

}  // namespace

Result<ResultsGrid> SummarizeResultsGrid(const std::vector<std::string>& observation_ids,
                                         const std::vector<SubmissionVerdict>& verdicts) {
  ResultsGrid grid;
  if (verdicts.empty()) return grid;
  grid.observations = observation_ids;
  ErrorList errors;
  std::set<std::string> known(observation_ids.begin(), observation_ids.end());
  std::set<std::string> submissions;
  for (const SubmissionVerdict& sv : verdicts) {
    submissions.insert(sv.submission_id);
    if (known.count(sv.observation_id) == 0) {
      errors.push_back(MakeError(ErrorCode::kUnknownObservation, sv.observation_id));
    }
    if (sv.verdict.overall == Overall::kPending) {
      errors.push_back(MakeError(ErrorCode::kPendingVerdicts, sv.verdict.explanation_id));
    }
  }
  if (!errors.empty()) return errors;
  grid.submissions.assign(submissions.begin(), submissions.end());
  for (const std::string& s : grid.submissions) {
    for (const std::string& o : observation_ids) grid.cells[s][o] = GridCell::kNotAttempted;
  }
  for (const SubmissionVerdict& sv : verdicts) {
    GridCell cell = GridCell::kUnsupported;
    if (sv.verdict.overall == Overall::kPlausible) {
      cell = GridCell::kSupported;
    } else if (sv.verdict.criteria[0].outcome == Outcome::kFail) {
      cell = GridCell::kIncorrectPrediction;
    }
    GridCell& slot = grid.cells[sv.submission_id][sv.observation_id];
    if (CellRank(cell) > CellRank(slot)) slot = cell;
  }
  for (const std::string& s : grid.submissions) {
    int n = 0;
    for (const auto& [o, cell] : grid.cells[s]) n += cell == GridCell::kSupported;
    grid.supported[s] = n;
  }
  for (const std::string& o : observation_ids) {
    bool any = std::any_of(grid.submissions.begin(), grid.submissions.end(), [&](const std::string& s) {
      return grid.cells[s][o] == GridCell::kSupported;
    });
    grid.covered += any;
  }
  return grid;
}

json ResultsGrid::ToJson() const {
  json rows = json::array();
  for (const std::string& s : submissions) {
    json cells_json = json::object();
    for (const std::string& o : observations) cells_json[o] = GridCellToken(cells.at(s).at(o));
    rows.push_back(json{{"submission", s}, {"cells", std::move(cells_json)}, {"supported", supported.at(s)}});
  }
  return json{{"observations", observations},
              {"rows", std::move(rows)},
              {"covered", covered},
              {"observation_count", observations.size()}};
}

std::string ResultsGrid::ToCsv() const {
  std::vector<std::string> header{"submission"};
  header.insert(header.end(), observations.begin(), observations.end());
  header.push_back("supported");
  std::string out = CsvRow(header);
  for (const std::string& s : submissions) {
    std::vector<std::string> row{s};
    for (const std::string& o : observations) row.emplace_back(GridLetter(cells.at(s).at(o)));
    row.push_back(std::to_string(supported.at(s)));
    out += CsvRow(row);
  }
  std::vector<std::string> coverage{"coverage"};
  for (const std::string& o : observations) {
    bool any = std::any_of(submissions.begin(), submissions.end(),
                           [&](const std::string& s) { return cells.at(s).at(o) == GridCell::kSupported; });
    coverage.push_back(any ? "S" : "");
  }
  coverage.push_back(std::to_string(covered));
  out += CsvRow(coverage);
  return out;
}

}  // namespace mecheval
