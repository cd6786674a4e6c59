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

#include "mecheval/harness/evaluation.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>

#include "mecheval/metrics.h"

namespace mecheval {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view RunStatusToken(RunStatus status) {
  switch (status) {
    case RunStatus::kIngested: return "ingested";
    case RunStatus::kAwaitingReview: return "awaiting_review";
    case RunStatus::kComplete: return "complete";
  }
  return "";
}

std::string_view ItemKindToken(ItemKind kind) {
  switch (kind) {
    case ItemKind::kCardVerdict: return "card_verdict";
    case ItemKind::kMatchConfirmation: return "match_confirmation";
    case ItemKind::kEvidenceSupport: return "evidence_support";
  }
  return "";
}

std::optional<ItemKind> ParseItemKind(std::string_view token) {
  for (ItemKind k : {ItemKind::kCardVerdict, ItemKind::kMatchConfirmation, ItemKind::kEvidenceSupport}) {
    if (ItemKindToken(k) == token) return k;
  }
  return std::nullopt;
}

std::string_view ItemStateToken(ItemState state) {
  switch (state) {
    case ItemState::kQueued: return "queued";
    case ItemState::kClaimed: return "claimed";
    case ItemState::kResolved: return "resolved";
  }
  return "";
}

std::optional<ItemState> ParseItemState(std::string_view token) {
  for (ItemState s : {ItemState::kQueued, ItemState::kClaimed, ItemState::kResolved}) {
    if (ItemStateToken(s) == token) return s;
  }
  return std::nullopt;
}

json ReviewItem::ToJson() const {
  json out{{"item_id", item_id},
           {"kind", ItemKindToken(kind)},
           {"ledger", ledger},
           {"subject", subject},
           {"paper_id", paper_id},
           {"state", ItemStateToken(state)},
           {"payload", payload}};
  if (state == ItemState::kClaimed) out["claimant"] = claimant;
  if (judgment_revision) out["judgment_revision"] = *judgment_revision;
  return out;
}

Result<ReviewItem> ReviewItem::FromJson(const json& doc) {
  if (!doc.is_object()) return MakeError(ErrorCode::kMalformedDocument, "item", "expected object");
  ReviewItem item;
  item.item_id = doc.value("item_id", std::string());
  item.ledger = doc.value("ledger", std::string());
  item.subject = doc.value("subject", std::string());
  item.paper_id = doc.value("paper_id", std::string());
  item.payload = doc.value("payload", json::object());
  auto kind = ParseItemKind(doc.value("kind", std::string()));
  auto state = ParseItemState(doc.value("state", std::string()));
  if (item.item_id.empty() || item.subject.empty() || !kind || !state) {
    return MakeError(ErrorCode::kMalformedDocument, "item", doc.dump());
  }
  item.kind = *kind;
  item.state = *state;
  item.claimant = doc.value("claimant", std::string());
  if (doc.contains("judgment_revision")) item.judgment_revision = doc["judgment_revision"].get<int>();
  return item;
}

const IndexCard* SubmissionRun::FindCard(std::string_view card_id) const {
  for (const IndexCard& c : unique) {
    if (c.card_id == card_id) return &c;
  }
  for (const DuplicateCard& d : duplicates) {
    if (d.card.card_id == card_id) return &d.card;
  }
  return nullptr;
}

const SubmissionRun* EvaluationRun::FindSubmission(std::string_view team_id) const {
  for (const SubmissionRun& s : submissions) {
    if (s.submission.team_id == team_id) return &s;
  }
  return nullptr;
}

const Observation* EvaluationRun::FindObservation(std::string_view id) const {
  for (const Observation& o : observations) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

JudgmentStore* EvaluationRun::store(std::string_view ledger) const {
  auto it = stores.find(std::string(ledger));
  return it == stores.end() ? nullptr : it->second.get();
}

std::map<std::string, Judgment> EvaluationRun::Snapshot(std::string_view ledger) const {
  JudgmentStore* s = store(ledger);
  return s == nullptr ? std::map<std::string, Judgment>{} : s->Snapshot();
}

EvidenceReviews EvaluationRun::EffectiveReviews() const {
  EvidenceReviews reviews = file_reviews;
  for (const auto& [subject, j] : Snapshot(kExplanationLedger)) {
    if (j.verdict.is_skipped()) continue;
    reviews[subject] = j.verdict.is_correct();
  }
  return reviews;
}

RunStatus EvaluationRun::status() const {
  bool open = std::any_of(items.begin(), items.end(),
                          [](const ReviewItem& i) { return i.state != ItemState::kResolved; });
  return open ? RunStatus::kAwaitingReview : RunStatus::kComplete;
}

namespace {

// Input violations are reported under one ParseFailures head so callers can
// branch on the code and still list every problem.
ErrorList AsParseFailures(const ErrorList& errors) {
  ErrorList out{MakeError(ErrorCode::kParseFailures, "", std::to_string(errors.size()) + " problem(s)")};
  out.insert(out.end(), errors.begin(), errors.end());
  return out;
}

bool RequireFile(const std::optional<fs::path>& p, const char* name, ErrorList& missing) {
  if (!p) {
    missing.push_back(MakeError(ErrorCode::kMissingInput, name, "required for this phase"));
    return false;
  }
  std::error_code ec;
  if (!fs::exists(*p, ec)) {
    missing.push_back(MakeError(ErrorCode::kMissingInput, name, p->string()));
    return false;
  }
  return true;
}

std::string LedgerFileName(std::string_view ledger) {
  std::string out;
  for (char c : ledger) {
    bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                c == '_' || c == '.';
    out += keep ? c : '_';
  }
  return out + ".jsonl";
}

std::string NowUtc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Status LoadSubmissions(EvaluationRun& run, ErrorList& errors) {
  std::set<std::string> teams;
  for (const fs::path& dir : run.config.submissions) {
    auto sub = LoadSubmission(dir, &run.warnings);
    if (!sub.ok()) {
      errors.insert(errors.end(), sub.errors().begin(), sub.errors().end());
      continue;
    }
    if (!teams.insert(sub->team_id).second) {
      errors.push_back(MakeError(ErrorCode::kDuplicateId, dir.string(), "team " + sub->team_id));
      continue;
    }
    SubmissionRun sr;
    sr.submission = std::move(sub).value();
    for (const std::string& paper : sr.submission.PaperIds()) {
      DedupResult d = DedupSubmission(sr.submission.CardsForPaper(paper), run.table);
      sr.unique.insert(sr.unique.end(), d.unique.begin(), d.unique.end());
      sr.duplicates.insert(sr.duplicates.end(), d.duplicates.begin(), d.duplicates.end());
    }
    sr.scored = run.config.phase == Phase::kII ? TopRanked(sr.unique, run.config.top_k) : sr.unique;
    for (const ReferenceInteraction& ref : run.refs) {
      // Every matching card is kept, not only the best one: a reference is
      // credited if any of its matches is judged correct.
      std::vector<MatchRecord> found;
      for (const IndexCard& c : sr.scored) {
        if (c.paper_id != ref.paper_id) continue;
        MatchRecord m = MatchInteraction(c, ref.id, ref.interaction, run.table);
        if (m.match_class != MatchClass::kNone) found.push_back(std::move(m));
      }
      std::stable_sort(found.begin(), found.end(), BetterMatch);
      for (MatchRecord& m : found) sr.matches.push_back(std::move(m));
    }
    run.submissions.push_back(std::move(sr));
  }
  return Status::Ok();
}

void LoadPhaseThree(EvaluationRun& run, ErrorList& errors) {
  const RunConfig& c = run.config;
  auto take = [&errors](const auto& result) {
    if (!result.ok()) errors.insert(errors.end(), result.errors().begin(), result.errors().end());
    return result.ok();
  };
  for (const fs::path& p : c.models) {
    auto m = MechModel::Load(p, &run.warnings);
    if (!take(m)) continue;
    std::string id = m->id();
    if (!run.models.emplace(id, std::move(m).value()).second) {
      errors.push_back(MakeError(ErrorCode::kDuplicateId, p.string(), "model " + id));
    }
  }
  if (c.observations) {
    auto rows = LoadObservationCsv(*c.observations);
    if (take(rows)) {
      auto selected = SelectObservations(*rows, c.fold_hi, c.fold_lo);
      if (take(selected)) run.observations = std::move(selected).value();
    }
  }
  if (c.findings) {
    auto f = LoadFindings(*c.findings);
    if (take(f)) run.observations.insert(run.observations.end(), f->begin(), f->end());
  }
  std::set<std::string> ids;
  for (const Observation& o : run.observations) {
    if (!ids.insert(o.id).second) errors.push_back(MakeError(ErrorCode::kDuplicateId, o.id, "observation"));
  }
  if (c.explanations) {
    auto e = LoadExplanations(*c.explanations);
    if (take(e)) run.explanations = std::move(e).value();
  }
  std::set<std::string> expl_ids;
  for (const Explanation& e : run.explanations) {
    if (!expl_ids.insert(e.id).second) errors.push_back(MakeError(ErrorCode::kDuplicateId, e.id, "explanation"));
    if (run.FindObservation(e.observation_id) == nullptr) {
      errors.push_back(MakeError(ErrorCode::kUnknownObservation, e.id, e.observation_id));
    }
  }
  if (c.roles) {
    auto r = LoadRoleTable(*c.roles);
    if (take(r)) run.roles = std::move(r).value();
  }
  if (c.reviews) {
    auto r = LoadReviews(*c.reviews);
    if (take(r)) run.file_reviews = std::move(r).value();
  }
}

std::vector<std::string> Ledgers(const EvaluationRun& run) {
  std::vector<std::string> out;
  for (const SubmissionRun& s : run.submissions) out.push_back(s.submission.team_id);
  if (run.config.phase == Phase::kIII) out.emplace_back(kExplanationLedger);
  return out;
}

Status OpenStores(EvaluationRun& run) {
  for (const std::string& ledger : Ledgers(run)) {
    if (run.dir) {
      auto store = JudgmentStore::Open(*run.dir / "judgments" / LedgerFileName(ledger));
      if (!store.ok()) return store.errors();
      run.stores[ledger] = std::move(store).value();
    } else {
      run.stores[ledger] = std::make_unique<JudgmentStore>();
    }
  }
  for (const SubmissionRun& s : run.submissions) {
    JudgmentStore* store = run.store(s.submission.team_id);
    for (const IndexCard& c : s.unique) store->RegisterSubject(c.card_id);
    for (const DuplicateCard& d : s.duplicates) store->RegisterSubject(d.card.card_id);
    for (const MatchRecord& m : s.matches) store->RegisterSubject(MatchSubject(m.gold_id, m.candidate_card_id));
  }
  return Status::Ok();
}

Status SeedJudgments(EvaluationRun& run) {
  if (!run.config.judgments) return Status::Ok();
  std::ifstream in(*run.config.judgments);
  if (!in) return MakeError(ErrorCode::kMissingInput, "judgments", run.config.judgments->string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return MakeError(ErrorCode::kMalformedDocument, run.config.judgments->string(), "expected object by team");
  }
  ErrorList errors;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    JudgmentStore* store = run.store(it.key());
    if (!it.value().is_array()) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, "judgments." + it.key(), "expected array"));
      continue;
    }
    if (store == nullptr) {
      // A judgments file may cover teams this run does not load.
      run.warnings.push_back("judgments for '" + it.key() + "' ignored: not in this run");
      continue;
    }
    for (const json& jd : it.value()) {
      auto j = Judgment::FromJson(jd);
      if (!j.ok()) {
        errors.insert(errors.end(), j.errors().begin(), j.errors().end());
        continue;
      }
      if (it.key() == kExplanationLedger) store->RegisterSubject(j->card_id);
      j->revision = 0;
      auto rec = store->Record(std::move(j).value());
      if (!rec.ok()) errors.insert(errors.end(), rec.errors().begin(), rec.errors().end());
    }
  }
  if (!errors.empty()) return errors;
  return Status::Ok();
}

Status RecordRuleJudgments(EvaluationRun& run) {
  Dialect dialect = DialectFor(run.config.phase);
  for (const SubmissionRun& s : run.submissions) {
    JudgmentStore* store = run.store(s.submission.team_id);
    for (const DuplicateCard& d : s.duplicates) {
      if (store->Latest(d.card.card_id)) continue;
      Judgment j = DuplicateJudgment(d.card.card_id, dialect);
      j.timestamp = NowUtc();
      auto rec = store->Record(std::move(j));
      if (!rec.ok()) return rec.errors();
    }
    for (const IndexCard& c : s.scored) {
      if (store->Latest(c.card_id)) continue;
      // Only the blank-participant skip decides without a reviewer.
      auto j = ApplyRubric(c, FieldAssessment{}, dialect);
      if (!j.ok()) continue;
      j->timestamp = NowUtc();
      auto rec = store->Record(std::move(j).value());
      if (!rec.ok()) return rec.errors();
    }
  }
  return Status::Ok();
}

json EdgePayload(const MechModel& model, std::string_view edge_id) {
  json doc = model.ToJson();
  for (const json& e : doc["interactions"]) {
    if (e.value("id", std::string()) == edge_id) return e;
  }
  return json::object();
}

// Splits "kind:rest" and "model/tail" review subjects.
std::pair<std::string, std::string> SplitOnce(std::string_view text, char sep) {
  auto at = text.find(sep);
  if (at == std::string_view::npos) return {std::string(text), ""};
  return {std::string(text.substr(0, at)), std::string(text.substr(at + 1))};
}

json ReviewPayload(const EvaluationRun& run, const std::string& subject) {
  auto [kind, rest] = SplitOnce(subject, ':');
  json out{{"subject", subject}, {"subject_kind", kind}};
  if (kind == "claim") {
    for (const Explanation& e : run.explanations) {
      if (e.id != rest) continue;
      out["question"] = "Is the explanation's claimed direction supported?";
      out["explanation"] = ExplanationToJson(e);
      if (const Observation* o = run.FindObservation(e.observation_id)) {
        out["observation"] = {{"id", o->id}, {"drug", o->drug}, {"target", o->target},
                              {"readout", o->readout.entity}, {"narrative", o->narrative}};
      }
    }
    return out;
  }
  auto [model_id, tail] = SplitOnce(rest, '/');
  out["model_id"] = model_id;
  auto model = run.models.find(model_id);
  if (kind == "edge") {
    out["question"] = "Does the evidence support this interaction?";
    if (model != run.models.end()) out["edge"] = EdgePayload(model->second, tail);
  } else if (kind == "role") {
    auto [entity, role] = SplitOnce(tail, '/');
    out["question"] = "Does " + entity + " have role " + role + "?";
    out["entity"] = entity;
    out["role"] = role;
  } else if (kind == "context") {
    out["question"] = "Is the model valid in cell line " + tail + "?";
    out["cell_line"] = tail;
  }
  return out;
}

std::string ItemId(const std::string& run_id, size_t n) {
  std::string seq = std::to_string(n);
  if (seq.size() < 4) seq.insert(0, 4 - seq.size(), '0');
  return run_id + "-" + seq;
}

Status BuildItems(EvaluationRun& run) {
  run.items.clear();
  Dialect dialect = DialectFor(run.config.phase);
  auto add = [&run](ItemKind kind, const std::string& ledger, const std::string& subject,
                    const std::string& paper, json payload) {
    ReviewItem item;
    item.item_id = ItemId(run.config.run_id, run.items.size() + 1);
    item.kind = kind;
    item.ledger = ledger;
    item.subject = subject;
    item.paper_id = paper;
    item.payload = std::move(payload);
    run.items.push_back(std::move(item));
  };
  for (const SubmissionRun& s : run.submissions) {
    const std::string& team = s.submission.team_id;
    JudgmentStore* store = run.store(team);
    for (const IndexCard& c : s.scored) {
      if (store->Latest(c.card_id)) continue;
      add(ItemKind::kCardVerdict, team, c.card_id, c.paper_id,
          json{{"team_id", team},
               {"dialect", DialectToken(dialect)},
               {"summary", DescribeInteraction(c.interaction)},
               {"card", CardToJson(c)}});
    }
    for (const MatchRecord& m : s.matches) {
      std::string subject = MatchSubject(m.gold_id, m.candidate_card_id);
      if (!m.auto_flagged || store->Latest(subject)) continue;
      const IndexCard* card = s.FindCard(m.candidate_card_id);
      json payload{{"team_id", team}, {"match", m.ToJson()}};
      if (card != nullptr) payload["card"] = CardToJson(*card);
      std::string paper = card != nullptr ? card->paper_id : "";
      for (const ReferenceInteraction& ref : run.refs) {
        if (ref.id == m.gold_id) payload["reference"] = ref.ToJson();
      }
      add(ItemKind::kMatchConfirmation, team, subject, paper, std::move(payload));
    }
  }
  if (run.config.phase == Phase::kIII) {
    auto verdicts = CheckExplanations(run);
    if (!verdicts.ok()) return verdicts.errors();
    std::set<std::string> pending;
    for (const ExplanationVerdict& v : *verdicts) {
      pending.insert(v.verdict.pending_reviews.begin(), v.verdict.pending_reviews.end());
    }
    JudgmentStore* store = run.store(kExplanationLedger);
    for (const std::string& subject : pending) {
      store->RegisterSubject(subject);
      add(ItemKind::kEvidenceSupport, std::string(kExplanationLedger), subject, "",
          ReviewPayload(run, subject));
    }
  }
  return Status::Ok();
}

Status WriteJsonFile(const fs::path& file, const json& doc) {
  fs::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return MakeError(ErrorCode::kIoError, tmp.string(), "cannot write");
    out << doc.dump(2) << '\n';
    if (!out) return MakeError(ErrorCode::kIoError, tmp.string(), "write failed");
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) return MakeError(ErrorCode::kIoError, file.string(), ec.message());
  return Status::Ok();
}

json AbsoluteConfig(const RunConfig& c) {
  RunConfig abs = c;
  auto fix = [](fs::path& p) { p = fs::absolute(p).lexically_normal(); };
  for (auto& p : abs.submissions) fix(p);
  for (auto& p : abs.models) fix(p);
  for (auto* p : {&abs.refset, &abs.observations, &abs.findings, &abs.explanations, &abs.roles,
                  &abs.reviews, &abs.judgments, &abs.equiv_table}) {
    if (*p) fix(**p);
  }
  return abs.ToJson();
}

}  // namespace

Result<std::unique_ptr<EvaluationRun>> LoadRunInputs(const RunConfig& config) {
  auto run = std::make_unique<EvaluationRun>();
  run->config = config;
  ErrorList missing;
  const bool cards = config.phase != Phase::kIII;
  if (cards && config.submissions.empty()) {
    missing.push_back(MakeError(ErrorCode::kMissingInput, "submissions", "at least one submission directory"));
  }
  for (const fs::path& p : config.submissions) {
    std::error_code ec;
    if (!fs::is_directory(p, ec)) missing.push_back(MakeError(ErrorCode::kMissingInput, "submission", p.string()));
  }
  if (config.phase == Phase::kII) RequireFile(config.refset, "refset", missing);
  if (config.phase == Phase::kI && config.refset) RequireFile(config.refset, "refset", missing);
  if (config.phase == Phase::kIII) {
    if (config.models.empty()) missing.push_back(MakeError(ErrorCode::kMissingInput, "models", "at least one model"));
    for (const fs::path& p : config.models) RequireFile(p, "model", missing);
    RequireFile(config.explanations, "explanations", missing);
    if (!config.observations && !config.findings) {
      missing.push_back(MakeError(ErrorCode::kMissingInput, "observations", "observations or findings"));
    }
    if (config.observations) RequireFile(config.observations, "observations", missing);
    if (config.findings) RequireFile(config.findings, "findings", missing);
    if (config.roles) RequireFile(config.roles, "roles", missing);
    if (config.reviews) RequireFile(config.reviews, "reviews", missing);
  }
  if (config.equiv_table) RequireFile(config.equiv_table, "equiv_table", missing);
  if (config.judgments) RequireFile(config.judgments, "judgments", missing);
  if (!missing.empty()) return missing;

  ErrorList errors;
  if (config.equiv_table) {
    auto table = EquivalenceTable::Load(*config.equiv_table);
    if (!table.ok()) return AsParseFailures(table.errors());
    run->table = std::move(table).value();
  }
  if (config.refset) {
    auto refs = LoadReferenceSet(*config.refset);
    if (!refs.ok()) return AsParseFailures(refs.errors());
    run->refs = std::move(refs).value();
  }
  if (cards) {
    LoadSubmissions(*run, errors);
  } else {
    LoadPhaseThree(*run, errors);
  }
  if (!errors.empty()) return AsParseFailures(errors);
  return run;
}

Result<std::unique_ptr<EvaluationRun>> IngestRun(const RunConfig& config,
                                                 const std::optional<fs::path>& dir) {
  std::error_code ec;
  if (dir && fs::exists(*dir / "config.json", ec)) {
    return MakeError(ErrorCode::kDuplicateRun, config.run_id, dir->string());
  }
  auto loaded = LoadRunInputs(config);
  if (!loaded.ok()) return loaded.errors();
  std::unique_ptr<EvaluationRun> run = std::move(loaded).value();
  run->dir = dir;
  if (dir) {
    fs::create_directories(*dir, ec);
    if (ec) return MakeError(ErrorCode::kIoError, dir->string(), ec.message());
  }
  auto fail = [&](const ErrorList& errors) -> Result<std::unique_ptr<EvaluationRun>> {
    if (dir) {
      run->stores.clear();
      fs::remove_all(*dir, ec);
    }
    return errors;
  };
  if (Status s = OpenStores(*run); !s.ok()) return fail(s.errors());
  if (Status s = SeedJudgments(*run); !s.ok()) return fail(AsParseFailures(s.errors()));
  if (Status s = RecordRuleJudgments(*run); !s.ok()) return fail(s.errors());
  if (Status s = BuildItems(*run); !s.ok()) return fail(s.errors());
  if (dir) {
    if (Status s = WriteJsonFile(*dir / "config.json", AbsoluteConfig(config)); !s.ok()) return fail(s.errors());
    if (Status s = SaveItems(*run); !s.ok()) return fail(s.errors());
  }
  return run;
}

Result<std::unique_ptr<EvaluationRun>> OpenRun(const fs::path& dir) {
  auto config = RunConfig::Load(dir / "config.json");
  if (!config.ok()) return config.errors();
  auto loaded = LoadRunInputs(*config);
  if (!loaded.ok()) return loaded.errors();
  std::unique_ptr<EvaluationRun> run = std::move(loaded).value();
  run->dir = dir;
  if (Status s = OpenStores(*run); !s.ok()) return s.errors();

  std::ifstream in(dir / "items.json");
  if (!in) return MakeError(ErrorCode::kMissingInput, (dir / "items.json").string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.contains("items") || !doc["items"].is_array()) {
    return MakeError(ErrorCode::kMalformedDocument, (dir / "items.json").string());
  }
  ErrorList errors;
  for (const json& d : doc["items"]) {
    auto item = ReviewItem::FromJson(d);
    if (!item.ok()) {
      errors.insert(errors.end(), item.errors().begin(), item.errors().end());
      continue;
    }
    JudgmentStore* store = run->store(item->ledger);
    if (store == nullptr) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, item->item_id, "unknown ledger " + item->ledger));
      continue;
    }
    store->RegisterSubject(item->subject);
    if (item->state == ItemState::kClaimed) {
      item->state = ItemState::kQueued;
      item->claimant.clear();
    }
    run->items.push_back(std::move(item).value());
  }
  if (!errors.empty()) return errors;
  return run;
}

Status SaveItems(const EvaluationRun& run) {
  if (!run.dir) return Status::Ok();
  json items = json::array();
  for (const ReviewItem& item : run.items) items.push_back(item.ToJson());
  return WriteJsonFile(*run.dir / "items.json", json{{"run_id", run.config.run_id}, {"items", std::move(items)}});
}

Result<std::vector<ExplanationVerdict>> CheckExplanations(const EvaluationRun& run) {
  EvidenceReviews reviews = run.EffectiveReviews();
  std::vector<ExplanationVerdict> out;
  ErrorList errors;
  for (const Explanation& e : run.explanations) {
    auto model = run.models.find(e.model_id);
    if (model == run.models.end()) {
      // A lone model is still checked so that C6 reports the mismatch.
      if (run.models.size() != 1) {
        errors.push_back(MakeError(ErrorCode::kNotFound, e.id, "model " + e.model_id));
        continue;
      }
      model = run.models.begin();
    }
    const Observation* obs = run.FindObservation(e.observation_id);
    if (obs == nullptr) {
      errors.push_back(MakeError(ErrorCode::kUnknownObservation, e.id, e.observation_id));
      continue;
    }
    auto v = CheckPlausibility(model->second, *obs, e, run.roles, reviews);
    if (!v.ok()) {
      errors.insert(errors.end(), v.errors().begin(), v.errors().end());
      continue;
    }
    out.push_back({e.submission_id, std::move(v).value()});
  }
  if (!errors.empty()) return errors;

  for (const ConsistencyViolation& cv : CheckCellLineConsistency(run.explanations, run.models)) {
    for (ExplanationVerdict& ev : out) {
      const std::string& id = ev.verdict.explanation_id;
      if (id != cv.first && id != cv.second) continue;
      CriterionResult& c6 = ev.verdict.criteria[5];
      c6.outcome = Outcome::kFail;
      std::string other = id == cv.first ? cv.second : cv.first;
      c6.detail += (c6.detail.empty() ? "" : "; ") + cv.detail + " (with " + other + ")";
      ev.verdict.overall = CombineOverall(ev.verdict.criteria);
    }
  }
  return out;
}

}  // namespace mecheval
