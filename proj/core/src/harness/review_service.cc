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

#include "mecheval/harness/review_service.h"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <fstream>

#include "mecheval/harness/report.h"

namespace mecheval {

using nlohmann::json;
namespace fs = std::filesystem;

json QueueCounts::ToJson() const {
  return json{{"created", created}, {"queued", queued}, {"claimed", claimed}, {"resolved", resolved}};
}

ReviewService::ReviewService(ReviewServiceOptions options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = [] { return std::chrono::steady_clock::now(); };
}

Result<std::unique_ptr<ReviewService>> ReviewService::Open(ReviewServiceOptions options) {
  std::unique_ptr<ReviewService> service(new ReviewService(std::move(options)));
  fs::path runs = service->options_.root / "runs";
  std::error_code ec;
  fs::create_directories(runs, ec);
  if (ec) return MakeError(ErrorCode::kIoError, runs.string(), ec.message());
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(runs)) {
    if (entry.is_directory() && fs::exists(entry.path() / "config.json")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const fs::path& dir : dirs) {
    auto run = OpenRun(dir);
    if (!run.ok()) {
      ErrorList errors{MakeError(ErrorCode::kIoError, dir.string(), "cannot reopen run")};
      errors.insert(errors.end(), run.errors().begin(), run.errors().end());
      return errors;
    }
    std::string id = (*run)->config.run_id;
    service->Index(**run);
    service->runs_[id] = std::move(run).value();
  }
  return service;
}

void ReviewService::Index(EvaluationRun& run) {
  for (size_t i = 0; i < run.items.size(); ++i) items_[run.items[i].item_id] = ItemRef{&run, i};
}

Result<std::string> ReviewService::CreateRun(const RunConfig& config) {
  const std::string& id = config.run_id;
  bool valid = !id.empty() && id != "." && id != ".." &&
               std::all_of(id.begin(), id.end(), [](char c) {
                 return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
               });
  if (!valid) return MakeError(ErrorCode::kInvalidArgument, "run_id", id);
  std::lock_guard<std::mutex> lock(mu_);
  if (runs_.count(id) != 0) return MakeError(ErrorCode::kDuplicateRun, id);
  auto run = IngestRun(config, options_.root / "runs" / id);
  if (!run.ok()) return run.errors();
  Index(**run);
  runs_[id] = std::move(run).value();
  return id;
}

std::vector<std::string> ReviewService::RunIds() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, run] : runs_) out.push_back(id);
  return out;
}

const EvaluationRun* ReviewService::run(std::string_view run_id) const {
  auto it = runs_.find(run_id);
  return it == runs_.end() ? nullptr : it->second.get();
}

void ReviewService::ExpireClaims() {
  auto now = options_.clock();
  for (auto it = last_activity_.begin(); it != last_activity_.end();) {
    if (now - it->second < options_.claim_timeout) {
      ++it;
      continue;
    }
    auto ref = items_.find(it->first);
    if (ref != items_.end()) {
      ReviewItem& item = ref->second.run->items[ref->second.index];
      if (item.state == ItemState::kClaimed) {
        item.state = ItemState::kQueued;
        item.claimant.clear();
      }
    }
    it = last_activity_.erase(it);
  }
}

Result<ReviewService::ItemRef> ReviewService::Find(std::string_view item_id) {
  auto it = items_.find(item_id);
  if (it == items_.end()) return MakeError(ErrorCode::kUnknownItem, std::string(item_id));
  return it->second;
}

Result<json> ReviewService::ListQueue(std::string_view run_id, const QueueFilter& filter) {
  std::lock_guard<std::mutex> lock(mu_);
  ExpireClaims();
  auto it = runs_.find(run_id);
  if (it == runs_.end()) return MakeError(ErrorCode::kUnknownRun, std::string(run_id));
  const EvaluationRun& run = *it->second;
  QueueCounts counts;
  json items = json::array();
  for (const ReviewItem& item : run.items) {
    ++counts.created;
    switch (item.state) {
      case ItemState::kQueued: ++counts.queued; break;
      case ItemState::kClaimed: ++counts.claimed; break;
      case ItemState::kResolved: ++counts.resolved; break;
    }
    if (filter.kind && item.kind != *filter.kind) continue;
    if (filter.state && item.state != *filter.state) continue;
    if (filter.paper_id && item.paper_id != *filter.paper_id) continue;
    items.push_back(item.ToJson());
  }
  return json{{"run_id", run.config.run_id},
              {"status", RunStatusToken(run.status())},
              {"counts", counts.ToJson()},
              {"items", std::move(items)}};
}

Result<QueueCounts> ReviewService::Counts(std::string_view run_id) {
  auto q = ListQueue(run_id);
  if (!q.ok()) return q.errors();
  const json& c = (*q)["counts"];
  return QueueCounts{c["created"], c["queued"], c["claimed"], c["resolved"]};
}

Result<ReviewItem> ReviewService::GetItem(std::string_view item_id) {
  std::lock_guard<std::mutex> lock(mu_);
  ExpireClaims();
  auto ref = Find(item_id);
  if (!ref.ok()) return ref.errors();
  return ref->run->items[ref->index];
}

Result<ReviewItem> ReviewService::Claim(std::string_view item_id, const std::string& reviewer) {
  if (reviewer.empty()) return MakeError(ErrorCode::kUnauthorized, std::string(item_id), "no reviewer");
  std::lock_guard<std::mutex> lock(mu_);
  ExpireClaims();
  auto ref = Find(item_id);
  if (!ref.ok()) return ref.errors();
  ReviewItem& item = ref->run->items[ref->index];
  if (item.state == ItemState::kResolved) {
    return MakeError(ErrorCode::kAlreadyClaimed, item.item_id, "already resolved");
  }
  if (item.state == ItemState::kClaimed && item.claimant != reviewer) {
    return MakeError(ErrorCode::kAlreadyClaimed, item.item_id, "claimed by " + item.claimant);
  }
  item.state = ItemState::kClaimed;
  item.claimant = reviewer;
  last_activity_[item.item_id] = options_.clock();
  return item;
}

Status ReviewService::Release(std::string_view item_id, const std::string& reviewer) {
  std::lock_guard<std::mutex> lock(mu_);
  ExpireClaims();
  auto ref = Find(item_id);
  if (!ref.ok()) return ref.errors();
  ReviewItem& item = ref->run->items[ref->index];
  if (item.state != ItemState::kClaimed || item.claimant != reviewer) {
    return MakeError(ErrorCode::kNotClaimant, item.item_id);
  }
  item.state = ItemState::kQueued;
  item.claimant.clear();
  last_activity_.erase(item.item_id);
  return Status::Ok();
}

namespace {

std::string NowUtc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Result<Judgment> ReviewService::DecisionToJudgment(const EvaluationRun& run, const ReviewItem& item,
                                                   const std::string& reviewer, const json& decision) const {
  if (!decision.is_object()) return MakeError(ErrorCode::kMalformedDocument, "decision", "expected object");
  Dialect dialect = DialectFor(run.config.phase);
  int revision = 0;
  if (auto r = decision.find("revision"); r != decision.end() && !r->is_null()) {
    if (!r->is_number_integer() || r->get<int>() < 1) {
      return MakeError(ErrorCode::kInvalidArgument, "decision.revision", r->dump());
    }
    revision = r->get<int>();
  }

  Judgment j;
  if (item.kind == ItemKind::kCardVerdict) {
    const SubmissionRun* sub = run.FindSubmission(item.ledger);
    const IndexCard* card = sub == nullptr ? nullptr : sub->FindCard(item.subject);
    if (card == nullptr) return MakeError(ErrorCode::kUnknownCard, item.subject);
    auto assessment = FieldAssessment::FromJson(decision.value("assessment", json::object()));
    if (!assessment.ok()) return assessment.errors();
    auto rubric = ApplyRubric(*card, *assessment, dialect, Judge::Human(reviewer));
    if (!rubric.ok()) return rubric.errors();
    j = std::move(rubric).value();
  } else {
    std::string answer = decision.value("decision", std::string());
    if (answer != "accept" && answer != "reject") {
      return MakeError(ErrorCode::kBadEnumValue, "decision.decision", answer);
    }
    j.card_id = item.subject;
    j.verdict = answer == "accept" ? Verdict::LargelyCorrect() : Verdict::Incorrect();
    j.judge = Judge::Human(reviewer);
    j.dialect = dialect;
    if (item.kind == ItemKind::kMatchConfirmation) {
      if (auto f = decision.find("flags"); f != decision.end()) {
        auto flags = FieldFlagSet::FromJson(*f);
        if (!flags.ok()) return flags.errors();
        j.field_flags = *flags;
      } else if (item.payload.contains("match")) {
        auto record = MatchRecord::FromJson(item.payload["match"]);
        if (record.ok()) j.field_flags = record->field_flags;
      }
    }
  }
  j.revision = revision;
  j.timestamp = NowUtc();
  return j;
}

Result<ReviewItem> ReviewService::Resolve(std::string_view item_id, const std::string& reviewer,
                                          const json& decision) {
  std::lock_guard<std::mutex> lock(mu_);
  ExpireClaims();
  auto ref = Find(item_id);
  if (!ref.ok()) return ref.errors();
  EvaluationRun& run = *ref->run;
  ReviewItem& item = run.items[ref->index];
  if (item.state == ItemState::kResolved) {
    return MakeError(ErrorCode::kAlreadyClaimed, item.item_id, "already resolved");
  }
  if (item.state != ItemState::kClaimed || item.claimant != reviewer) {
    return MakeError(ErrorCode::kNotClaimant, item.item_id);
  }
  last_activity_[item.item_id] = options_.clock();
  auto judgment = DecisionToJudgment(run, item, reviewer, decision);
  if (!judgment.ok()) return judgment.errors();
  JudgmentStore* store = run.store(item.ledger);
  if (store == nullptr) return MakeError(ErrorCode::kUnknownItem, item.item_id, "no ledger " + item.ledger);
  auto revision = store->Record(std::move(judgment).value());
  if (!revision.ok()) return revision.errors();

  item.state = ItemState::kResolved;
  item.claimant.clear();
  item.judgment_revision = *revision;
  last_activity_.erase(item.item_id);
  if (Status s = SaveItems(run); !s.ok()) return s.errors();
  return item;
}

Result<json> ReviewService::Report(std::string_view run_id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = runs_.find(run_id);
  if (it == runs_.end()) return MakeError(ErrorCode::kUnknownRun, std::string(run_id));
  const EvaluationRun& run = *it->second;
  json report = BuildReport(run);
  if (run.dir) {
    std::ofstream out(*run.dir / "report.json", std::ios::trunc);
    out << report.dump(2) << '\n';
  }
  return report;
}

}  // namespace mecheval
