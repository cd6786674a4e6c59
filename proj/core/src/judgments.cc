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

#include "mecheval/judgments.h"

#include <algorithm>

namespace mecheval {

using nlohmann::json;

std::string_view SkipReasonToken(SkipReason reason) {
  switch (reason) {
    case SkipReason::kBackgroundOrMethods: return "background_or_methods";
    case SkipReason::kDuplicate: return "duplicate";
    case SkipReason::kBlankIncreasesAmount: return "blank_increases_amount";
  }
  return "";
}

std::string Verdict::ToString() const {
  switch (kind_) {
    case Kind::kLargelyCorrect: return "largely_correct";
    case Kind::kIncorrect: return "incorrect";
    case Kind::kSkipped: return "skipped:" + std::string(SkipReasonToken(*reason_));
  }
  return "";
}

std::optional<Verdict> Verdict::Parse(std::string_view token) {
  if (token == "largely_correct") return LargelyCorrect();
  if (token == "incorrect") return Incorrect();
  constexpr std::string_view kSkip = "skipped:";
  if (token.substr(0, kSkip.size()) == kSkip) {
    std::string_view reason = token.substr(kSkip.size());
    for (SkipReason r : {SkipReason::kBackgroundOrMethods, SkipReason::kDuplicate,
                         SkipReason::kBlankIncreasesAmount}) {
      if (SkipReasonToken(r) == reason) return Skipped(r);
    }
  }
  return std::nullopt;
}

std::string_view DialectToken(Dialect dialect) {
  return dialect == Dialect::kPhaseI ? "phase1" : "phase2";
}

std::optional<Dialect> ParseDialect(std::string_view token) {
  if (token == "phase1" || token == "I") return Dialect::kPhaseI;
  if (token == "phase2" || token == "II") return Dialect::kPhaseII;
  return std::nullopt;
}

namespace {

constexpr const char* kAssessmentFields[] = {"evidence_is_results", "participants_consistent",
                                             "interaction_consistent", "negative_consistent"};

std::optional<bool> FieldAssessment::*AssessmentMember(int i) {
  switch (i) {
    case 0: return &FieldAssessment::evidence_is_results;
    case 1: return &FieldAssessment::participants_consistent;
    case 2: return &FieldAssessment::interaction_consistent;
    default: return &FieldAssessment::negative_consistent;
  }
}

bool BlankAmountCard(const IndexCard& card) {
  const Interaction& in = card.interaction;
  return IsBlank(in.participant_a) && (in.kind == InteractionKind::kIncreasesAmount ||
                                       in.kind == InteractionKind::kDecreasesAmount);
}

}  // namespace

json FieldAssessment::ToJson() const {
  json out = json::object();
  for (int i = 0; i < 4; ++i) {
    const auto& v = this->*AssessmentMember(i);
    out[kAssessmentFields[i]] = v ? json(*v) : json(nullptr);
  }
  out["noted_flags"] = noted_flags.ToJson();
  return out;
}

Result<FieldAssessment> FieldAssessment::FromJson(const json& doc) {
  if (!doc.is_object()) {
    return MakeError(ErrorCode::kMalformedDocument, "assessment", "expected object");
  }
  FieldAssessment out;
  for (int i = 0; i < 4; ++i) {
    auto it = doc.find(kAssessmentFields[i]);
    if (it == doc.end() || it->is_null()) continue;
    if (!it->is_boolean()) {
      return MakeError(ErrorCode::kBadEnumValue, std::string("assessment.") + kAssessmentFields[i],
                       it->dump());
    }
    out.*AssessmentMember(i) = it->get<bool>();
  }
  if (auto it = doc.find("noted_flags"); it != doc.end()) {
    auto flags = FieldFlagSet::FromJson(*it);
    if (!flags.ok()) return flags.errors();
    out.noted_flags = *flags;
  }
  return out;
}

std::string Judge::ToString() const {
  return kind == Kind::kRule ? "rule" : "human:" + reviewer_id;
}

std::optional<Judge> Judge::Parse(std::string_view token) {
  if (token == "rule") return Rule();
  constexpr std::string_view kHuman = "human:";
  if (token.substr(0, kHuman.size()) == kHuman && token.size() > kHuman.size()) {
    return Human(std::string(token.substr(kHuman.size())));
  }
  return std::nullopt;
}

json Judgment::ToJson() const {
  json out{{"card_id", card_id},
           {"revision", revision},
           {"verdict", verdict.ToString()},
           {"flags", field_flags.ToJson()},
           {"judge", judge.ToString()},
           {"dialect", DialectToken(dialect)},
           {"timestamp", timestamp}};
  if (assessment) out["assessment"] = assessment->ToJson();
  return out;
}

Result<Judgment> Judgment::FromJson(const json& doc) {
  if (!doc.is_object()) return MakeError(ErrorCode::kMalformedDocument, "judgment", "expected object");
  Judgment j;
  try {
    j.card_id = doc.at("card_id").get<std::string>();
    j.revision = doc.at("revision").get<int>();
    auto verdict = Verdict::Parse(doc.at("verdict").get<std::string>());
    if (!verdict) return MakeError(ErrorCode::kBadEnumValue, "verdict", doc.at("verdict").dump());
    j.verdict = *verdict;
    auto flags = FieldFlagSet::FromJson(doc.value("flags", json::array()));
    if (!flags.ok()) return flags.errors();
    j.field_flags = *flags;
    auto judge = Judge::Parse(doc.value("judge", std::string("rule")));
    if (!judge) return MakeError(ErrorCode::kBadEnumValue, "judge", doc.at("judge").dump());
    j.judge = *judge;
    auto dialect = ParseDialect(doc.value("dialect", std::string("phase1")));
    if (!dialect) return MakeError(ErrorCode::kBadEnumValue, "dialect", doc.at("dialect").dump());
    j.dialect = *dialect;
    j.timestamp = doc.value("timestamp", std::string());
    if (auto it = doc.find("assessment"); it != doc.end() && !it->is_null()) {
      auto a = FieldAssessment::FromJson(*it);
      if (!a.ok()) return a.errors();
      j.assessment = *a;
    }
  } catch (const json::exception& e) {
    return MakeError(ErrorCode::kMalformedDocument, "judgment", e.what());
  }
  return j;
}

Result<Judgment> ApplyRubric(const IndexCard& card, const FieldAssessment& inputs,
                             Dialect dialect, Judge judge) {
  Judgment j;
  j.card_id = card.card_id;
  j.dialect = dialect;
  j.judge = std::move(judge);
  j.assessment = inputs;
  j.field_flags = inputs.noted_flags;

  if (BlankAmountCard(card)) {
    j.verdict = Verdict::Skipped(SkipReason::kBlankIncreasesAmount);
    return j;
  }

  ErrorList missing;
  for (int i = 0; i < 4; ++i) {
    if (!(inputs.*AssessmentMember(i))) {
      missing.push_back(MakeError(ErrorCode::kMissingAssessment, kAssessmentFields[i]));
    }
  }
  if (!missing.empty()) return missing;

  const bool results = *inputs.evidence_is_results;
  const bool correct = *inputs.participants_consistent && *inputs.interaction_consistent &&
                       *inputs.negative_consistent;
  if (!*inputs.interaction_consistent) j.field_flags.set(FieldFlag::kInteractionTypeError);

  if (results) {
    j.verdict = correct ? Verdict::LargelyCorrect() : Verdict::Incorrect();
  } else if (dialect == Dialect::kPhaseII && !correct) {
    j.verdict = Verdict::Incorrect();
  } else {
    j.verdict = Verdict::Skipped(SkipReason::kBackgroundOrMethods);
  }
  return j;
}

Judgment DuplicateJudgment(std::string card_id, Dialect dialect) {
  Judgment j;
  j.card_id = std::move(card_id);
  j.dialect = dialect;
  j.verdict = Verdict::Skipped(SkipReason::kDuplicate);
  return j;
}

std::string MatchSubject(std::string_view gold_id, std::string_view card_id) {
  return "match:" + std::string(gold_id) + "|" + std::string(card_id);
}

std::string EdgeSubject(std::string_view model_id, std::string_view edge_id) {
  return "edge:" + std::string(model_id) + "/" + std::string(edge_id);
}

// ---------------------------------------------------------------------------

Result<std::unique_ptr<JudgmentStore>> JudgmentStore::Open(const std::filesystem::path& log) {
  auto store = std::make_unique<JudgmentStore>();
  std::error_code ec;
  if (std::filesystem::exists(log, ec)) {
    std::ifstream in(log);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      json doc = json::parse(line, nullptr, false);
      std::string where = log.string() + ":" + std::to_string(line_no);
      if (doc.is_discarded()) return MakeError(ErrorCode::kMalformedDocument, where, "bad log line");
      auto j = Judgment::FromJson(doc);
      if (!j.ok()) return MakeError(ErrorCode::kMalformedDocument, where, JoinErrors(j.errors(), "; "));
      store->subjects_.insert(j->card_id);
      auto& h = store->history_[j->card_id];
      int expected = h.empty() ? 1 : h.back().revision + 1;
      if (j->revision != expected) {
        return MakeError(ErrorCode::kStaleRevision, where, "log revisions out of order");
      }
      h.push_back(std::move(j).value());
      ++store->entries_;
    }
  } else if (log.has_parent_path()) {
    std::filesystem::create_directories(log.parent_path(), ec);
  }
  store->log_path_ = log;
  store->log_.open(log, std::ios::app);
  if (!store->log_) return MakeError(ErrorCode::kIoError, log.string(), "cannot open for append");
  return store;
}

void JudgmentStore::RegisterSubject(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  subjects_.insert(id);
}

bool JudgmentStore::HasSubject(std::string_view id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return subjects_.find(id) != subjects_.end();
}

Result<int> JudgmentStore::Record(Judgment judgment) {
  std::lock_guard<std::mutex> lock(mu_);
  if (subjects_.find(judgment.card_id) == subjects_.end()) {
    return MakeError(ErrorCode::kUnknownCard, judgment.card_id);
  }
  auto& h = history_[judgment.card_id];
  int latest = h.empty() ? 0 : h.back().revision;
  if (judgment.revision == 0) {
    judgment.revision = latest + 1;
  } else if (judgment.revision != latest + 1) {
    return MakeError(ErrorCode::kStaleRevision, judgment.card_id,
                     "revision " + std::to_string(judgment.revision) + " but latest is " +
                         std::to_string(latest));
  }
  if (log_path_) {
    log_ << judgment.ToJson().dump() << '\n';
    log_.flush();
    if (!log_) return MakeError(ErrorCode::kIoError, log_path_->string(), "append failed");
  }
  int stored = judgment.revision;
  h.push_back(std::move(judgment));
  ++entries_;
  return stored;
}

std::optional<Judgment> JudgmentStore::Latest(std::string_view id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = history_.find(id);
  if (it == history_.end() || it->second.empty()) return std::nullopt;
  return it->second.back();
}

int JudgmentStore::LatestRevision(std::string_view id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = history_.find(id);
  if (it == history_.end() || it->second.empty()) return 0;
  return it->second.back().revision;
}

std::vector<Judgment> JudgmentStore::History(std::string_view id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = history_.find(id);
  if (it == history_.end()) return {};
  return it->second;
}

std::map<std::string, Judgment> JudgmentStore::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::map<std::string, Judgment> out;
  for (const auto& [id, h] : history_) {
    if (!h.empty()) out.emplace(id, h.back());
  }
  return out;
}

size_t JudgmentStore::log_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

}  // namespace mecheval
