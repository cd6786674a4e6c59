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

#ifndef MECHEVAL_JUDGMENTS_H_
#define MECHEVAL_JUDGMENTS_H_

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/card.h"
#include "mecheval/matcher.h"
#include "mecheval/status.h"

namespace mecheval {

enum class SkipReason { kBackgroundOrMethods, kDuplicate, kBlankIncreasesAmount };

std::string_view SkipReasonToken(SkipReason reason);

class Verdict {
 public:
  enum class Kind { kLargelyCorrect, kIncorrect, kSkipped };

  static Verdict LargelyCorrect() { return Verdict(Kind::kLargelyCorrect, std::nullopt); }
  static Verdict Incorrect() { return Verdict(Kind::kIncorrect, std::nullopt); }
  static Verdict Skipped(SkipReason reason) { return Verdict(Kind::kSkipped, reason); }

  Kind kind() const { return kind_; }
  // Set exactly when kind() == kSkipped.
  std::optional<SkipReason> reason() const { return reason_; }

  bool is_correct() const { return kind_ == Kind::kLargelyCorrect; }
  bool is_incorrect() const { return kind_ == Kind::kIncorrect; }
  bool is_skipped() const { return kind_ == Kind::kSkipped; }

  // "largely_correct", "incorrect", "skipped:duplicate", ...
  std::string ToString() const;
  static std::optional<Verdict> Parse(std::string_view token);

  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  Verdict(Kind kind, std::optional<SkipReason> reason) : kind_(kind), reason_(reason) {}
  Kind kind_;
  std::optional<SkipReason> reason_;
};

enum class Dialect { kPhaseI, kPhaseII };

std::string_view DialectToken(Dialect dialect);
std::optional<Dialect> ParseDialect(std::string_view token);

// Reviewer answers a machine cannot derive. Absent answers are reported as
// MissingAssessment when the rubric needs them.
struct FieldAssessment {
  std::optional<bool> evidence_is_results;
  std::optional<bool> participants_consistent;
  std::optional<bool> interaction_consistent;
  std::optional<bool> negative_consistent;
  // Grounding, in-model and similar observations; recorded, never scored.
  FieldFlagSet noted_flags;

  nlohmann::json ToJson() const;
  static Result<FieldAssessment> FromJson(const nlohmann::json& doc);
  friend bool operator==(const FieldAssessment&, const FieldAssessment&) = default;
};

struct Judge {
  enum class Kind { kRule, kHuman };
  Kind kind = Kind::kRule;
  std::string reviewer_id;

  static Judge Rule() { return Judge{}; }
  static Judge Human(std::string reviewer) { return Judge{Kind::kHuman, std::move(reviewer)}; }
  // "rule" or "human:<id>"
  std::string ToString() const;
  static std::optional<Judge> Parse(std::string_view token);
  friend bool operator==(const Judge&, const Judge&) = default;
};

// A verdict on a subject. Subjects are card ids, and also match and edge
// confirmations ("match:<gold>|<card>", "edge:<model>/<edge>") whose verdict
// is LargelyCorrect for accept and Incorrect for reject.
struct Judgment {
  std::string card_id;
  Verdict verdict = Verdict::Incorrect();
  FieldFlagSet field_flags;
  Judge judge;
  int revision = 0;
  Dialect dialect = Dialect::kPhaseI;
  std::string timestamp;
  std::optional<FieldAssessment> assessment;

  nlohmann::json ToJson() const;
  static Result<Judgment> FromJson(const nlohmann::json& doc);
  friend bool operator==(const Judgment&, const Judgment&) = default;
};

// Applies the scoring rubric. The blank-participant-A increases/decreases
// skip is checked first and needs no assessment.
Result<Judgment> ApplyRubric(const IndexCard& card, const FieldAssessment& inputs,
                             Dialect dialect, Judge judge = Judge::Rule());

Judgment DuplicateJudgment(std::string card_id, Dialect dialect);

std::string MatchSubject(std::string_view gold_id, std::string_view card_id);
std::string EdgeSubject(std::string_view model_id, std::string_view edge_id);

// Append-only, revisioned judgment store. With a log path every accepted
// write is appended as one JSON line before it becomes visible.
class JudgmentStore {
 public:
  JudgmentStore() = default;

  // Opens (creating if needed) a log and replays it.
  static Result<std::unique_ptr<JudgmentStore>> Open(const std::filesystem::path& log);

  void RegisterSubject(const std::string& id);
  bool HasSubject(std::string_view id) const;

  // A zero revision means "next". A nonzero revision must equal the latest
  // stored revision plus one, otherwise StaleRevision. Returns the stored
  // revision.
  Result<int> Record(Judgment judgment);

  std::optional<Judgment> Latest(std::string_view id) const;
  int LatestRevision(std::string_view id) const;
  std::vector<Judgment> History(std::string_view id) const;
  // Latest judgment per subject, ordered by subject id.
  std::map<std::string, Judgment> Snapshot() const;
  size_t log_size() const;

 private:
  mutable std::mutex mu_;
  std::set<std::string, std::less<>> subjects_;
  std::map<std::string, std::vector<Judgment>, std::less<>> history_;
  std::optional<std::filesystem::path> log_path_;
  std::ofstream log_;
  size_t entries_ = 0;
};

}  // namespace mecheval

#endif  // MECHEVAL_JUDGMENTS_H_
