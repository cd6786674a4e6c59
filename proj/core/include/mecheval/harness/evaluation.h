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

#ifndef MECHEVAL_HARNESS_EVALUATION_H_
#define MECHEVAL_HARNESS_EVALUATION_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/card.h"
#include "mecheval/equivalence.h"
#include "mecheval/explanation.h"
#include "mecheval/harness/run_config.h"
#include "mecheval/judgments.h"
#include "mecheval/matcher.h"
#include "mecheval/model_graph.h"
#include "mecheval/refset.h"
#include "mecheval/status.h"

namespace mecheval {

enum class RunStatus { kIngested, kAwaitingReview, kComplete };
std::string_view RunStatusToken(RunStatus status);

enum class ItemKind { kCardVerdict, kMatchConfirmation, kEvidenceSupport };
std::string_view ItemKindToken(ItemKind kind);
std::optional<ItemKind> ParseItemKind(std::string_view token);

enum class ItemState { kQueued, kClaimed, kResolved };
std::string_view ItemStateToken(ItemState state);
std::optional<ItemState> ParseItemState(std::string_view token);

// One question for a reviewer. The answer is stored as a judgment on
// `subject` in the `ledger` judgment store.
struct ReviewItem {
  std::string item_id;
  ItemKind kind = ItemKind::kCardVerdict;
  std::string ledger;
  std::string subject;
  std::string paper_id;  // empty for model-level questions
  nlohmann::json payload;
  ItemState state = ItemState::kQueued;
  std::string claimant;
  std::optional<int> judgment_revision;

  nlohmann::json ToJson() const;
  static Result<ReviewItem> FromJson(const nlohmann::json& doc);
};

struct SubmissionRun {
  Submission submission;
  std::vector<IndexCard> unique;
  std::vector<DuplicateCard> duplicates;
  // Cards the rubric is applied to: all unique cards in phase I, the top
  // ranked ones per paper in phase II.
  std::vector<IndexCard> scored;
  std::vector<MatchRecord> matches;

  const IndexCard* FindCard(std::string_view card_id) const;
};

// Ledger holding explanation-level reviews.
inline constexpr std::string_view kExplanationLedger = "explanations";

// Loaded inputs plus review state of one run. Derived data (dedup, matches)
// is recomputed from the inputs on every open.
struct EvaluationRun {
  RunConfig config;
  EquivalenceTable table = EquivalenceTable::Default();
  std::vector<SubmissionRun> submissions;
  std::vector<ReferenceInteraction> refs;
  std::map<std::string, MechModel> models;
  std::vector<Observation> observations;
  std::vector<Explanation> explanations;
  EntityRoleTable roles;
  EvidenceReviews file_reviews;
  std::vector<std::string> warnings;

  std::map<std::string, std::unique_ptr<JudgmentStore>> stores;  // by ledger
  std::vector<ReviewItem> items;
  std::optional<std::filesystem::path> dir;  // set for persisted runs

  const SubmissionRun* FindSubmission(std::string_view team_id) const;
  const Observation* FindObservation(std::string_view id) const;
  JudgmentStore* store(std::string_view ledger) const;
  std::map<std::string, Judgment> Snapshot(std::string_view ledger) const;
  // Review answers from the reviews file overlaid with resolved items.
  EvidenceReviews EffectiveReviews() const;
  RunStatus status() const;
};

// Reads and validates every input named by the config and computes the
// derived data. Fails with MissingInput for required inputs the phase needs
// and ParseFailures (wrapping each violation) for unreadable ones. Prior
// judgments are not applied here; IngestRun seeds them and builds the queue.
Result<std::unique_ptr<EvaluationRun>> LoadRunInputs(const RunConfig& config);

// Loads inputs, records rule judgments and seeded judgments, and builds the
// review queue. With `dir` the run is persisted there (DuplicateRun if the
// directory already holds a run); without it everything stays in memory.
Result<std::unique_ptr<EvaluationRun>> IngestRun(
    const RunConfig& config, const std::optional<std::filesystem::path>& dir = std::nullopt);

// Reopens a persisted run: inputs are reloaded, judgment logs replayed and
// item states restored. Claims do not survive a reopen.
Result<std::unique_ptr<EvaluationRun>> OpenRun(const std::filesystem::path& dir);

// Rewrites the item snapshot of a persisted run.
Status SaveItems(const EvaluationRun& run);

struct ExplanationVerdict {
  std::string submission_id;
  PlausibilityVerdict verdict;
};

// Checks every explanation against its model, then marks C6 failed on
// explanations involved in a cell-line consistency violation.
Result<std::vector<ExplanationVerdict>> CheckExplanations(const EvaluationRun& run);

}  // namespace mecheval

#endif  // MECHEVAL_HARNESS_EVALUATION_H_
