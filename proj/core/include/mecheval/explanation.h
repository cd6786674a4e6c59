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

#ifndef MECHEVAL_EXPLANATION_H_
#define MECHEVAL_EXPLANATION_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/model_graph.h"
#include "mecheval/status.h"

namespace mecheval {

// ---------------------------------------------------------------------------
// Observations

// One row of a perturbation-response table.
struct PerturbationRow {
  std::string obs_id;
  std::string treatment;
  std::string dose;
  bool is_single_drug = true;
  std::string target;
  std::string antibody;
  std::string readout_entity;
  double fold_change = 1.0;
  std::string cell_line;
  int perturbation_sign = -1;  // inhibitors unless the table says otherwise
};

// Columns: obs_id, treatment, dose, is_single_drug, target, antibody,
// readout_entity, fold_change, cell_line, and optionally perturbation_sign.
Result<std::vector<PerturbationRow>> ParseObservationCsv(std::string_view text);
Result<std::vector<PerturbationRow>> LoadObservationCsv(const std::filesystem::path& file);

struct Readout {
  std::string entity;
  std::optional<std::string> site;  // "S473", taken from the antibody id
  std::string antibody;
  friend bool operator==(const Readout&, const Readout&) = default;
};

// Expected change in one cell line: +1 increase, -1 decrease, 0 no change.
struct DirectionalExpectation {
  std::string cell_line;
  int sign = 0;
  friend bool operator==(const DirectionalExpectation&, const DirectionalExpectation&) = default;
};

struct Observation {
  enum class Kind { kDirectional, kComparative, kNarrative };

  std::string id;
  Kind kind = Kind::kDirectional;
  std::string drug;
  std::string dose;
  std::string target;
  int perturbation_sign = -1;
  Readout readout;
  std::optional<double> fold_change;
  // One entry for directional observations, one per cell line for
  // comparative ones. Narrative claims may leave it empty.
  std::vector<DirectionalExpectation> expected;
  std::string narrative;

  const std::string& cell_line() const;
  friend bool operator==(const Observation&, const Observation&) = default;
};

// "AKT_pS473_V" -> "S473".
std::optional<std::string> SiteFromAntibody(std::string_view antibody);

// Single-drug rows whose fold change is above `hi` or below `lo`, in input
// order. Any row with a non-positive fold is an error.
Result<std::vector<Observation>> SelectObservations(const std::vector<PerturbationRow>& rows,
                                                    double hi = 1.5, double lo = 0.5);

// Findings file for comparative and narrative observations:
//   {"findings": [{"id", "drug", "target", "readout", "antibody",
//                  "perturbation_sign", "narrative",
//                  "comparative": [{"cell_line", "direction"}]}]}
// "direction" is increase, decrease or none. A finding without
// "comparative" is narrative-only.
Result<std::vector<Observation>> LoadFindings(const std::filesystem::path& file);
Result<std::vector<Observation>> FindingsFromJson(const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Explanations

using EdgePath = std::vector<std::string>;

struct Explanation {
  std::string id;
  std::string submission_id;
  std::string observation_id;
  std::string model_id;
  std::string cell_line;
  std::vector<EdgePath> paths;
  // Comparative observations: paths per cell line; cell lines not listed
  // use `paths`.
  std::map<std::string, std::vector<EdgePath>> cell_line_paths;
  std::string narrative;
  // Direction the submission's own simulation predicted, when given.
  std::optional<int> predicted_sign;
  // Signs the submission asserts for edges, used in cross-checks.
  std::map<std::string, int> edge_signs;

  friend bool operator==(const Explanation&, const Explanation&) = default;
};

// {"explanations": [{"id", "submission", "observation_id", "model_id",
//   "cell_line", "paths": [["e1", "e2"]], "cell_line_paths": {...},
//   "narrative", "predicted_direction": "increase"|"decrease",
//   "edge_signs": {"e1": -1}}]}
Result<std::vector<Explanation>> LoadExplanations(const std::filesystem::path& file);
Result<std::vector<Explanation>> ExplanationsFromJson(const nlohmann::json& doc);
nlohmann::json ExplanationToJson(const Explanation& explanation);

// Entity id -> roles; extends the roles recorded on the model.
using EntityRoleTable = std::map<std::string, std::set<Role>>;
Result<EntityRoleTable> LoadRoleTable(const std::filesystem::path& file);

// Review subject -> confirmed. Edge evidence uses EdgeSubject(model, edge);
// direction claims the checker cannot settle use ClaimSubject(explanation);
// missing role facts and cell contexts use RoleSubject and ContextSubject.
using EvidenceReviews = std::map<std::string, bool>;
Result<EvidenceReviews> LoadReviews(const std::filesystem::path& file);
std::string ClaimSubject(std::string_view explanation_id);
std::string RoleSubject(std::string_view model_id, std::string_view entity, Role role);
std::string ContextSubject(std::string_view model_id, std::string_view cell_line);

// ---------------------------------------------------------------------------
// Sign propagation

// Entities visited by a path. Binds edges may be walked either way; the
// first edge starts at `start` when given.
Result<std::vector<std::string>> WalkPath(const MechModel& model, const EdgePath& path,
                                          std::optional<std::string> start = std::nullopt);

// perturbation_sign × product of edge signs. An empty path returns
// perturbation_sign.
Result<int> PropagateSign(const MechModel& model, const EdgePath& path, int perturbation_sign);

// ---------------------------------------------------------------------------
// Plausibility

enum class Outcome { kPass, kFail, kNeedsHumanReview };
enum class Overall { kPlausible, kNotPlausible, kPending };

std::string_view OutcomeToken(Outcome outcome);
std::string_view OverallToken(Overall overall);

struct CriterionResult {
  Outcome outcome = Outcome::kPass;
  std::string detail;
  friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

inline constexpr int kCriteria = 6;

struct PlausibilityVerdict {
  std::string explanation_id;
  std::string observation_id;
  // C1 direction, C2 connectivity, C3 commonsense roles, C4 evidence,
  // C5 cell context, C6 model consistency.
  std::array<CriterionResult, kCriteria> criteria;
  Overall overall = Overall::kPending;
  // Review subjects whose answers would settle the open criteria.
  std::vector<std::string> pending_reviews;

  const CriterionResult& criterion(int n) const { return criteria[n - 1]; }
  nlohmann::json ToJson() const;
  friend bool operator==(const PlausibilityVerdict&, const PlausibilityVerdict&) = default;
};

Overall CombineOverall(const std::array<CriterionResult, kCriteria>& criteria);

// Checks one explanation against its observation. The cell context is
// looked up on the model by the explanation's cell line.
Result<PlausibilityVerdict> CheckPlausibility(const MechModel& model, const Observation& obs,
                                              const Explanation& expl,
                                              const EntityRoleTable& roles,
                                              const EvidenceReviews& reviews);

struct ConsistencyViolation {
  std::string cell_line;
  std::string first;   // explanation ids
  std::string second;
  std::string detail;
  friend bool operator==(const ConsistencyViolation&, const ConsistencyViolation&) = default;
};

// Pairs of explanations from one submission in one cell line that use
// different models, or use the same edge with opposite signs. Edge signs come
// from the explanation's assertions, else from its model in `models` (keyed
// by model id).
std::vector<ConsistencyViolation> CheckCellLineConsistency(
    const std::vector<Explanation>& explanations, const std::map<std::string, MechModel>& models);

// ---------------------------------------------------------------------------
// Results grid

enum class GridCell { kSupported, kUnsupported, kIncorrectPrediction, kNotAttempted };
std::string_view GridCellToken(GridCell cell);

struct SubmissionVerdict {
  std::string submission_id;
  std::string observation_id;
  PlausibilityVerdict verdict;
};

struct ResultsGrid {
  std::vector<std::string> observations;
  std::vector<std::string> submissions;  // sorted
  std::map<std::string, std::map<std::string, GridCell>> cells;  // submission -> obs -> cell
  std::map<std::string, int> supported;  // per submission
  int covered = 0;  // observations supported by at least one submission

  nlohmann::json ToJson() const;
  std::string ToCsv() const;
};

// Plausible -> Supported; NotPlausible with a C1 failure -> IncorrectPrediction;
// other NotPlausible -> Unsupported; no explanation -> NotAttempted. A
// submission with several explanations for one observation gets its best
// cell. Any Pending verdict is an error.
Result<ResultsGrid> SummarizeResultsGrid(const std::vector<std::string>& observation_ids,
                                         const std::vector<SubmissionVerdict>& verdicts);

}  // namespace mecheval

#endif  // MECHEVAL_EXPLANATION_H_
