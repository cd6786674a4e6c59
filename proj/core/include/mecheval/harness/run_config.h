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

#ifndef MECHEVAL_HARNESS_RUN_CONFIG_H_
#define MECHEVAL_HARNESS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/judgments.h"
#include "mecheval/metrics.h"
#include "mecheval/status.h"

namespace mecheval {

enum class Phase { kI, kII, kIII };
std::string_view PhaseToken(Phase phase);  // "I", "II", "III"
std::optional<Phase> ParsePhase(std::string_view token);

// Card dialect used for rubric scoring in a phase.
Dialect DialectFor(Phase phase);

// Inputs and settings of one evaluation run. Paths are stored as given;
// FromJson resolves relative paths against the config file's directory.
struct RunConfig {
  std::string run_id;
  Phase phase = Phase::kI;
  std::vector<std::filesystem::path> submissions;
  std::optional<std::filesystem::path> refset;
  std::vector<std::filesystem::path> models;
  std::optional<std::filesystem::path> observations;  // perturbation CSV
  std::optional<std::filesystem::path> findings;      // comparative and narrative claims
  std::optional<std::filesystem::path> explanations;
  std::optional<std::filesystem::path> roles;
  std::optional<std::filesystem::path> reviews;
  // Prior judgments: {"<team_id>": [judgment, ...]}.
  std::optional<std::filesystem::path> judgments;
  std::optional<std::filesystem::path> equiv_table;
  // Overrides the 7-day / 3-day convention.
  std::optional<Ratio> days;
  // Overrides the card count of the submission.
  std::optional<int64_t> total_submitted;
  double fold_hi = 1.5;
  double fold_lo = 0.5;
  size_t top_k = 10;

  nlohmann::json ToJson() const;
  static Result<RunConfig> FromJson(const nlohmann::json& doc,
                                    const std::filesystem::path& base_dir = {});
  static Result<RunConfig> Load(const std::filesystem::path& file);
};

// "3", "7/2" or "3.5" as an exact day count.
Result<Ratio> ParseDays(std::string_view text);

// Root of persisted runs: $MECHEVAL_DATA_ROOT, else ./mecheval-data.
std::filesystem::path DataRoot();

}  // namespace mecheval

#endif  // MECHEVAL_HARNESS_RUN_CONFIG_H_
