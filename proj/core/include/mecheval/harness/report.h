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

#ifndef MECHEVAL_HARNESS_REPORT_H_
#define MECHEVAL_HARNESS_REPORT_H_

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mecheval/harness/evaluation.h"

namespace mecheval {

enum class ReportFormat { kJson, kCsv };
std::optional<ReportFormat> ParseReportFormat(std::string_view token);

// Metrics of a run computed from its inputs and the latest judgments. Holds
// nothing time- or claim-dependent, so an unchanged run reports identically.
nlohmann::json BuildReport(const EvaluationRun& run);

// JSON is the report above; CSV is one summary row per submission (phases
// I and II) or the results grid, falling back to the verdict table while
// reviews are pending (phase III).
std::string RenderReport(const EvaluationRun& run, ReportFormat format);

// Export tables.
std::string MatchesCsv(const EvaluationRun& run);
std::string VerdictsCsv(const EvaluationRun& run);

}  // namespace mecheval

#endif  // MECHEVAL_HARNESS_REPORT_H_
