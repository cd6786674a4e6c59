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

#ifndef MECHEVAL_HARNESS_REVIEW_SERVICE_H_
#define MECHEVAL_HARNESS_REVIEW_SERVICE_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/harness/evaluation.h"
#include "mecheval/harness/run_config.h"
#include "mecheval/status.h"

namespace mecheval {

using SteadyClock = std::function<std::chrono::steady_clock::time_point()>;

struct ReviewServiceOptions {
  // Data root; runs are kept under <root>/runs/<run_id>.
  std::filesystem::path root;
  // A claim with no activity for this long returns to the queue.
  std::chrono::seconds claim_timeout{std::chrono::minutes(30)};
  // Injectable for tests; defaults to steady_clock::now.
  SteadyClock clock;
};

struct QueueFilter {
  std::optional<ItemKind> kind;
  std::optional<ItemState> state;
  std::optional<std::string> paper_id;
};

struct QueueCounts {
  int64_t created = 0;
  int64_t queued = 0;
  int64_t claimed = 0;
  int64_t resolved = 0;
  nlohmann::json ToJson() const;
};

// Review workflow over persisted runs. One lock serializes queue changes;
// judgment writes additionally go through the store's revision check, so a
// decision posted against an outdated revision fails with StaleRevision.
class ReviewService {
 public:
  // Opens every run found under the root.
  static Result<std::unique_ptr<ReviewService>> Open(ReviewServiceOptions options);

  Result<std::string> CreateRun(const RunConfig& config);
  std::vector<std::string> RunIds() const;

  // {"run_id", "status", "counts", "items": [...]}
  Result<nlohmann::json> ListQueue(std::string_view run_id, const QueueFilter& filter = {});
  Result<QueueCounts> Counts(std::string_view run_id);
  Result<ReviewItem> GetItem(std::string_view item_id);

  // Requires the item to be queued, or already claimed by `reviewer` (which
  // refreshes the claim).
  Result<ReviewItem> Claim(std::string_view item_id, const std::string& reviewer);
  Status Release(std::string_view item_id, const std::string& reviewer);

  // Decision documents:
  //   card_verdict:        {"assessment": {...}, "revision": n?}
  //   match_confirmation:  {"decision": "accept"|"reject", "flags": [...]?, "revision": n?}
  //   evidence_support:    {"decision": "accept"|"reject", "revision": n?}
  Result<ReviewItem> Resolve(std::string_view item_id, const std::string& reviewer,
                             const nlohmann::json& decision);

  // Recomputes the report from the latest judgments and keeps a copy as
  // <run>/report.json.
  Result<nlohmann::json> Report(std::string_view run_id);

  // Direct access for embedders and tests; not synchronized.
  const EvaluationRun* run(std::string_view run_id) const;

 private:
  explicit ReviewService(ReviewServiceOptions options);

  struct ItemRef {
    EvaluationRun* run;
    size_t index;
  };

  void ExpireClaims();
  Result<ItemRef> Find(std::string_view item_id);
  void Index(EvaluationRun& run);
  Result<Judgment> DecisionToJudgment(const EvaluationRun& run, const ReviewItem& item,
                                      const std::string& reviewer, const nlohmann::json& decision) const;

  ReviewServiceOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<EvaluationRun>, std::less<>> runs_;
  std::map<std::string, ItemRef, std::less<>> items_;
  std::map<std::string, std::chrono::steady_clock::time_point, std::less<>> last_activity_;
};

}  // namespace mecheval

#endif  // MECHEVAL_HARNESS_REVIEW_SERVICE_H_
