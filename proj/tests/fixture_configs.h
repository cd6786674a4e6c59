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


// Run configurations over the fixture tree, shared by the harness-level
// tests and the acceptance binary.

#ifndef MECHEVAL_TESTS_FIXTURE_CONFIGS_H_
#define MECHEVAL_TESTS_FIXTURE_CONFIGS_H_

#include <string>

#include "mecheval/harness/run_config.h"
#include "test_util.h"

namespace mecheval::testing {

inline RunConfig OverlapConfig(std::string run_id = "table5") {
  RunConfig c;
  c.run_id = std::move(run_id);
  c.phase = Phase::kII;
  for (const char* s : {"sub1", "sub2", "sub3", "sub4"}) c.submissions.push_back(DataPath(std::string("table5/") + s));
  c.refset = DataPath("table5/refset.json");
  c.judgments = DataPath("table5/judgments.json");
  return c;
}

inline RunConfig Phase1Config(std::string run_id = "phase1") {
  RunConfig c;
  c.run_id = std::move(run_id);
  c.phase = Phase::kI;
  c.submissions.push_back(DataPath("phase1/teamx"));
  c.judgments = DataPath("phase1/judgments.json");
  return c;
}

// One flagged match and one exact match, nothing judged.
inline RunConfig ReviewConfig(std::string run_id = "review") {
  RunConfig c;
  c.run_id = std::move(run_id);
  c.phase = Phase::kII;
  c.submissions.push_back(DataPath("review/rv"));
  c.refset = DataPath("review/refset.json");
  return c;
}

inline RunConfig Figure4Config(std::string run_id = "figure4", bool with_reviews = true) {
  RunConfig c;
  c.run_id = std::move(run_id);
  c.phase = Phase::kIII;
  c.models.push_back(DataPath("figure4/model.json"));
  c.observations = DataPath("figure4/observations.csv");
  c.explanations = DataPath("figure4/explanations.json");
  if (with_reviews) c.reviews = DataPath("figure4/reviews.json");
  return c;
}

}  // namespace mecheval::testing

#endif  // MECHEVAL_TESTS_FIXTURE_CONFIGS_H_
