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


#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "mecheval/harness/run_config.h"
#include "test_util.h"

namespace mecheval {
namespace {

using nlohmann::json;

TEST(RunConfigTest, ParsePhaseSpellings) {
  EXPECT_EQ(ParsePhase("I"), Phase::kI);
  EXPECT_EQ(ParsePhase(" phase2 "), Phase::kII);
  EXPECT_EQ(ParsePhase("3"), Phase::kIII);
  EXPECT_FALSE(ParsePhase("IV").has_value());
  EXPECT_EQ(DialectFor(Phase::kI), Dialect::kPhaseI);
  EXPECT_EQ(DialectFor(Phase::kIII), Dialect::kPhaseII);
}

TEST(RunConfigTest, ParseDaysForms) {
  EXPECT_EQ(*ParseDays("7"), Ratio::Make(7, 1));
  EXPECT_EQ(*ParseDays("7/2"), Ratio::Make(7, 2));
  EXPECT_EQ(*ParseDays("3.50"), Ratio::Make(7, 2));
  EXPECT_EQ(ParseDays("0").code(), ErrorCode::kNonpositiveDays);
  EXPECT_EQ(ParseDays("-2").code(), ErrorCode::kNonpositiveDays);
  EXPECT_EQ(ParseDays("abc").code(), ErrorCode::kInvalidArgument);
  EXPECT_EQ(ParseDays("1/x").code(), ErrorCode::kInvalidArgument);
}

TEST(RunConfigTest, RelativePathsResolveAgainstBase) {
  auto c = RunConfig::FromJson(json::parse(R"({
    "run_id": "r", "phase": "II", "submissions": ["s1", "/abs/s2"], "refset": "ref.json",
    "days": "7/2", "total_submitted": 40})"), "/base");
  ASSERT_TRUE(c.ok()) << JoinErrors(c.errors());
  EXPECT_EQ(c->submissions[0], std::filesystem::path("/base/s1"));
  EXPECT_EQ(c->submissions[1], std::filesystem::path("/abs/s2"));
  EXPECT_EQ(*c->refset, std::filesystem::path("/base/ref.json"));
  EXPECT_EQ(*c->days, Ratio::Make(7, 2));
  EXPECT_EQ(*c->total_submitted, 40);
}

TEST(RunConfigTest, CollectsEveryProblem) {
  auto c = RunConfig::FromJson(json::parse(R"({"phase": "V", "fold_hi": 0.2, "total_submitted": -1})"));
  ASSERT_FALSE(c.ok());
  EXPECT_EQ(c.errors().size(), 4u);
}

TEST(RunConfigTest, JsonRoundTrip) {
  RunConfig c;
  c.run_id = "rt";
  c.phase = Phase::kIII;
  c.submissions = {"/a", "/b"};
  c.models = {"/m.json"};
  c.observations = "/obs.csv";
  c.reviews = "/rev.json";
  c.days = Ratio::Make(3, 1);
  c.top_k = 5;
  auto back = RunConfig::FromJson(c.ToJson());
  ASSERT_TRUE(back.ok()) << JoinErrors(back.errors());
  EXPECT_EQ(back->ToJson(), c.ToJson());
}

TEST(RunConfigTest, LoadReadsFile) {
  testing::ScratchDir dir;
  testing::WriteFile(dir / "run.json", R"({"run_id": "x", "phase": "I", "submissions": ["sub"]})");
  auto c = RunConfig::Load(dir / "run.json");
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c->submissions[0], dir / "sub");
  EXPECT_EQ(RunConfig::Load(dir / "none.json").code(), ErrorCode::kMissingInput);
}

}  // namespace
}  // namespace mecheval
