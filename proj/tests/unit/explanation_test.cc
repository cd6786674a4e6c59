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

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/explanation.h"
#include "mecheval/judgments.h"
#include "published_tables.h"
#include "test_util.h"

namespace mecheval {
namespace {

using nlohmann::json;

MechModel TestModel() {
  auto m = MechModel::FromJson(json::parse(R"({
    "id": "t",
    "entities": [
      {"id": "T", "roles": ["kinase"]}, {"id": "K", "roles": ["kinase"]},
      {"id": "X"}, {"id": "P", "roles": ["phosphatase"]}, {"id": "Q", "roles": ["kinase"]},
      {"id": "R"}, {"id": "R2"}, {"id": "R3"}
    ],
    "interactions": [
      {"id": "e1", "source": "T", "target": "K", "kind": "adds_modification",
       "modification": "phosphorylation", "effect": "activating",
       "provenance": [{"type": "database", "db_name": "PSP", "record_id": "1"}]},
      {"id": "e2", "source": "K", "target": "R", "kind": "adds_modification",
       "modification": "phosphorylation", "effect": "activating",
       "provenance": [{"type": "database", "db_name": "PSP", "record_id": "2"}]},
      {"id": "e3", "source": "X", "target": "R", "kind": "adds_modification",
       "modification": "phosphorylation", "effect": "activating",
       "provenance": [{"type": "manual", "curator_id": "c"}]},
      {"id": "e5", "source": "T", "target": "R", "kind": "binds",
       "provenance": [{"type": "manual", "curator_id": "c"}]},
      {"id": "e6", "source": "K", "target": "R2", "kind": "adds_modification",
       "modification": "phosphorylation", "effect": "activating",
       "provenance": [{"type": "reading", "doc_id": "d", "reader_id": "r"}]},
      {"id": "e7", "source": "K", "target": "R3", "kind": "adds_modification",
       "modification": "phosphorylation", "effect": "activating",
       "provenance": [{"type": "reading", "doc_id": "d", "evidence": ["K phosphorylates R3"],
                       "reader_id": "r"}]},
      {"id": "e8", "source": "T", "target": "R", "kind": "decreases_activity",
       "provenance": [{"type": "manual", "curator_id": "c"}]},
      {"id": "e9", "source": "Q", "target": "R", "kind": "inhibits_modification",
       "modification": "dephosphorylation", "effect": "activating",
       "provenance": [{"type": "manual", "curator_id": "c"}]}
    ],
    "contexts": [{"cell_line": "L1", "knockouts": []}, {"cell_line": "L2", "knockouts": ["K"]}]
  })"));
  if (!m.ok()) throw std::runtime_error(JoinErrors(m.errors()));
  return std::move(m).value();
}

Observation Directional(std::string target, std::string readout, int sign, std::string line = "L1") {
  Observation o;
  o.id = "o1";
  o.target = std::move(target);
  o.readout.entity = std::move(readout);
  o.expected.push_back({std::move(line), sign});
  return o;
}

Explanation Expl(std::vector<EdgePath> paths, std::string line = "L1") {
  Explanation e;
  e.id = "x1";
  e.submission_id = "s";
  e.observation_id = "o1";
  e.model_id = "t";
  e.cell_line = std::move(line);
  e.paths = std::move(paths);
  return e;
}

PlausibilityVerdict Check(const Observation& o, const Explanation& e, const EvidenceReviews& reviews = {},
                          const EntityRoleTable& roles = {}) {
  static const MechModel model = TestModel();
  auto v = CheckPlausibility(model, o, e, roles, reviews);
  if (!v.ok()) throw std::runtime_error(JoinErrors(v.errors()));
  return *v;
}

bool Pending(const PlausibilityVerdict& v, const std::string& subject) {
  return std::find(v.pending_reviews.begin(), v.pending_reviews.end(), subject) != v.pending_reviews.end();
}

TEST(SignTest, PropagatesAlongPath) {
  MechModel m = TestModel();
  EXPECT_EQ(*PropagateSign(m, {"e1", "e2"}, -1), -1);
  EXPECT_EQ(*PropagateSign(m, {"e8"}, -1), 1);
  EXPECT_EQ(*PropagateSign(m, {}, -1), -1);
  EXPECT_EQ(PropagateSign(m, {"e5"}, -1).code(), ErrorCode::kUnsignedEdge);
  EXPECT_EQ(PropagateSign(m, {"nope"}, -1).code(), ErrorCode::kUnknownEdge);
}

TEST(SignTest, WalkPathFollowsEdges) {
  MechModel m = TestModel();
  EXPECT_EQ(*WalkPath(m, {"e1", "e2"}), (std::vector<std::string>{"T", "K", "R"}));
  EXPECT_EQ(WalkPath(m, {"e1", "e3"}).code(), ErrorCode::kDisconnectedPath);
  // Binds edges can be walked backwards.
  EXPECT_EQ(*WalkPath(m, {"e5"}, std::string("R")), (std::vector<std::string>{"R", "T"}));
}

TEST(PlausibilityTest, ConsistentDatabasePathIsPlausible) {
  auto v = Check(Directional("T", "R", -1), Expl({{"e1", "e2"}}));
  EXPECT_EQ(v.overall, Overall::kPlausible);
  for (int c = 1; c <= kCriteria; ++c) EXPECT_EQ(v.criterion(c).outcome, Outcome::kPass) << c;
  EXPECT_TRUE(v.pending_reviews.empty());
}

TEST(PlausibilityTest, WrongDirectionFailsC1) {
  auto v = Check(Directional("T", "R", 1), Expl({{"e1", "e2"}}));
  EXPECT_EQ(v.criterion(1).outcome, Outcome::kFail);
  EXPECT_EQ(v.overall, Overall::kNotPlausible);
}

TEST(PlausibilityTest, PredictedDirectionMustMatchObservation) {
  Explanation e = Expl({{"e1", "e2"}});
  e.predicted_sign = 1;
  EXPECT_EQ(Check(Directional("T", "R", -1), e).criterion(1).outcome, Outcome::kFail);
}

TEST(PlausibilityTest, MixedPathSignsFailC1) {
  auto v = Check(Directional("T", "R", -1), Expl({{"e1", "e2"}, {"e8"}}));
  EXPECT_EQ(v.criterion(1).outcome, Outcome::kFail);
}

TEST(PlausibilityTest, UnsignedPathGoesToReview) {
  Explanation e = Expl({{"e5"}});
  auto v = Check(Directional("T", "R", -1), e);
  EXPECT_EQ(v.criterion(1).outcome, Outcome::kNeedsHumanReview);
  EXPECT_EQ(v.overall, Overall::kPending);
  EXPECT_TRUE(Pending(v, ClaimSubject("x1")));
  EXPECT_EQ(Check(Directional("T", "R", -1), e, {{ClaimSubject("x1"), true}}).overall, Overall::kPlausible);
  EXPECT_EQ(Check(Directional("T", "R", -1), e, {{ClaimSubject("x1"), false}}).overall,
            Overall::kNotPlausible);
}

TEST(PlausibilityTest, NoPathFailsC1AndC2) {
  auto v = Check(Directional("T", "R", -1), Expl({}));
  EXPECT_EQ(v.criterion(1).outcome, Outcome::kFail);
  EXPECT_EQ(v.overall, Overall::kNotPlausible);
}

TEST(PlausibilityTest, DisconnectedPathFailsC2) {
  auto v = Check(Directional("T", "R", -1), Expl({{"e1", "e3"}}));
  EXPECT_EQ(v.criterion(2).outcome, Outcome::kFail);
  EXPECT_EQ(v.overall, Overall::kNotPlausible);
}

TEST(PlausibilityTest, PathMustEndAtReadout) {
  auto v = Check(Directional("T", "R2", -1), Expl({{"e1", "e2"}}));
  EXPECT_EQ(v.criterion(2).outcome, Outcome::kFail);
}

TEST(PlausibilityTest, MissingRoleGoesToReview) {
  Observation o = Directional("X", "R", -1);
  Explanation e = Expl({{"e3"}});
  auto v = Check(o, e);
  EXPECT_EQ(v.criterion(3).outcome, Outcome::kNeedsHumanReview);
  EXPECT_TRUE(Pending(v, RoleSubject("t", "X", Role::kKinase)));
  EXPECT_EQ(Check(o, e, {}, {{"X", {Role::kKinase}}}).criterion(3).outcome, Outcome::kPass);
  EXPECT_EQ(Check(o, e, {}, {{"X", {Role::kTranscriptionFactor}}}).criterion(3).outcome, Outcome::kFail);
  EXPECT_EQ(Check(o, e, {{RoleSubject("t", "X", Role::kKinase), false}}).criterion(3).outcome,
            Outcome::kFail);
}

TEST(PlausibilityTest, DephosphorylationNeedsPhosphatase) {
  auto v = Check(Directional("Q", "R", 1), Expl({{"e9"}}));
  EXPECT_EQ(v.criterion(3).outcome, Outcome::kFail);
}

TEST(PlausibilityTest, ReadingWithoutEvidenceFailsC4) {
  auto v = Check(Directional("T", "R2", -1), Expl({{"e1", "e6"}}));
  EXPECT_EQ(v.criterion(4).outcome, Outcome::kFail);
  EXPECT_EQ(v.overall, Overall::kNotPlausible);
}

TEST(PlausibilityTest, ReadingEvidenceNeedsReview) {
  Observation o = Directional("T", "R3", -1);
  Explanation e = Expl({{"e1", "e7"}});
  auto v = Check(o, e);
  EXPECT_EQ(v.criterion(4).outcome, Outcome::kNeedsHumanReview);
  EXPECT_TRUE(Pending(v, EdgeSubject("t", "e7")));
  EXPECT_EQ(Check(o, e, {{EdgeSubject("t", "e7"), true}}).overall, Overall::kPlausible);
  EXPECT_EQ(Check(o, e, {{EdgeSubject("t", "e7"), false}}).criterion(4).outcome, Outcome::kFail);
}

TEST(PlausibilityTest, KnockoutOnPathFailsC5) {
  auto v = Check(Directional("T", "R", -1, "L2"), Expl({{"e1", "e2"}}, "L2"));
  EXPECT_EQ(v.criterion(5).outcome, Outcome::kFail);
  EXPECT_EQ(v.overall, Overall::kNotPlausible);
}

TEST(PlausibilityTest, UnknownCellContextGoesToReview) {
  auto v = Check(Directional("T", "R", -1, "L9"), Expl({{"e1", "e2"}}, "L9"));
  EXPECT_EQ(v.criterion(5).outcome, Outcome::kNeedsHumanReview);
  EXPECT_TRUE(Pending(v, ContextSubject("t", "L9")));
}

TEST(PlausibilityTest, CellLineMismatchFailsC5) {
  auto v = Check(Directional("T", "R", -1, "L1"), Expl({{"e1", "e2"}}, "L2"));
  EXPECT_EQ(v.criterion(5).outcome, Outcome::kFail);
}

TEST(PlausibilityTest, ForeignModelFailsC6) {
  Explanation e = Expl({{"e1", "e2"}});
  e.model_id = "other";
  EXPECT_EQ(Check(Directional("T", "R", -1), e).criterion(6).outcome, Outcome::kFail);
}

TEST(PlausibilityTest, NarrativeClaimNeedsReview) {
  Observation o = Directional("T", "R", -1);
  o.kind = Observation::Kind::kNarrative;
  o.expected.clear();
  auto v = Check(o, Expl({{"e1", "e2"}}));
  EXPECT_EQ(v.criterion(1).outcome, Outcome::kNeedsHumanReview);
}

TEST(PlausibilityTest, ComparativeUsesWorstCellLine) {
  Observation o = Directional("T", "R", -1);
  o.kind = Observation::Kind::kComparative;
  o.expected.push_back({"L2", -1});
  Explanation e = Expl({{"e1", "e2"}});
  auto v = Check(o, e);
  EXPECT_EQ(v.criterion(5).outcome, Outcome::kFail);
  // A per-line path avoiding the knockout repairs it.
  e.cell_line_paths["L2"] = {{"e8"}};
  o.expected[1].sign = 1;
  EXPECT_EQ(Check(o, e).overall, Overall::kPlausible);
}

TEST(PlausibilityTest, UnknownEdgeIsAnError) {
  static const MechModel model = TestModel();
  auto v = CheckPlausibility(model, Directional("T", "R", -1), Expl({{"e1", "zz"}}), {}, {});
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.code(), ErrorCode::kUnknownEdge);
}

TEST(PlausibilityTest, RemovingInputsNeverSilentlyPasses) {
  // Dropping role and context information moves criteria to review or fail.
  auto full = Check(Directional("T", "R", -1), Expl({{"e1", "e2"}}));
  ASSERT_EQ(full.overall, Overall::kPlausible);
  auto no_context = Check(Directional("T", "R", -1, "L7"), Expl({{"e1", "e2"}}, "L7"));
  EXPECT_NE(no_context.criterion(5).outcome, Outcome::kPass);
  auto no_path = Check(Directional("T", "R", -1), Expl({}));
  EXPECT_NE(no_path.overall, Overall::kPlausible);
}

TEST(ConsistencyTest, OppositeEdgeSignsInOneSubmission) {
  std::map<std::string, MechModel> models;
  models.emplace("t", TestModel());
  Explanation a = Expl({{"e1", "e2"}});
  Explanation b = Expl({{"e1"}});
  b.id = "x2";
  b.edge_signs["e1"] = -1;
  auto v = CheckCellLineConsistency({a, b}, models);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].cell_line, "L1");
  b.submission_id = "other";
  EXPECT_TRUE(CheckCellLineConsistency({a, b}, models).empty());
}

TEST(ConsistencyTest, DifferentModelsInOneCellLine) {
  std::map<std::string, MechModel> models;
  Explanation a = Expl({{"e1"}});
  Explanation b = Expl({{"e1"}});
  b.id = "x2";
  b.model_id = "t2";
  EXPECT_EQ(CheckCellLineConsistency({a, b}, models).size(), 1u);
}

TEST(ObservationTest, SiteFromAntibody) {
  EXPECT_EQ(SiteFromAntibody("AKT_pS473_V"), "S473");
  EXPECT_EQ(SiteFromAntibody("GSK3a_b_pS21"), "S21");
  EXPECT_FALSE(SiteFromAntibody("MYC").has_value());
}

TEST(ObservationTest, NonpositiveFoldRejected) {
  auto rows = ParseObservationCsv(
      "obs_id,treatment,dose,is_single_drug,target,antibody,readout_entity,fold_change,cell_line\n"
      "1,AK,10,yes,AKT,AKT_pS473_V,AKT,0,L1\n");
  ASSERT_TRUE(rows.ok()) << JoinErrors(rows.errors());
  auto sel = SelectObservations(*rows);
  ASSERT_FALSE(sel.ok());
  EXPECT_EQ(sel.code(), ErrorCode::kNonpositiveFold);
}

TEST(ObservationTest, MissingColumnReported) {
  auto rows = ParseObservationCsv("obs_id,treatment\n1,AK\n");
  ASSERT_FALSE(rows.ok());
}

TEST(ObservationTest, SelectsPublishedRowsInOrder) {
  auto rows = LoadObservationCsv(testing::DataPath("table7/observations.csv"));
  ASSERT_TRUE(rows.ok()) << JoinErrors(rows.errors());
  ASSERT_GE(rows->size(), published::kSelected.size() + 10);
  auto sel = SelectObservations(*rows);
  ASSERT_TRUE(sel.ok());
  ASSERT_EQ(sel->size(), published::kSelected.size());
  for (size_t i = 0; i < sel->size(); ++i) {
    const Observation& o = (*sel)[i];
    EXPECT_EQ(o.id, published::kSelected[i].id);
    EXPECT_DOUBLE_EQ(*o.fold_change, published::kSelected[i].fold);
    bool up = std::any_of(published::kIncreased.begin(), published::kIncreased.end(),
                          [&](const char* id) { return o.id == id; });
    ASSERT_EQ(o.expected.size(), 1u);
    EXPECT_EQ(o.expected[0].sign, up ? 1 : -1) << o.id;
  }
}

TEST(ObservationTest, FindingsParseComparative) {
  auto obs = FindingsFromJson(json::parse(R"({"findings": [
    {"id": "f1", "drug": "vemurafenib", "target": "BRAF", "readout": "S6", "antibody": "S6_pS235",
     "perturbation_sign": -1, "narrative": "S6 drops in one line only",
     "comparative": [{"cell_line": "L1", "direction": "decrease"}, {"cell_line": "L2", "direction": "none"}]},
    {"id": "f2", "drug": "d", "target": "T", "readout": "R", "narrative": "text only"}]})"));
  ASSERT_TRUE(obs.ok()) << JoinErrors(obs.errors());
  ASSERT_EQ(obs->size(), 2u);
  EXPECT_EQ((*obs)[0].kind, Observation::Kind::kComparative);
  EXPECT_EQ((*obs)[0].expected.size(), 2u);
  EXPECT_EQ((*obs)[0].expected[1].sign, 0);
  EXPECT_EQ((*obs)[1].kind, Observation::Kind::kNarrative);
}

TEST(ExplanationTest, JsonRoundTrip) {
  auto list = LoadExplanations(testing::DataPath("figure4/explanations.json"));
  ASSERT_TRUE(list.ok()) << JoinErrors(list.errors());
  ASSERT_EQ(list->size(), 2u);
  json doc = {{"explanations", json::array()}};
  for (const auto& e : *list) doc["explanations"].push_back(ExplanationToJson(e));
  auto back = ExplanationsFromJson(doc);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, *list);
}

TEST(GridTest, CellsAndCoverage) {
  PlausibilityVerdict good;
  good.explanation_id = "a";
  good.overall = Overall::kPlausible;
  PlausibilityVerdict wrong;
  wrong.explanation_id = "b";
  wrong.overall = Overall::kNotPlausible;
  wrong.criteria[0].outcome = Outcome::kFail;
  PlausibilityVerdict weak;
  weak.explanation_id = "c";
  weak.overall = Overall::kNotPlausible;
  weak.criteria[3].outcome = Outcome::kFail;
  auto grid = SummarizeResultsGrid({"1", "2", "3"}, {{"s1", "1", good}, {"s1", "2", wrong}, {"s2", "2", weak}});
  ASSERT_TRUE(grid.ok());
  EXPECT_EQ(grid->cells["s1"]["1"], GridCell::kSupported);
  EXPECT_EQ(grid->cells["s1"]["2"], GridCell::kIncorrectPrediction);
  EXPECT_EQ(grid->cells["s2"]["2"], GridCell::kUnsupported);
  EXPECT_EQ(grid->cells["s2"]["3"], GridCell::kNotAttempted);
  EXPECT_EQ(grid->supported["s1"], 1);
  EXPECT_EQ(grid->covered, 1);
  PlausibilityVerdict open;
  open.overall = Overall::kPending;
  EXPECT_EQ(SummarizeResultsGrid({"1"}, {{"s1", "1", open}}).code(), ErrorCode::kPendingVerdicts);
}

TEST(RoleTableTest, LoadsRoles) {
  testing::ScratchDir dir;
  testing::WriteFile(dir / "roles.json", R"({"X": ["kinase"], "Y": ["phosphatase", "other"]})");
  auto roles = LoadRoleTable(dir / "roles.json");
  ASSERT_TRUE(roles.ok()) << JoinErrors(roles.errors());
  EXPECT_EQ(roles->at("Y").size(), 2u);
  testing::WriteFile(dir / "bad.json", R"({"X": ["wizard"]})");
  EXPECT_FALSE(LoadRoleTable(dir / "bad.json").ok());
}

}  // namespace
}  // namespace mecheval
