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

#include <string>
#include <vector>

#include "mecheval/refset.h"
#include "test_util.h"

namespace mecheval {
namespace {

using testing::Binds;
using testing::Ent;
using testing::Make;
using testing::Phos;

CuratorSet Curator(const std::string& id, std::vector<Interaction> found, const std::string& paper = "P") {
  CuratorSet s;
  s.curator_id = id;
  for (Interaction& in : found) s.interactions.push_back(CuratorInteraction{paper, std::move(in)});
  return s;
}

TEST(RefsetTest, CategoriesFollowStructure) {
  EXPECT_EQ(DeriveCategory(Binds("A", "B")), RefCategory::kDirectPhosphoBind);
  EXPECT_EQ(DeriveCategory(Phos("A", "B")), RefCategory::kDirectPhosphoBind);
  Interaction acetyl = Phos("A", "B");
  acetyl.modification->type = "acetylation";
  EXPECT_EQ(DeriveCategory(acetyl), RefCategory::kOtherDirect);
  EXPECT_EQ(DeriveCategory(Make(Ent("A"), InteractionKind::kIncreasesAmount, Ent("B"))),
            RefCategory::kOtherDirect);
  EXPECT_EQ(DeriveCategory(Make(Ent("A"), InteractionKind::kIncreasesActivity, Embed(Phos("B", "C")))),
            RefCategory::kIndirect);
  EXPECT_EQ(DeriveCategory(Make(Embed(Binds("A", "B")), InteractionKind::kAddsModification, Ent("C"))),
            RefCategory::kComplexComposite);
}

TEST(RefsetTest, ConsensusKeepsAgreedInteractions) {
  auto refs = MergeConsensus({Curator("c1", {Binds("A", "B"), Phos("C", "D")}),
                              Curator("c2", {Binds("b", "a"), Phos("E", "F")}),
                              Curator("c3", {Phos("C", "D")})},
                             2);
  ASSERT_TRUE(refs.ok()) << JoinErrors(refs.errors());
  ASSERT_EQ(refs->size(), 2u);
  for (const auto& r : *refs) EXPECT_EQ(r.found_by.size(), 2u);
  auto all = MergeConsensus({Curator("c1", {Binds("A", "B")}), Curator("c2", {Phos("E", "F")})}, 1);
  EXPECT_EQ(all->size(), 2u);
}

TEST(RefsetTest, ConsensusNeedsTwoCurators) {
  auto refs = MergeConsensus({Curator("c1", {Binds("A", "B")})}, 1);
  ASSERT_FALSE(refs.ok());
  EXPECT_EQ(refs.code(), ErrorCode::kTooFewCurators);
  EXPECT_EQ(MergeConsensus({Curator("a", {}), Curator("b", {})}, 0).code(), ErrorCode::kInvalidArgument);
}

TEST(RefsetTest, ConsensusIsPerPaper) {
  auto refs = MergeConsensus({Curator("c1", {Binds("A", "B")}, "P1"),
                              Curator("c2", {Binds("A", "B")}, "P2")},
                             2);
  ASSERT_TRUE(refs.ok());
  EXPECT_TRUE(refs->empty());
}

TEST(RefsetTest, ExpandEmbeddedAddsComponentsOnce) {
  ReferenceInteraction ref;
  ref.id = "P/ref1";
  ref.paper_id = "P";
  ref.interaction = Make(Embed(Binds("A", "B")), InteractionKind::kAddsModification, Ent("C"));
  ref.category = DeriveCategory(ref.interaction);
  auto parts = ExpandEmbedded(ref);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].components.size(), 2u);
  EXPECT_EQ(parts[1].category, RefCategory::kDirectPhosphoBind);

  ReferenceInteraction existing;
  existing.id = "P/ref0";
  existing.paper_id = "P";
  existing.interaction = Binds("B", "A");
  auto reuse = ExpandEmbedded(ref, {existing});
  ASSERT_EQ(reuse.size(), 2u);
  EXPECT_EQ(reuse[0].components[0], "P/ref0");

  ReferenceInteraction direct;
  direct.id = "d";
  direct.interaction = Binds("A", "B");
  EXPECT_EQ(ExpandEmbedded(direct).size(), 1u);
}

TEST(RefsetTest, LoadsFixtureCounts) {
  auto refs = LoadReferenceSet(testing::DataPath("table5/refset.json"));
  ASSERT_TRUE(refs.ok()) << JoinErrors(refs.errors());
  int direct = 0, embedded = 0;
  for (const auto& r : *refs) {
    (r.category == RefCategory::kDirectPhosphoBind ? direct : embedded)++;
    EXPECT_EQ(r.category, DeriveCategory(r.interaction)) << r.id;
  }
  EXPECT_EQ(direct, 29);
  EXPECT_EQ(embedded, 21);
}

TEST(RefsetTest, JsonRoundTrip) {
  auto refs = LoadReferenceSet(testing::DataPath("table5/refset.json"));
  ASSERT_TRUE(refs.ok());
  testing::ScratchDir dir;
  testing::WriteFile(dir / "r.json", ReferenceSetToJson(*refs).dump());
  auto back = LoadReferenceSet(dir / "r.json");
  ASSERT_TRUE(back.ok()) << JoinErrors(back.errors());
  EXPECT_EQ(*back, *refs);
  EXPECT_NE(ReferenceSetToTsv(*refs).find("PMC1847818-d1"), std::string::npos);
}

TEST(RefsetTest, DuplicateIdsRejected) {
  testing::ScratchDir dir;
  testing::WriteFile(dir / "r.json", R"({"references": [
    {"id": "x", "paper_id": "P", "interaction": {"participant_a": {"entity_type": "protein", "entity_text": "A"},
     "interaction_type": "binds", "participant_b": {"entity_type": "protein", "entity_text": "B"}}},
    {"id": "x", "paper_id": "P", "interaction": {"participant_a": {"entity_type": "protein", "entity_text": "C"},
     "interaction_type": "binds", "participant_b": {"entity_type": "protein", "entity_text": "D"}}}]})");
  auto refs = LoadReferenceSet(dir / "r.json");
  ASSERT_FALSE(refs.ok());
  EXPECT_EQ(refs.code(), ErrorCode::kDuplicateId) << JoinErrors(refs.errors());
}

}  // namespace
}  // namespace mecheval
