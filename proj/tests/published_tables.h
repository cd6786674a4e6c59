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


// Published values the fixtures are checked against. Kept apart from the
// fixture generator so a generator bug cannot also move the expectation.

#ifndef MECHEVAL_TESTS_PUBLISHED_TABLES_H_
#define MECHEVAL_TESTS_PUBLISHED_TABLES_H_

#include <array>

namespace mecheval::published {

// Match grade per sentence and system A-D: 2 full, 1 partial, 0 none.
struct MatchGridRow {
  int sentence;
  std::array<int, 4> grade;
};

inline constexpr std::array<MatchGridRow, 28> kMatchGrid = {{
    {78, {2, 2, 2, 0}},  {147, {2, 2, 1, 0}}, {71, {2, 2, 0, 0}},  {95, {2, 2, 0, 0}},
    {4, {2, 1, 1, 0}},   {24, {2, 0, 2, 0}},  {12, {2, 0, 0, 0}},  {54, {2, 0, 0, 0}},
    {64, {2, 0, 0, 0}},  {93, {2, 0, 0, 0}},  {180, {2, 0, 0, 0}}, {182, {2, 0, 0, 0}},
    {213, {2, 0, 0, 0}}, {91, {1, 1, 1, 2}},  {14, {1, 1, 0, 0}},  {34, {1, 1, 0, 0}},
    {52, {1, 1, 0, 0}},  {181, {1, 0, 0, 2}}, {188, {1, 0, 0, 1}}, {87, {1, 0, 0, 0}},
    {168, {0, 2, 2, 0}}, {9, {0, 2, 1, 0}},   {163, {0, 2, 0, 0}}, {165, {0, 2, 0, 0}},
    {55, {0, 1, 0, 1}},  {83, {0, 0, 1, 0}},  {143, {0, 0, 1, 0}}, {13, {0, 0, 0, 2}},
}};

// Per-system totals over 40 gold cards: full, partial, fraction matched.
struct SystemTotals {
  int full;
  int partial;
  double fraction;
};
inline constexpr int kGoldCards = 40;
inline constexpr std::array<SystemTotals, 4> kSystemTotals = {{
    {13, 7, 0.50}, {8, 6, 0.35}, {3, 6, 0.23}, {3, 2, 0.13}}};

// Ensemble rows: pool size, A correct, B correct, type correct, combination.
struct EnsembleRow {
  int sentence;
  int pool;
  int a;
  int b;
  int type;
  bool combo;
};
inline constexpr std::array<EnsembleRow, 3> kEnsemble = {{
    {91, 5, 1, 4, 4, true}, {188, 3, 0, 2, 3, false}, {12, 2, 1, 1, 2, true}}};

// Reference overlap and precision per submission.
struct OverlapRow {
  int direct_matches;
  int direct_percent;
  int indirect_matches;
  int indirect_percent;
  double precision;  // two decimals
};
inline constexpr int kDirectReferences = 29;
inline constexpr int kIndirectReferences = 21;
inline constexpr std::array<OverlapRow, 4> kOverlap = {{
    {19, 66, 4, 19, 0.74}, {22, 76, 0, 0, 0.63}, {16, 55, 0, 0, 0.46}, {18, 62, 0, 0, 0.45}}};

// Selected perturbation results: observation number, fold change.
struct SelectedObservation {
  const char* id;
  double fold;
};
inline constexpr std::array<SelectedObservation, 20> kSelected = {{
    {"1", 0.468},  {"2", 0.140},  {"3", 0.241},  {"4", 0.440},  {"5", 0.274},
    {"6", 0.418},  {"7", 1.586},  {"8", 0.301},  {"9", 0.468},  {"12", 0.442},
    {"13", 1.749}, {"14", 3.187}, {"15", 2.187}, {"16", 0.331}, {"17", 0.058},
    {"18", 0.050}, {"19", 0.204}, {"20", 0.495}, {"21", 0.273}, {"22", 0.442}}};

// Marked as increases; every other selected row decreased.
inline constexpr std::array<const char*, 4> kIncreased = {"7", "13", "14", "15"};

// Days of effort assumed when estimating throughput.
inline constexpr int kMachineDays = 7;
inline constexpr int kHumanMachineDays = 3;

}  // namespace mecheval::published

#endif  // MECHEVAL_TESTS_PUBLISHED_TABLES_H_
