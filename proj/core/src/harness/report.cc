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

#include "mecheval/harness/report.h"

#include <algorithm>

#include "mecheval/csv.h"
#include "mecheval/metrics.h"

namespace mecheval {

using nlohmann::json;

std::optional<ReportFormat> ParseReportFormat(std::string_view token) {
  if (token == "json") return ReportFormat::kJson;
  if (token == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

namespace {

json RatioOrError(const Result<Ratio>& r) {
  if (r.ok()) return r->ToJson();
  return json{{"error", ErrorCodeName(r.code())}};
}

std::string RatioCell(const json& j) {
  if (!j.is_object() || !j.contains("num")) return "";
  return std::to_string(j["num"].get<int64_t>()) + "/" + std::to_string(j["den"].get<int64_t>());
}

constexpr OverlapGroup kGroups[] = {OverlapGroup::kDirectPhosphoBind, OverlapGroup::kOtherDirect,
                                    OverlapGroup::kIndirectComplex};

json SubmissionReport(const EvaluationRun& run, const SubmissionRun& s) {
  const std::map<std::string, Judgment> snapshot = run.Snapshot(s.submission.team_id);
  VerdictCounts counts = CountVerdicts(snapshot);
  int64_t pending = 0;
  for (const IndexCard& c : s.scored) pending += snapshot.count(c.card_id) == 0;
  int64_t total = run.config.total_submitted.value_or(static_cast<int64_t>(s.submission.cards.size()));

  json out{{"team_id", s.submission.team_id},
           {"condition", SubmissionConditionToken(s.submission.condition)},
           {"cards_submitted", s.submission.cards.size()},
           {"unique_cards", s.unique.size()},
           {"duplicates", s.duplicates.size()},
           {"scored_cards", s.scored.size()},
           {"verdicts",
            {{"largely_correct", counts.correct},
             {"incorrect", counts.incorrect},
             {"skipped", counts.skipped},
             {"pending", pending}}},
           {"precision", RatioOrError(Precision(counts))},
           {"correct_fraction", RatioOrError(CorrectFraction(counts))},
           {"total_submitted", total}};

  std::optional<Ratio> days = run.config.days;
  if (!days) {
    if (auto d = DefaultDays(s.submission.condition)) days = Ratio::Make(*d, 1);
  }
  if (days) {
    out["days"] = days->ToJson();
    out["cards_per_day"] = RatioOrError(CardsPerDay(counts, total, *days));
  } else {
    out["days"] = nullptr;
    out["cards_per_day"] = json{{"error", "no_days_convention"}};
  }

  if (!run.refs.empty()) {
    OverlapReport overlap = ReferenceOverlap(run.refs, s.matches, snapshot);
    json groups = json::object();
    for (OverlapGroup g : kGroups) {
      const OverlapCell& cell = overlap.by_group.at(g);
      json c{{"matches", cell.matches}, {"reference_total", cell.reference_total}};
      c["percent"] = cell.percent ? json(*cell.percent) : json(nullptr);
      groups[std::string(OverlapGroupToken(g))] = std::move(c);
    }
    out["overlap"] = {{"by_group", std::move(groups)}, {"matched_reference_ids", overlap.matched_reference_ids}};
    json rates = json::object();
    for (const auto& [type, rate] : ConditionalErrorRates(s.matches, &snapshot)) {
      json r{{"errors", rate.errors}, {"scored", rate.scored}};
      r["rate"] = rate.rate ? rate.rate->ToJson() : json(nullptr);
      rates[std::string(ErrorTypeToken(type))] = std::move(r);
    }
    out["error_rates"] = std::move(rates);
    json matches = json::array();
    for (const MatchRecord& m : s.matches) matches.push_back(m.ToJson());
    out["matches"] = std::move(matches);
  }
  return out;
}

json EnsembleReport(const EvaluationRun& run) {
  json rows = json::array();
  for (const ReferenceInteraction& ref : run.refs) {
    std::vector<IndexCard> pool;
    for (const SubmissionRun& s : run.submissions) {
      for (const IndexCard& c : s.scored) {
        if (c.paper_id == ref.paper_id) pool.push_back(c);
      }
    }
    EnsembleResult e = EnsembleCombination(ref.id, ref.interaction, pool, run.table);
    rows.push_back(json{{"reference_id", e.gold_id},
                        {"pool_size", e.pool_size},
                        {"a_correct", e.a_correct},
                        {"b_correct", e.b_correct},
                        {"type_correct", e.type_correct},
                        {"combo", e.combo}});
  }
  return rows;
}

json PhaseThreeReport(const EvaluationRun& run) {
  json out;
  json models = json::array();
  for (const auto& [id, model] : run.models) {
    json m{{"model_id", id}, {"entities", model.entities().size()}, {"interactions", model.interactions().size()}};
    auto mix = ProvenanceComposition(model);
    if (mix.ok()) {
      json classes = json::object();
      for (const auto& [mask, n] : mix->counts) {
        classes[ProvenanceClassName(mask)] = {{"edges", n}, {"fraction", mix->Fraction(mask).ToJson()}};
      }
      m["provenance"] = std::move(classes);
    } else {
      m["provenance"] = json{{"error", ErrorCodeName(mix.code())}};
    }
    models.push_back(std::move(m));
  }
  out["models"] = std::move(models);

  json observations = json::array();
  for (const Observation& o : run.observations) observations.push_back(o.id);
  out["observations"] = std::move(observations);

  json consistency = json::array();
  for (const ConsistencyViolation& v : CheckCellLineConsistency(run.explanations, run.models)) {
    consistency.push_back(
        json{{"cell_line", v.cell_line}, {"first", v.first}, {"second", v.second}, {"detail", v.detail}});
  }
  out["consistency_violations"] = std::move(consistency);

  auto verdicts = CheckExplanations(run);
  if (!verdicts.ok()) {
    out["verdicts"] = json{{"error", JoinErrors(verdicts.errors(), "; ")}};
    return out;
  }
  json vs = json::array();
  std::vector<SubmissionVerdict> grid_input;
  json pending = json::array();
  for (const ExplanationVerdict& ev : *verdicts) {
    json v = ev.verdict.ToJson();
    v["submission"] = ev.submission_id;
    vs.push_back(std::move(v));
    if (ev.verdict.overall == Overall::kPending) pending.push_back(ev.verdict.explanation_id);
    grid_input.push_back({ev.submission_id, ev.verdict.observation_id, ev.verdict});
  }
  out["verdicts"] = std::move(vs);
  std::vector<std::string> ids;
  for (const Observation& o : run.observations) ids.push_back(o.id);
  auto grid = SummarizeResultsGrid(ids, grid_input);
  if (grid.ok()) {
    out["grid"] = grid->ToJson();
  } else {
    out["grid"] = json{{"error", ErrorCodeName(grid.code())}, {"pending", std::move(pending)}};
  }
  return out;
}

}  // namespace

json BuildReport(const EvaluationRun& run) {
  int64_t open = std::count_if(run.items.begin(), run.items.end(),
                               [](const ReviewItem& i) { return i.state != ItemState::kResolved; });
  json out{{"run_id", run.config.run_id},
           {"phase", PhaseToken(run.config.phase)},
           {"status", RunStatusToken(run.status())},
           {"equivalence_table_version", run.table.version()},
           {"review_items", {{"total", run.items.size()}, {"open", open}}}};
  if (run.config.phase == Phase::kIII) {
    out.update(PhaseThreeReport(run));
    return out;
  }
  json subs = json::array();
  for (const SubmissionRun& s : run.submissions) subs.push_back(SubmissionReport(run, s));
  out["submissions"] = std::move(subs);
  if (!run.refs.empty()) {
    out["reference_total"] = run.refs.size();
    if (run.submissions.size() > 1) out["ensemble"] = EnsembleReport(run);
  }
  return out;
}

std::string RenderReport(const EvaluationRun& run, ReportFormat format) {
  json report = BuildReport(run);
  if (format == ReportFormat::kJson) return report.dump(2) + "\n";

  if (run.config.phase == Phase::kIII) {
    const json& grid = report["grid"];
    if (!grid.contains("error") && report["verdicts"].is_array()) {
      std::vector<SubmissionVerdict> input;
      auto verdicts = CheckExplanations(run);
      for (const ExplanationVerdict& ev : *verdicts) {
        input.push_back({ev.submission_id, ev.verdict.observation_id, ev.verdict});
      }
      std::vector<std::string> ids;
      for (const Observation& o : run.observations) ids.push_back(o.id);
      return SummarizeResultsGrid(ids, input)->ToCsv();
    }
    return VerdictsCsv(run);
  }

  std::vector<std::string> header{"team_id",   "condition", "cards_submitted", "unique_cards", "duplicates",
                                  "scored",    "correct",   "incorrect",       "skipped",      "pending",
                                  "precision", "correct_fraction", "days",     "cards_per_day"};
  if (!run.refs.empty()) {
    for (OverlapGroup g : kGroups) header.push_back("overlap_" + std::string(OverlapGroupToken(g)));
  }
  std::string out = CsvRow(header);
  for (const json& s : report["submissions"]) {
    const json& v = s["verdicts"];
    std::vector<std::string> row{s["team_id"].get<std::string>(),
                                 s["condition"].get<std::string>(),
                                 std::to_string(s["cards_submitted"].get<int64_t>()),
                                 std::to_string(s["unique_cards"].get<int64_t>()),
                                 std::to_string(s["duplicates"].get<int64_t>()),
                                 std::to_string(s["scored_cards"].get<int64_t>()),
                                 std::to_string(v["largely_correct"].get<int64_t>()),
                                 std::to_string(v["incorrect"].get<int64_t>()),
                                 std::to_string(v["skipped"].get<int64_t>()),
                                 std::to_string(v["pending"].get<int64_t>()),
                                 RatioCell(s["precision"]),
                                 RatioCell(s["correct_fraction"]),
                                 RatioCell(s["days"]),
                                 RatioCell(s["cards_per_day"])};
    if (s.contains("overlap")) {
      for (OverlapGroup g : kGroups) {
        const json& cell = s["overlap"]["by_group"][std::string(OverlapGroupToken(g))];
        std::string text = std::to_string(cell["matches"].get<int64_t>()) + "/" +
                           std::to_string(cell["reference_total"].get<int64_t>());
        if (!cell["percent"].is_null()) text += " (" + std::to_string(cell["percent"].get<int64_t>()) + "%)";
        row.push_back(text);
      }
    }
    out += CsvRow(row);
  }
  return out;
}

std::string MatchesCsv(const EvaluationRun& run) {
  std::string out = CsvRow({"team_id", "reference_id", "card_id", "match_class", "field_flags", "auto_flagged",
                            "swapped", "rank"});
  for (const SubmissionRun& s : run.submissions) {
    for (const MatchRecord& m : s.matches) {
      std::string flags;
      for (FieldFlag f : kAllFieldFlags) {
        if (!m.field_flags.has(f)) continue;
        if (!flags.empty()) flags += ';';
        flags += FieldFlagToken(f);
      }
      out += CsvRow({s.submission.team_id, m.gold_id, m.candidate_card_id, std::string(MatchClassToken(m.match_class)),
                     flags, m.auto_flagged ? "yes" : "no", m.swapped ? "yes" : "no",
                     m.rank ? std::to_string(*m.rank) : ""});
    }
  }
  return out;
}

std::string VerdictsCsv(const EvaluationRun& run) {
  std::vector<std::string> header{"explanation_id", "submission", "observation_id", "overall"};
  for (int i = 1; i <= kCriteria; ++i) header.push_back("C" + std::to_string(i));
  std::string out = CsvRow(header);
  auto verdicts = CheckExplanations(run);
  if (!verdicts.ok()) return out;
  for (const ExplanationVerdict& ev : *verdicts) {
    std::vector<std::string> row{ev.verdict.explanation_id, ev.submission_id, ev.verdict.observation_id,
                                 std::string(OverallToken(ev.verdict.overall))};
    for (const CriterionResult& c : ev.verdict.criteria) row.emplace_back(OutcomeToken(c.outcome));
    out += CsvRow(row);
  }
  return out;
}

}  // namespace mecheval
