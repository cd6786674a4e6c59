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

// mecheval: command line front for validation, scoring, plausibility
// checking, the review service and exports.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mecheval/card.h"
#include "mecheval/harness/evaluation.h"
#include "mecheval/harness/http_service.h"
#include "mecheval/harness/report.h"
#include "mecheval/harness/review_service.h"
#include "mecheval/harness/run_config.h"
#include "mecheval/model_graph.h"
#include "mecheval/refset.h"

namespace {

using mecheval::ErrorList;
using mecheval::Phase;
using mecheval::ReportFormat;
using mecheval::RunConfig;
namespace fs = std::filesystem;

struct Common {
  std::vector<std::string> submissions;
  std::string refset;
  std::vector<std::string> models;
  std::string observations;
  std::string findings;
  std::string explanations;
  std::string roles;
  std::string reviews;
  std::string judgments;
  std::string equiv_table;
  std::string days;
  std::string out;
  std::string format = "json";
  std::string run_id = "cli";
  std::string data_root;
  int64_t total_submitted = -1;
  size_t top_k = 10;
  bool persist = false;
};

int PrintErrors(const ErrorList& errors) {
  for (const auto& e : errors) std::cerr << "error: " << e.ToString() << "\n";
  return 1;
}

int Emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(c.out, std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << c.out << "\n";
    return 1;
  }
  return 0;
}

fs::path Root(const Common& c) { return c.data_root.empty() ? mecheval::DataRoot() : fs::path(c.data_root); }

std::optional<fs::path> OptPath(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

mecheval::Result<RunConfig> BuildConfig(const Common& c, Phase phase) {
  RunConfig config;
  config.run_id = c.run_id;
  config.phase = phase;
  for (const auto& s : c.submissions) config.submissions.emplace_back(s);
  for (const auto& m : c.models) config.models.emplace_back(m);
  config.refset = OptPath(c.refset);
  config.observations = OptPath(c.observations);
  config.findings = OptPath(c.findings);
  config.explanations = OptPath(c.explanations);
  config.roles = OptPath(c.roles);
  config.reviews = OptPath(c.reviews);
  config.judgments = OptPath(c.judgments);
  config.equiv_table = OptPath(c.equiv_table);
  config.top_k = c.top_k;
  if (c.total_submitted >= 0) config.total_submitted = c.total_submitted;
  if (!c.days.empty()) {
    auto d = mecheval::ParseDays(c.days);
    if (!d.ok()) return d.errors();
    config.days = *d;
  }
  return config;
}

int Score(const Common& c, Phase phase) {
  auto format = mecheval::ParseReportFormat(c.format);
  auto config = BuildConfig(c, phase);
  if (!config.ok()) return PrintErrors(config.errors());
  std::optional<fs::path> dir;
  if (c.persist) dir = Root(c) / "runs" / c.run_id;
  auto run = mecheval::IngestRun(*config, dir);
  if (!run.ok()) return PrintErrors(run.errors());
  for (const auto& w : (*run)->warnings) std::cerr << "warning: " << w << "\n";
  return Emit(c, mecheval::RenderReport(**run, *format));
}

int Validate(const Common& c, const std::vector<std::string>& card_files) {
  ErrorList errors;
  std::vector<std::string> warnings;
  int64_t cards = 0;
  auto take = [&](const std::string& what, const ErrorList& list) {
    for (const auto& e : list) {
      auto copy = e;
      if (copy.path.empty()) copy.path = what;
      errors.push_back(copy);
    }
  };
  for (const auto& dir : c.submissions) {
    auto sub = mecheval::LoadSubmission(dir, &warnings);
    if (!sub.ok()) {
      take(dir, sub.errors());
    } else {
      cards += static_cast<int64_t>(sub->cards.size());
    }
  }
  for (const auto& file : card_files) {
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    if (!in) {
      errors.push_back(mecheval::MakeError(mecheval::ErrorCode::kMissingInput, file));
      continue;
    }
    auto card = mecheval::ParseCard(buf.str(), &warnings);
    if (!card.ok()) {
      for (auto e : card.errors()) {
        e.path = file + ": " + e.path;
        errors.push_back(e);
      }
    } else {
      ++cards;
    }
  }
  if (!c.refset.empty()) {
    auto refs = mecheval::LoadReferenceSet(c.refset);
    if (!refs.ok()) take(c.refset, refs.errors());
  }
  for (const auto& m : c.models) {
    auto model = mecheval::MechModel::Load(m, &warnings);
    if (!model.ok()) take(m, model.errors());
  }
  nlohmann::json report{{"cards", cards}, {"valid", errors.empty()}, {"warnings", warnings}};
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : errors) {
    list.push_back({{"code", mecheval::ErrorCodeName(e.code)}, {"path", e.path}, {"detail", e.detail}});
    std::cerr << "error: " << e.ToString() << "\n";
  }
  report["errors"] = std::move(list);
  int rc = Emit(c, report.dump(2) + "\n");
  return errors.empty() ? rc : 1;
}

int Export(const Common& c, const std::string& what) {
  auto format = mecheval::ParseReportFormat(c.format);
  if (what == "refset") {
    if (c.refset.empty()) return PrintErrors({mecheval::MakeError(mecheval::ErrorCode::kMissingInput, "refset")});
    auto refs = mecheval::LoadReferenceSet(c.refset);
    if (!refs.ok()) return PrintErrors(refs.errors());
    return Emit(c, *format == ReportFormat::kCsv ? mecheval::ReferenceSetToTsv(*refs)
                                                 : mecheval::ReferenceSetToJson(*refs).dump(2) + "\n");
  }
  fs::path dir = Root(c) / "runs" / c.run_id;
  if (!fs::exists(dir / "config.json")) {
    return PrintErrors({mecheval::MakeError(mecheval::ErrorCode::kUnknownRun, c.run_id, dir.string())});
  }
  auto run = mecheval::OpenRun(dir);
  if (!run.ok()) return PrintErrors(run.errors());
  if (what == "report") return Emit(c, mecheval::RenderReport(**run, *format));
  if (what == "matches") return Emit(c, mecheval::MatchesCsv(**run));
  if (what == "verdicts") return Emit(c, mecheval::VerdictsCsv(**run));
  // items
  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : (*run)->items) items.push_back(item.ToJson());
  return Emit(c, items.dump(2) + "\n");
}

mecheval::HttpService* g_server = nullptr;

void OnSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}

int Serve(const Common& c, const std::string& tokens_file, const std::string& host, int port,
          int claim_timeout_s, const std::string& config_file) {
  auto tokens = mecheval::LoadTokenMap(tokens_file);
  if (!tokens.ok()) return PrintErrors(tokens.errors());
  mecheval::ReviewServiceOptions options;
  options.root = Root(c);
  options.claim_timeout = std::chrono::seconds(claim_timeout_s);
  auto service = mecheval::ReviewService::Open(options);
  if (!service.ok()) return PrintErrors(service.errors());
  if (!config_file.empty()) {
    auto config = RunConfig::Load(config_file);
    if (!config.ok()) return PrintErrors(config.errors());
    auto id = (*service)->CreateRun(*config);
    if (!id.ok() && id.code() != mecheval::ErrorCode::kDuplicateRun) return PrintErrors(id.errors());
  }
  mecheval::HttpService http(**service, *tokens);
  int bound = port == 0 ? http.BindToAnyPort(host) : (http.Bind(host, port) ? port : -1);
  if (bound < 0) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cout << "listening on " << host << ":" << bound << std::endl;
  g_server = &http;
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  bool ok = http.ListenAfterBind();
  g_server = nullptr;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mecheval: curation scoring and explanation checking"};
  app.require_subcommand(1);
  Common c;

  auto add_common_out = [&c](CLI::App* sub) {
    sub->add_option("--out", c.out, "Write output to FILE instead of stdout");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_scoring = [&c](CLI::App* sub) {
    sub->add_option("--submission", c.submissions, "Submission directory (repeatable)")->check(CLI::ExistingDirectory);
    sub->add_option("--refset", c.refset, "Reference set file");
    sub->add_option("--judgments", c.judgments, "Prior judgments keyed by team id");
    sub->add_option("--equiv-table", c.equiv_table, "Interaction equivalence table");
    sub->add_option("--days", c.days, "Effort in days (N, N/M or N.M); default by condition");
    sub->add_option("--total-submitted", c.total_submitted, "Cards submitted, if not all are in the directory");
    sub->add_option("--top-k", c.top_k, "Ranked cards per paper considered in phase II");
    sub->add_option("--run-id", c.run_id, "Run id");
    sub->add_flag("--persist", c.persist, "Keep the run under the data root for review");
    sub->add_option("--data-root", c.data_root, "Data root (default $MECHEVAL_DATA_ROOT)");
  };

  auto* validate = app.add_subcommand("validate", "Validate cards, reference sets and models");
  std::vector<std::string> card_files;
  validate->add_option("--submission", c.submissions, "Submission directory (repeatable)");
  validate->add_option("--card", card_files, "Single card file (repeatable)");
  validate->add_option("--refset", c.refset, "Reference set file");
  validate->add_option("--model", c.models, "Model file (repeatable)");
  validate->add_option("--out", c.out, "Write output to FILE instead of stdout");

  auto* p1 = app.add_subcommand("score-phase1", "Score cards against the rubric");
  add_scoring(p1);
  add_common_out(p1);

  auto* p2 = app.add_subcommand("score-phase2", "Score ranked findings against a reference set");
  add_scoring(p2);
  add_common_out(p2);

  auto* p3 = app.add_subcommand("check-phase3", "Check explanation plausibility");
  p3->add_option("--model", c.models, "Model file (repeatable)")->required();
  p3->add_option("--observations", c.observations, "Perturbation CSV");
  p3->add_option("--findings", c.findings, "Comparative and narrative findings");
  p3->add_option("--explanations", c.explanations, "Explanation file")->required();
  p3->add_option("--roles", c.roles, "Entity role table");
  p3->add_option("--reviews", c.reviews, "Evidence review answers");
  p3->add_option("--judgments", c.judgments, "Prior judgments keyed by ledger");
  p3->add_option("--run-id", c.run_id, "Run id");
  p3->add_flag("--persist", c.persist, "Keep the run under the data root for review");
  p3->add_option("--data-root", c.data_root, "Data root (default $MECHEVAL_DATA_ROOT)");
  add_common_out(p3);

  auto* serve = app.add_subcommand("serve", "Run the review service");
  std::string tokens_file;
  std::string host = "127.0.0.1";
  int port = 8080;
  int claim_timeout = 1800;
  std::string config_file;
  serve->add_option("--tokens", tokens_file, "Reviewer token map")->required()->check(CLI::ExistingFile);
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--claim-timeout", claim_timeout, "Idle seconds before a claim lapses")->check(CLI::PositiveNumber);
  serve->add_option("--config", config_file, "Run config to ingest at startup")->check(CLI::ExistingFile);
  serve->add_option("--data-root", c.data_root, "Data root (default $MECHEVAL_DATA_ROOT)");

  auto* exp = app.add_subcommand("export", "Export reports and tables");
  std::string what = "report";
  exp->add_option("what", what, "report | matches | verdicts | items | refset")
      ->check(CLI::IsMember({"report", "matches", "verdicts", "items", "refset"}));
  exp->add_option("--run-id", c.run_id, "Persisted run id");
  exp->add_option("--refset", c.refset, "Reference set file (for refset)");
  exp->add_option("--data-root", c.data_root, "Data root (default $MECHEVAL_DATA_ROOT)");
  add_common_out(exp);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return Validate(c, card_files);
  if (p1->parsed()) return Score(c, Phase::kI);
  if (p2->parsed()) return Score(c, Phase::kII);
  if (p3->parsed()) return Score(c, Phase::kIII);
  if (serve->parsed()) return Serve(c, tokens_file, host, port, claim_timeout, config_file);
  if (exp->parsed()) return Export(c, what);
  return 2;
}
