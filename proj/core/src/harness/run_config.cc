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

#include "mecheval/harness/run_config.h"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "mecheval/text.h"

namespace mecheval {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view PhaseToken(Phase phase) {
  switch (phase) {
    case Phase::kI: return "I";
    case Phase::kII: return "II";
    case Phase::kIII: return "III";
  }
  return "";
}

std::optional<Phase> ParsePhase(std::string_view token) {
  std::string t = AsciiLower(Trim(token));
  if (t == "i" || t == "1" || t == "phase1") return Phase::kI;
  if (t == "ii" || t == "2" || t == "phase2") return Phase::kII;
  if (t == "iii" || t == "3" || t == "phase3") return Phase::kIII;
  return std::nullopt;
}

Dialect DialectFor(Phase phase) { return phase == Phase::kI ? Dialect::kPhaseI : Dialect::kPhaseII; }

namespace {

std::optional<int64_t> ParseInt(std::string_view text) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

}  // namespace

Result<Ratio> ParseDays(std::string_view text) {
  text = Trim(text);
  auto bad = [&] { return MakeError(ErrorCode::kInvalidArgument, "days", std::string(text)); };
  int64_t num = 0;
  int64_t den = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = ParseInt(text.substr(0, slash));
    auto d = ParseInt(text.substr(slash + 1));
    if (!n || !d) return bad();
    num = *n;
    den = *d;
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    auto n = ParseInt(digits);
    size_t frac = text.size() - dot - 1;
    if (!n || frac > 9) return bad();
    num = *n;
    for (size_t i = 0; i < frac; ++i) den *= 10;
  } else {
    auto n = ParseInt(text);
    if (!n) return bad();
    num = *n;
  }
  if (den <= 0 || num <= 0) return MakeError(ErrorCode::kNonpositiveDays, "days", std::string(text));
  return Ratio::Make(num, den);
}

json RunConfig::ToJson() const {
  auto paths = [](const std::vector<fs::path>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(p.string());
    return out;
  };
  json out{{"run_id", run_id},
           {"phase", PhaseToken(phase)},
           {"submissions", paths(submissions)},
           {"models", paths(models)},
           {"fold_hi", fold_hi},
           {"fold_lo", fold_lo},
           {"top_k", top_k}};
  auto opt = [&out](const char* key, const std::optional<fs::path>& p) {
    if (p) out[key] = p->string();
  };
  opt("refset", refset);
  opt("observations", observations);
  opt("findings", findings);
  opt("explanations", explanations);
  opt("roles", roles);
  opt("reviews", reviews);
  opt("judgments", judgments);
  opt("equiv_table", equiv_table);
  if (days) out["days"] = days->ToString();
  if (total_submitted) out["total_submitted"] = *total_submitted;
  return out;
}

Result<RunConfig> RunConfig::FromJson(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) return MakeError(ErrorCode::kMalformedDocument, "run", "expected object");
  ErrorList errors;
  RunConfig c;
  auto resolve = [&base_dir](const std::string& p) {
    fs::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  auto str = [&](const char* key) -> std::optional<std::string> {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, key, "expected string"));
      return std::nullopt;
    }
    return it->get<std::string>();
  };
  auto path_list = [&](const char* key, std::vector<fs::path>& into) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    const json list = it->is_string() ? json::array({*it}) : *it;
    if (!list.is_array()) {
      errors.push_back(MakeError(ErrorCode::kMalformedDocument, key, "expected array of paths"));
      return;
    }
    for (const json& p : list) {
      if (!p.is_string()) {
        errors.push_back(MakeError(ErrorCode::kMalformedDocument, key, p.dump()));
        continue;
      }
      into.push_back(resolve(p.get<std::string>()));
    }
  };
  auto opt_path = [&](const char* key, std::optional<fs::path>& into) {
    if (auto s = str(key)) into = resolve(*s);
  };

  if (auto id = str("run_id")) c.run_id = *id;
  if (c.run_id.empty()) errors.push_back(MakeError(ErrorCode::kMissingField, "run_id"));
  if (auto p = str("phase")) {
    auto phase = ParsePhase(*p);
    if (!phase) {
      errors.push_back(MakeError(ErrorCode::kBadEnumValue, "phase", *p));
    } else {
      c.phase = *phase;
    }
  } else {
    errors.push_back(MakeError(ErrorCode::kMissingField, "phase"));
  }
  path_list("submissions", c.submissions);
  path_list("models", c.models);
  opt_path("refset", c.refset);
  opt_path("observations", c.observations);
  opt_path("findings", c.findings);
  opt_path("explanations", c.explanations);
  opt_path("roles", c.roles);
  opt_path("reviews", c.reviews);
  opt_path("judgments", c.judgments);
  opt_path("equiv_table", c.equiv_table);
  if (auto it = doc.find("days"); it != doc.end() && !it->is_null()) {
    auto d = ParseDays(it->is_string() ? it->get<std::string>() : it->dump());
    if (!d.ok()) {
      errors.insert(errors.end(), d.errors().begin(), d.errors().end());
    } else {
      c.days = *d;
    }
  }
  if (auto it = doc.find("total_submitted"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<int64_t>() < 0) {
      errors.push_back(MakeError(ErrorCode::kInvalidArgument, "total_submitted", it->dump()));
    } else {
      c.total_submitted = it->get<int64_t>();
    }
  }
  c.fold_hi = doc.value("fold_hi", c.fold_hi);
  c.fold_lo = doc.value("fold_lo", c.fold_lo);
  c.top_k = doc.value("top_k", c.top_k);
  if (!(c.fold_lo > 0 && c.fold_lo < c.fold_hi)) {
    errors.push_back(MakeError(ErrorCode::kInvalidArgument, "fold_lo", "need 0 < fold_lo < fold_hi"));
  }
  if (!errors.empty()) return errors;
  return c;
}

Result<RunConfig> RunConfig::Load(const fs::path& file) {
  std::ifstream in(file);
  if (!in) return MakeError(ErrorCode::kMissingInput, file.string(), "cannot open");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) return MakeError(ErrorCode::kMalformedDocument, file.string(), "not valid JSON");
  return FromJson(doc, file.parent_path());
}

fs::path DataRoot() {
  if (const char* root = std::getenv("MECHEVAL_DATA_ROOT"); root != nullptr && *root != '\0') {
    return fs::path(root);
  }
  return fs::path("mecheval-data");
}

}  // namespace mecheval
