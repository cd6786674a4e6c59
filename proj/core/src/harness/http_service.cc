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

#include "mecheval/harness/http_service.h"

#include <fstream>

#include <httplib.h>

namespace mecheval {

using nlohmann::json;

Result<TokenMap> LoadTokenMap(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return MakeError(ErrorCode::kMissingInput, file.string(), "cannot open");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return MakeError(ErrorCode::kMalformedDocument, file.string());
  const json& tokens = doc.contains("tokens") ? doc["tokens"] : doc;
  if (!tokens.is_object()) return MakeError(ErrorCode::kMalformedDocument, file.string(), "tokens");
  TokenMap out;
  for (auto it = tokens.begin(); it != tokens.end(); ++it) {
    if (!it.value().is_string() || it.key().empty()) {
      return MakeError(ErrorCode::kMalformedDocument, file.string(), "token " + it.key());
    }
    out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnauthorized: return 401;
    case ErrorCode::kNotClaimant: return 403;
    case ErrorCode::kUnknownItem:
    case ErrorCode::kUnknownRun:
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownCard: return 404;
    case ErrorCode::kAlreadyClaimed:
    case ErrorCode::kStaleRevision:
    case ErrorCode::kDuplicateRun: return 409;
    case ErrorCode::kIoError: return 500;
    default: return 400;
  }
}

struct HttpService::Impl {
  ReviewService& service;
  TokenMap tokens;
  httplib::Server server;

  Impl(ReviewService& s, TokenMap t) : service(s), tokens(std::move(t)) {}

  static void Send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
  }

  static void SendErrors(httplib::Response& res, const ErrorList& errors) {
    json list = json::array();
    for (const Error& e : errors) {
      list.push_back(json{{"code", ErrorCodeName(e.code)}, {"path", e.path}, {"detail", e.detail}});
    }
    Send(res, HttpStatusFor(errors.front().code),
         json{{"error", ErrorCodeName(errors.front().code)}, {"errors", std::move(list)}});
  }

  // Reviewer for the request's bearer token, or nullopt after answering 401.
  std::optional<std::string> Authenticate(const httplib::Request& req, httplib::Response& res) const {
    const std::string header = req.get_header_value("Authorization");
    const std::string prefix = "Bearer ";
    if (header.rfind(prefix, 0) == 0) {
      auto it = tokens.find(header.substr(prefix.size()));
      if (it != tokens.end()) return it->second;
    }
    SendErrors(res, {MakeError(ErrorCode::kUnauthorized, req.path, "missing or unknown bearer token")});
    return std::nullopt;
  }

  template <typename T>
  static void Reply(httplib::Response& res, const Result<T>& result) {
    if (!result.ok()) {
      SendErrors(res, result.errors());
    } else if constexpr (std::is_same_v<T, ReviewItem>) {
      Send(res, 200, result->ToJson());
    } else {
      Send(res, 200, *result);
    }
  }

  void Routes() {
    server.Get("/v1/runs", [this](const httplib::Request& req, httplib::Response& res) {
      if (!Authenticate(req, res)) return;
      Send(res, 200, json{{"runs", service.RunIds()}});
    });
    server.Get(R"(/v1/runs/([^/]+)/queue)", [this](const httplib::Request& req, httplib::Response& res) {
      if (!Authenticate(req, res)) return;
      QueueFilter filter;
      if (req.has_param("kind")) {
        filter.kind = ParseItemKind(req.get_param_value("kind"));
        if (!filter.kind) return SendErrors(res, {MakeError(ErrorCode::kBadEnumValue, "kind", req.get_param_value("kind"))});
      }
      if (req.has_param("state")) {
        filter.state = ParseItemState(req.get_param_value("state"));
        if (!filter.state) return SendErrors(res, {MakeError(ErrorCode::kBadEnumValue, "state", req.get_param_value("state"))});
      }
      if (req.has_param("paper")) filter.paper_id = req.get_param_value("paper");
      Reply(res, service.ListQueue(req.matches[1].str(), filter));
    });
    server.Get(R"(/v1/runs/([^/]+)/report)", [this](const httplib::Request& req, httplib::Response& res) {
      if (!Authenticate(req, res)) return;
      Reply(res, service.Report(req.matches[1].str()));
    });
    server.Get(R"(/v1/items/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      if (!Authenticate(req, res)) return;
      Reply(res, service.GetItem(req.matches[1].str()));
    });
    server.Post(R"(/v1/items/([^/]+)/claim)", [this](const httplib::Request& req, httplib::Response& res) {
      auto reviewer = Authenticate(req, res);
      if (!reviewer) return;
      Reply(res, service.Claim(req.matches[1].str(), *reviewer));
    });
    server.Post(R"(/v1/items/([^/]+)/release)", [this](const httplib::Request& req, httplib::Response& res) {
      auto reviewer = Authenticate(req, res);
      if (!reviewer) return;
      Status s = service.Release(req.matches[1].str(), *reviewer);
      if (!s.ok()) return SendErrors(res, s.errors());
      Send(res, 200, json{{"released", req.matches[1].str()}});
    });
    server.Post(R"(/v1/items/([^/]+)/resolve)", [this](const httplib::Request& req, httplib::Response& res) {
      auto reviewer = Authenticate(req, res);
      if (!reviewer) return;
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded()) {
        return SendErrors(res, {MakeError(ErrorCode::kMalformedDocument, "body", "not valid JSON")});
      }
      Reply(res, service.Resolve(req.matches[1].str(), *reviewer, body));
    });
  }
};

HttpService::HttpService(ReviewService& service, TokenMap tokens)
    : impl_(std::make_unique<Impl>(service, std::move(tokens))) {
  impl_->Routes();
}

HttpService::~HttpService() { Stop(); }

int HttpService::BindToAnyPort(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpService::Bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }

bool HttpService::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpService::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpService::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace mecheval
