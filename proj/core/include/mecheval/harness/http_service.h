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

#ifndef MECHEVAL_HARNESS_HTTP_SERVICE_H_
#define MECHEVAL_HARNESS_HTTP_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "mecheval/harness/review_service.h"
#include "mecheval/status.h"

namespace mecheval {

// Bearer token -> reviewer id. File form: {"tokens": {"<token>": "<reviewer>"}}.
using TokenMap = std::map<std::string, std::string>;
Result<TokenMap> LoadTokenMap(const std::filesystem::path& file);

int HttpStatusFor(ErrorCode code);

// JSON front for ReviewService:
//   GET  /v1/runs
//   GET  /v1/runs/{run}/queue?kind=&state=&paper=
//   GET  /v1/runs/{run}/report
//   GET  /v1/items/{item}
//   POST /v1/items/{item}/claim
//   POST /v1/items/{item}/release
//   POST /v1/items/{item}/resolve      body: decision document
// Every request needs "Authorization: Bearer <token>".
class HttpService {
 public:
  HttpService(ReviewService& service, TokenMap tokens);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string& host);
  bool Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mecheval

#endif  // MECHEVAL_HARNESS_HTTP_SERVICE_H_
