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

#ifndef MECHEVAL_CSV_H_
#define MECHEVAL_CSV_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mecheval/status.h"

namespace mecheval {

// Comma-separated table with a header row. Quoted fields may contain commas,
// doubled quotes and newlines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<size_t> Column(std::string_view name) const;
};

Result<CsvTable> ParseCsv(std::string_view text);

std::string CsvField(std::string_view value);
// Fields quoted as needed, terminated by a newline.
std::string CsvRow(const std::vector<std::string>& fields);

}  // namespace mecheval

#endif  // MECHEVAL_CSV_H_
