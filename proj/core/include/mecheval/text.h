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

#ifndef MECHEVAL_TEXT_H_
#define MECHEVAL_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace mecheval {

// Canonical form of a participant surface string: Unicode NFC, full case
// folding, superscript markup removed ("p52^{Shc}" and "p52^Shc" both become
// "p52shc") and runs of whitespace collapsed to one space.
std::string NormalizeSurface(std::string_view text);

// ASCII-only lower casing for enum tokens and identifiers.
std::string AsciiLower(std::string_view text);

std::string_view Trim(std::string_view text);

std::vector<std::string> Split(std::string_view text, char sep);

}  // namespace mecheval

#endif  // MECHEVAL_TEXT_H_
