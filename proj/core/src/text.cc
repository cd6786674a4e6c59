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

#include "mecheval/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <cctype>

namespace mecheval {
namespace {

bool IsSuperscriptMarkup(UChar32 c) { return c == '^' || c == '{' || c == '}'; }

// U+00B2, U+00B3, U+00B9 and U+2070..U+209F map to their base characters.
UChar32 FoldSuperscriptDigit(UChar32 c) {
  switch (c) {
    case 0x00B9: return '1';
    case 0x00B2: return '2';
    case 0x00B3: return '3';
    case 0x2070: return '0';
    default: break;
  }
  if (c >= 0x2074 && c <= 0x2079) return '4' + (c - 0x2074);
  if (c == 0x207A) return '+';
  if (c == 0x207B) return '-';
  return c;
}

}  // namespace

std::string NormalizeSurface(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString input =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), text.size()));
  icu::UnicodeString stripped;
  bool pending_space = false;
  for (int32_t i = 0; i < input.length();) {
    UChar32 c = input.char32At(i);
    i += U16_LENGTH(c);
    if (IsSuperscriptMarkup(c)) continue;
    if (u_isUWhiteSpace(c)) {
      pending_space = !stripped.isEmpty();
      continue;
    }
    if (pending_space) {
      stripped.append(static_cast<UChar>(' '));
      pending_space = false;
    }
    stripped.append(FoldSuperscriptDigit(c));
  }
  icu::UnicodeString normalized = stripped;
  if (U_SUCCESS(status)) {
    UErrorCode norm_status = U_ZERO_ERROR;
    icu::UnicodeString out = nfc->normalize(stripped, norm_status);
    if (U_SUCCESS(norm_status)) normalized = out;
  }
  normalized.foldCase();
  std::string result;
  normalized.toUTF8String(result);
  return result;
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view text) {
  const char* ws = " \t\r\n";
  size_t begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  size_t end = text.find_last_not_of(ws);
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace mecheval
