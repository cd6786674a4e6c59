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

#ifndef MECHEVAL_EQUIVALENCE_H_
#define MECHEVAL_EQUIVALENCE_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mecheval/card.h"
#include "mecheval/status.h"

namespace mecheval {

// Exact kind as used for type-error scoring. Plain kind tokens, except that
// increases/decreases whose participant B carries a modification feature
// become "increases_modified_form" / "decreases_modified_form".
std::string KindKey(const Interaction& interaction);

// Groups interaction kinds whose cards may match each other. Loaded from a
// versioned JSON file:
//   {"version": "1", "families": [{"name": "...", "members": ["binds"]}]}
class EquivalenceTable {
 public:
  struct Family {
    std::string name;
    std::vector<std::string> members;
  };

  // The shipped table (share/mecheval/equivalence_default.json).
  static const EquivalenceTable& Default();
  static const char* DefaultJson();

  static Result<EquivalenceTable> FromJson(const nlohmann::json& doc);
  static Result<EquivalenceTable> Load(const std::filesystem::path& file);

  // Family name for a kind key. Keys not listed form their own family.
  std::string FamilyOf(std::string_view kind_key) const;
  std::string FamilyOf(const Interaction& interaction) const {
    return FamilyOf(KindKey(interaction));
  }
  bool SameFamily(const Interaction& a, const Interaction& b) const {
    return FamilyOf(a) == FamilyOf(b);
  }

  const std::string& version() const { return version_; }
  const std::vector<Family>& families() const { return families_; }
  nlohmann::json ToJson() const;

 private:
  std::string version_;
  std::vector<Family> families_;
  std::map<std::string, std::string, std::less<>> family_of_;
};

}  // namespace mecheval

#endif  // MECHEVAL_EQUIVALENCE_H_
