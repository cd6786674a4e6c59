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

#ifndef MECHEVAL_SIGNATURE_H_
#define MECHEVAL_SIGNATURE_H_

#include <string>

#include "mecheval/card.h"
#include "mecheval/equivalence.h"

namespace mecheval {

// Normalized participant rendering. Grounding and features are ignored;
// complex members are sorted so member order does not matter.
std::string CanonicalParticipant(const Participant& participant,
                                 const EquivalenceTable& table = EquivalenceTable::Default());

// Key over family, participants and modification type. For binds and
// translocates the participant pair is sorted.
std::string InteractionSignature(const Interaction& interaction,
                                 const EquivalenceTable& table = EquivalenceTable::Default());

// Signature of the card's interaction; evidence and metadata do not
// contribute.
std::string CardSignature(const IndexCard& card,
                          const EquivalenceTable& table = EquivalenceTable::Default());

}  // namespace mecheval

#endif  // MECHEVAL_SIGNATURE_H_
