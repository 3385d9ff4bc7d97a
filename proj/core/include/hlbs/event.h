// Copyright 2026 The hlbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HLBS_EVENT_H_
#define HLBS_EVENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hlbs/action.h"
#include "hlbs/types.h"
#include "hlbs/variant.h"

namespace hlbs {

// Omniscient record of one applied action. `drawn` stores the replacement
// card for the actor's own bookkeeping and replay; it is not part of the
// public view of the event (the actor cannot see it).
struct Event {
  uint16_t turn = 0;
  uint8_t actor = 0;
  ActionKind kind = ActionKind::kPlay;
  int8_t a = -1;             // slot, or hint target
  int8_t b = -1;             // unused, or hinted attribute index
  CardIndex revealed = kNoCard;  // card leaving the actor's hand
  CardIndex drawn = kNoCard;     // card drawn afterwards, if any
  bool success = false;          // play reached the stack

  bool operator==(const Event&) const = default;
};

// One line per event: `turn,actor,kind,a:b,revealed,drawn`. Cards use
// CardName spelling; fields are fixed-order so logs compare byte-exact.
std::string EventToLine(const Variant& v, const Event& e);
Event EventFromLine(const Variant& v, const std::string& line);

std::string EventLogToText(const Variant& v, const std::vector<Event>& log);
std::vector<Event> EventLogFromText(const Variant& v, const std::string& text);

}  // namespace hlbs

#endif  // HLBS_EVENT_H_
