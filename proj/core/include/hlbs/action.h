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

#ifndef HLBS_ACTION_H_
#define HLBS_ACTION_H_

#include <cstdint>
#include <string>

#include "hlbs/variant.h"

namespace hlbs {

enum class ActionKind : uint8_t { kPlay = 0, kDiscard = 1, kHintColor = 2, kHintRank = 3 };

struct Action {
  ActionKind kind = ActionKind::kPlay;
  int8_t slot = -1;    // play/discard
  int8_t target = -1;  // hint target player
  int8_t attr = -1;    // hinted color or rank index

  bool operator==(const Action&) const = default;

  static Action Play(int slot) {
    return Action{ActionKind::kPlay, static_cast<int8_t>(slot), -1, -1};
  }
  static Action Discard(int slot) {
    return Action{ActionKind::kDiscard, static_cast<int8_t>(slot), -1, -1};
  }
  static Action HintColor(int target, int color) {
    return Action{ActionKind::kHintColor, -1, static_cast<int8_t>(target),
                  static_cast<int8_t>(color)};
  }
  static Action HintRank(int target, int rank) {
    return Action{ActionKind::kHintRank, -1, static_cast<int8_t>(target),
                  static_cast<int8_t>(rank)};
  }
};

// Total order used for canonical action lists and deterministic
// tie-breaking: plays by slot, then discards by slot, then color hints by
// color, then rank hints by rank.
int CanonicalActionIndex(const Action& a);

// e.g. "play:2", "discard:0", "hint_color:1:3", "hint_rank:1:0".
std::string ActionToString(const Action& a);
Action ActionFromString(const std::string& s);

const char* ActionKindName(ActionKind k);

}  // namespace hlbs

#endif  // HLBS_ACTION_H_
