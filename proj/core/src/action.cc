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

#include "hlbs/action.h"

#include <sstream>
#include <vector>

#include "hlbs/error.h"

namespace hlbs {

int CanonicalActionIndex(const Action& a) {
  switch (a.kind) {
    case ActionKind::kPlay:
      return a.slot;
    case ActionKind::kDiscard:
      return kMaxHandSize + a.slot;
    case ActionKind::kHintColor:
      return 2 * kMaxHandSize + a.attr;
    case ActionKind::kHintRank:
      return 2 * kMaxHandSize + kMaxColors + a.attr;
  }
  return -1;
}

const char* ActionKindName(ActionKind k) {
  switch (k) {
    case ActionKind::kPlay:
      return "play";
    case ActionKind::kDiscard:
      return "discard";
    case ActionKind::kHintColor:
      return "hint_color";
    case ActionKind::kHintRank:
      return "hint_rank";
  }
  return "?";
}

std::string ActionToString(const Action& a) {
  std::ostringstream os;
  os << ActionKindName(a.kind) << ":";
  if (a.kind == ActionKind::kPlay || a.kind == ActionKind::kDiscard) {
    os << int{a.slot};
  } else {
    os << int{a.target} << ":" << int{a.attr};
  }
  return os.str();
}

Action ActionFromString(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() < 2) throw Error("bad action string: " + s);
  const std::string& kind = parts[0];
  if (kind == "play") return Action::Play(std::stoi(parts[1]));
  if (kind == "discard") return Action::Discard(std::stoi(parts[1]));
  if (parts.size() < 3) throw Error("bad action string: " + s);
  if (kind == "hint_color") {
    return Action::HintColor(std::stoi(parts[1]), std::stoi(parts[2]));
  }
  if (kind == "hint_rank") {
    return Action::HintRank(std::stoi(parts[1]), std::stoi(parts[2]));
  }
  throw Error("bad action string: " + s);
}

}  // namespace hlbs
