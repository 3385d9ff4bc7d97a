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

#include "hlbs/event.h"

#include <sstream>

#include "hlbs/error.h"

namespace hlbs {

std::string EventToLine(const Variant& v, const Event& e) {
  std::ostringstream os;
  os << e.turn << "," << int{e.actor} << "," << ActionKindName(e.kind) << ","
     << int{e.a} << ":" << int{e.b} << "," << CardName(v, e.revealed) << ","
     << CardName(v, e.drawn);
  return os.str();
}

namespace {
std::vector<std::string> SplitOn(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

ActionKind KindFromName(const std::string& name) {
  if (name == "play") return ActionKind::kPlay;
  if (name == "discard") return ActionKind::kDiscard;
  if (name == "hint_color") return ActionKind::kHintColor;
  if (name == "hint_rank") return ActionKind::kHintRank;
  throw Error("bad event kind: " + name);
}
}  // namespace

Event EventFromLine(const Variant& v, const std::string& line) {
  const auto fields = SplitOn(line, ',');
  if (fields.size() != 6) throw Error("bad event line: " + line);
  Event e;
  e.turn = static_cast<uint16_t>(std::stoi(fields[0]));
  e.actor = static_cast<uint8_t>(std::stoi(fields[1]));
  e.kind = KindFromName(fields[2]);
  const auto payload = SplitOn(fields[3], ':');
  if (payload.size() != 2) throw Error("bad event payload: " + line);
  e.a = static_cast<int8_t>(std::stoi(payload[0]));
  e.b = static_cast<int8_t>(std::stoi(payload[1]));
  e.revealed = ParseCardName(v, fields[4]);
  e.drawn = ParseCardName(v, fields[5]);
  return e;
}

std::string EventLogToText(const Variant& v, const std::vector<Event>& log) {
  std::string out;
  for (const Event& e : log) {
    out += EventToLine(v, e);
    out += '\n';
  }
  return out;
}

std::vector<Event> EventLogFromText(const Variant& v, const std::string& text) {
  std::vector<Event> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(EventFromLine(v, line));
  }
  return out;
}

}  // namespace hlbs
