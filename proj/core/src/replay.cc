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

#include "hlbs/replay.h"

#include <fstream>
#include <sstream>

#include "hlbs/error.h"
#include "hlbs/game_state.h"
#include "hlbs/observation.h"
#include "hlbs/parallel.h"

namespace hlbs {

void ReplayBuffer::Add(TrajectoryRecord record) {
  records_.push_back(std::move(record));
  while (records_.size() > capacity_) records_.pop_front();
}

const TrajectoryRecord& ReplayBuffer::Sample(Rng& rng) const {
  if (records_.empty()) throw Error("replay buffer is empty");
  return records_[rng.NextBelow(static_cast<uint32_t>(records_.size()))];
}

const Variant& ReplayBuffer::GetVariant() const {
  if (records_.empty()) throw Error("replay buffer is empty");
  return records_.front().variant;
}

ReplayBuffer GenerateSelfplay(const BlueprintPolicy& blueprint,
                              const Variant& variant, int n_games,
                              uint64_t seed, int jobs) {
  std::vector<TrajectoryRecord> games(n_games);
  const Rng root(seed);
  ParallelFor(n_games, jobs, [&](int i) {
    TrajectoryRecord rec;
    rec.variant = variant;
    rec.seed = Rng(seed).Derive(stream::kGame, i).NextU64();
    GameState state = NewGame(variant, rec.seed);
    std::vector<int> rewards;
    PolicyMemory memory;
    while (!IsTerminal(state)) {
      const int actor = state.current_player;
      rec.acting_hands.push_back(state.hands[actor]);
      const Action a = blueprint.Act(MakeObservation(state, actor), &memory);
      rewards.push_back(Apply(state, a));
    }
    rec.events = state.event_log;
    rec.final_score = static_cast<int16_t>(Score(state));
    rec.returns_to_go.resize(rewards.size());
    int run = 0;
    for (int t = static_cast<int>(rewards.size()) - 1; t >= 0; --t) {
      run += rewards[t];
      rec.returns_to_go[t] = static_cast<int16_t>(run);
    }
    games[i] = std::move(rec);
  });
  (void)root;
  ReplayBuffer buffer(std::max<std::size_t>(n_games, 1));
  for (auto& g : games) buffer.Add(std::move(g));
  return buffer;
}

std::string BufferToText(const ReplayBuffer& buffer) {
  std::ostringstream os;
  os << "# hlbs-buffer-v1\n";
  if (buffer.Size() == 0) {
    os << "variant {}\n";
    return os.str();
  }
  const Variant& v = buffer.GetVariant();
  os << "variant " << VariantToJson(v) << "\n";
  for (std::size_t i = 0; i < buffer.Size(); ++i) {
    const TrajectoryRecord& r = buffer.At(i);
    os << r.seed << "|";
    for (std::size_t e = 0; e < r.events.size(); ++e) {
      if (e) os << ";";
      os << EventToLine(v, r.events[e]);
    }
    os << "|";
    for (std::size_t t = 0; t < r.acting_hands.size(); ++t) {
      if (t) os << ":";
      const Hand& h = r.acting_hands[t];
      for (int s = 0; s < h.size; ++s) os << CardName(v, h.cards[s]);
    }
    os << "|";
    for (std::size_t t = 0; t < r.returns_to_go.size(); ++t) {
      if (t) os << ",";
      os << r.returns_to_go[t];
    }
    os << "\n";
  }
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

Hand ParseHand(const Variant& v, const std::string& s) {
  Hand h;
  std::size_t i = 0;
  while (i < s.size()) {
    // Card spelling is one color letter plus rank digits.
    std::size_t j = i + 1;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    h.cards[h.size++] = ParseCardName(v, s.substr(i, j - i));
    i = j;
  }
  return h;
}

}  // namespace

ReplayBuffer BufferFromText(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "# hlbs-buffer-v1") {
    throw Error("buffer text: bad header");
  }
  if (!std::getline(in, line) || line.rfind("variant ", 0) != 0) {
    throw Error("buffer text: missing variant line");
  }
  const std::string vjson = line.substr(8);
  std::vector<TrajectoryRecord> records;
  Variant v;
  bool have_variant = false;
  if (vjson != "{}") {
    const std::string tmp = "/tmp/.hlbs_variant_line.json";
    {
      std::ofstream out(tmp);
      out << vjson;
    }
    v = LoadVariantFile(tmp);
    have_variant = true;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!have_variant) throw Error("buffer text: records without a variant");
    const auto parts = SplitOn(line, '|');
    if (parts.size() != 4) throw Error("buffer text: bad record line");
    TrajectoryRecord r;
    r.variant = v;
    r.seed = std::stoull(parts[0]);
    if (!parts[1].empty()) {
      for (const auto& ev : SplitOn(parts[1], ';')) {
        r.events.push_back(EventFromLine(v, ev));
      }
    }
    if (!parts[2].empty()) {
      for (const auto& hs : SplitOn(parts[2], ':')) {
        r.acting_hands.push_back(ParseHand(v, hs));
      }
    }
    if (!parts[3].empty()) {
      for (const auto& rv : SplitOn(parts[3], ',')) {
        r.returns_to_go.push_back(static_cast<int16_t>(std::stoi(rv)));
      }
    }
    r.final_score = r.returns_to_go.empty() ? 0 : r.returns_to_go.front();
    records.push_back(std::move(r));
  }
  ReplayBuffer buffer(std::max<std::size_t>(records.size(), 1));
  for (auto& r : records) buffer.Add(std::move(r));
  return buffer;
}

void SaveBufferText(const ReplayBuffer& buffer, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << BufferToText(buffer);
}

ReplayBuffer LoadBufferText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return BufferFromText(ss.str());
}

namespace {
constexpr char kBinMagic[8] = {'H', 'L', 'B', 'S', 'R', 'B', '1', '\n'};

template <typename T>
void WriteRaw(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}
template <typename T>
void ReadRaw(std::ifstream& in, T& value) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
}
}  // namespace

void SaveBufferBinary(const ReplayBuffer& buffer, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(kBinMagic, sizeof(kBinMagic));
  const uint32_t n = static_cast<uint32_t>(buffer.Size());
  WriteRaw(out, n);
  if (n == 0) return;
  const Variant& v = buffer.GetVariant();
  WriteRaw(out, v.num_colors);
  WriteRaw(out, v.num_ranks);
  for (int r = 0; r < kMaxRanks; ++r) WriteRaw(out, v.rank_counts[r]);
  WriteRaw(out, v.hand_size);
  WriteRaw(out, v.max_hint_tokens);
  WriteRaw(out, v.max_lives);
  WriteRaw(out, v.num_players);
  for (std::size_t i = 0; i < buffer.Size(); ++i) {
    const TrajectoryRecord& r = buffer.At(i);
    WriteRaw(out, r.seed);
    const uint32_t ne = static_cast<uint32_t>(r.events.size());
    WriteRaw(out, ne);
    for (const Event& e : r.events) {
      WriteRaw(out, e.turn);
      WriteRaw(out, e.actor);
      const uint8_t kind = static_cast<uint8_t>(e.kind);
      WriteRaw(out, kind);
      WriteRaw(out, e.a);
      WriteRaw(out, e.b);
      WriteRaw(out, e.revealed);
      WriteRaw(out, e.drawn);
      const uint8_t success = e.success ? 1 : 0;
      WriteRaw(out, success);
    }
    const uint32_t nt = static_cast<uint32_t>(r.acting_hands.size());
    WriteRaw(out, nt);
    for (const Hand& h : r.acting_hands) {
      WriteRaw(out, h.size);
      for (int s = 0; s < h.size; ++s) WriteRaw(out, h.cards[s]);
    }
    for (int16_t ret : r.returns_to_go) WriteRaw(out, ret);
    WriteRaw(out, r.final_score);
  }
  if (!out) throw Error("short write: " + path);
}

ReplayBuffer LoadBufferBinary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::string(magic, 8) != std::string(kBinMagic, 8)) {
    throw Error("not a buffer cache file: " + path);
  }
  uint32_t n = 0;
  ReadRaw(in, n);
  ReplayBuffer buffer(std::max<std::size_t>(n, 1));
  if (n == 0) return buffer;
  Variant v;
  ReadRaw(in, v.num_colors);
  ReadRaw(in, v.num_ranks);
  for (int r = 0; r < kMaxRanks; ++r) ReadRaw(in, v.rank_counts[r]);
  ReadRaw(in, v.hand_size);
  ReadRaw(in, v.max_hint_tokens);
  ReadRaw(in, v.max_lives);
  ReadRaw(in, v.num_players);
  v.Validate();
  for (uint32_t i = 0; i < n; ++i) {
    TrajectoryRecord r;
    r.variant = v;
    ReadRaw(in, r.seed);
    uint32_t ne = 0;
    ReadRaw(in, ne);
    r.events.resize(ne);
    for (Event& e : r.events) {
      ReadRaw(in, e.turn);
      ReadRaw(in, e.actor);
      uint8_t kind = 0;
      ReadRaw(in, kind);
      e.kind = static_cast<ActionKind>(kind);
      ReadRaw(in, e.a);
      ReadRaw(in, e.b);
      ReadRaw(in, e.revealed);
      ReadRaw(in, e.drawn);
      uint8_t success = 0;
      ReadRaw(in, success);
      e.success = success != 0;
    }
    uint32_t nt = 0;
    ReadRaw(in, nt);
    r.acting_hands.resize(nt);
    for (Hand& h : r.acting_hands) {
      ReadRaw(in, h.size);
      for (int s = 0; s < h.size; ++s) ReadRaw(in, h.cards[s]);
    }
    r.returns_to_go.resize(nt);
    for (int16_t& ret : r.returns_to_go) ReadRaw(in, ret);
    ReadRaw(in, r.final_score);
    buffer.Add(std::move(r));
  }
  if (!in) throw Error("truncated buffer cache: " + path);
  return buffer;
}

}  // namespace hlbs
