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

#include "hlbs/variant.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hlbs/error.h"
#include "json.hpp"

namespace hlbs {

namespace {
constexpr char kColorLetters[] = "RYGWB";
}

void Variant::Validate() const {
  if (num_players != 2) {
    throw Error("variant: only 2-player games are supported");
  }
  if (num_colors < 1 || num_colors > kMaxColors) {
    throw Error("variant: num_colors out of range");
  }
  if (num_ranks < 1 || num_ranks > kMaxRanks) {
    throw Error("variant: num_ranks out of range");
  }
  for (int r = 0; r < num_ranks; ++r) {
    if (rank_counts[r] < 1) {
      throw Error("variant: rank_counts entries must be >= 1");
    }
  }
  if (hand_size < 1 || hand_size > kMaxHandSize) {
    throw Error("variant: hand_size out of range");
  }
  if (hand_size * num_players > DeckSize()) {
    throw Error("variant: deck too small for the configured hands");
  }
  if (max_hint_tokens < 1) {
    throw Error("variant: max_hint_tokens must be >= 1");
  }
  if (max_lives < 1) {
    throw Error("variant: max_lives must be >= 1");
  }
  if (DeckSize() > kMaxDeckSize) {
    throw Error("variant: deck exceeds supported size");
  }
}

Variant MakeVariant(int num_colors, int num_ranks,
                    std::array<uint8_t, kMaxRanks> rank_counts, int hand_size,
                    int max_hint_tokens, int max_lives) {
  Variant v;
  v.num_colors = static_cast<uint8_t>(num_colors);
  v.num_ranks = static_cast<uint8_t>(num_ranks);
  v.rank_counts = rank_counts;
  v.hand_size = static_cast<uint8_t>(hand_size);
  v.max_hint_tokens = static_cast<uint8_t>(max_hint_tokens);
  v.max_lives = static_cast<uint8_t>(max_lives);
  v.Validate();
  return v;
}

Variant VariantPreset(const std::string& name) {
  if (name == "default" || name == "five-card") {
    return MakeVariant(5, 5, {3, 2, 2, 2, 1}, 5);
  }
  if (name == "six-card") {
    return MakeVariant(5, 5, {3, 2, 2, 2, 1}, 6);
  }
  if (name == "seven-card") {
    // Hint cap lowered to 4: larger hands make hints so informative that the
    // game is otherwise too easy.
    return MakeVariant(5, 5, {3, 2, 2, 2, 1}, 7, /*max_hint_tokens=*/4);
  }
  if (name == "mini") {
    return MakeVariant(2, 3, {2, 2, 1, 0, 0}, 2);
  }
  throw Error("unknown variant preset: " + name);
}

Variant LoadVariantFile(const std::string& path_or_preset) {
  if (!std::filesystem::exists(path_or_preset)) {
    return VariantPreset(path_or_preset);
  }
  std::ifstream in(path_or_preset);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("variant file parse error: " + std::string(e.what()));
  }
  static const char* kKnown[] = {"num_colors",      "num_ranks", "rank_counts",
                                 "hand_size",       "max_hint_tokens",
                                 "max_lives",       "num_players"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : kKnown) known |= it.key() == k;
    if (!known) throw Error("variant file: unknown key '" + it.key() + "'");
  }
  Variant v;
  if (j.contains("num_colors")) v.num_colors = j["num_colors"].get<uint8_t>();
  if (j.contains("num_ranks")) v.num_ranks = j["num_ranks"].get<uint8_t>();
  if (j.contains("rank_counts")) {
    auto counts = j["rank_counts"].get<std::vector<int>>();
    if (static_cast<int>(counts.size()) != v.num_ranks) {
      throw Error("variant file: rank_counts length must equal num_ranks");
    }
    v.rank_counts.fill(0);
    for (size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] < 0 || counts[i] > 255) {
        throw Error("variant file: rank_counts entry out of range");
      }
      v.rank_counts[i] = static_cast<uint8_t>(counts[i]);
    }
  }
  if (j.contains("hand_size")) v.hand_size = j["hand_size"].get<uint8_t>();
  if (j.contains("max_hint_tokens")) {
    v.max_hint_tokens = j["max_hint_tokens"].get<uint8_t>();
  }
  if (j.contains("max_lives")) v.max_lives = j["max_lives"].get<uint8_t>();
  if (j.contains("num_players")) v.num_players = j["num_players"].get<uint8_t>();
  v.Validate();
  return v;
}

std::string VariantToJson(const Variant& v) {
  nlohmann::json j;
  j["num_colors"] = v.num_colors;
  j["num_ranks"] = v.num_ranks;
  std::vector<int> counts(v.rank_counts.begin(),
                          v.rank_counts.begin() + v.num_ranks);
  j["rank_counts"] = counts;
  j["hand_size"] = v.hand_size;
  j["max_hint_tokens"] = v.max_hint_tokens;
  j["max_lives"] = v.max_lives;
  j["num_players"] = v.num_players;
  return j.dump();
}

std::string VariantId(const Variant& v) {
  std::ostringstream os;
  os << "c" << int{v.num_colors} << "r" << int{v.num_ranks} << "h"
     << int{v.hand_size};
  return os.str();
}

std::string CardName(const Variant& v, CardIndex card) {
  if (card == kNoCard) return "-";
  const Card c = v.UnpackCard(card);
  std::string s;
  s.push_back(kColorLetters[c.color]);
  s += std::to_string(c.rank + 1);
  return s;
}

CardIndex ParseCardName(const Variant& v, const std::string& name) {
  if (name == "-") return kNoCard;
  if (name.size() < 2) throw Error("bad card name: " + name);
  int color = -1;
  for (int i = 0; i < kMaxColors; ++i) {
    if (kColorLetters[i] == name[0]) color = i;
  }
  const int rank = std::stoi(name.substr(1)) - 1;
  if (color < 0 || color >= v.num_colors || rank < 0 || rank >= v.num_ranks) {
    throw Error("bad card name: " + name);
  }
  return v.PackCard(Card{static_cast<uint8_t>(color), static_cast<uint8_t>(rank)});
}

}  // namespace hlbs
