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

#ifndef HLBS_VARIANT_H_
#define HLBS_VARIANT_H_

#include <array>
#include <cstdint>
#include <string>

#include "hlbs/types.h"

namespace hlbs {

// Rules configuration. Value type; cheap to copy. Use Validate() after
// manual construction, or MakeVariant()/LoadVariantFile() which validate.
struct Variant {
  uint8_t num_colors = 5;
  uint8_t num_ranks = 5;
  std::array<uint8_t, kMaxRanks> rank_counts = {3, 2, 2, 2, 1};
  uint8_t hand_size = 5;
  uint8_t max_hint_tokens = 8;
  uint8_t max_lives = 3;
  uint8_t num_players = 2;

  bool operator==(const Variant&) const = default;

  int Vocab() const { return num_colors * num_ranks; }

  int DeckSize() const {
    int per_color = 0;
    for (int r = 0; r < num_ranks; ++r) per_color += rank_counts[r];
    return per_color * num_colors;
  }

  int DeckSizeAfterDeal() const {
    return DeckSize() - hand_size * num_players;
  }

  int MaxScore() const { return num_colors * num_ranks; }

  CardIndex PackCard(Card c) const {
    return static_cast<CardIndex>(c.color * num_ranks + c.rank);
  }
  Card UnpackCard(CardIndex v) const {
    return Card{static_cast<uint8_t>(v / num_ranks),
                static_cast<uint8_t>(v % num_ranks)};
  }
  uint8_t ColorOf(CardIndex v) const {
    return static_cast<uint8_t>(v / num_ranks);
  }
  uint8_t RankOf(CardIndex v) const {
    return static_cast<uint8_t>(v % num_ranks);
  }

  // Mask with every variant identity plausible.
  SlotMask FullMask() const {
    return Vocab() >= 32 ? ~SlotMask{0} : ((SlotMask{1} << Vocab()) - 1);
  }
  // Identities of a given color / rank, for hint mask updates.
  SlotMask ColorMask(int color) const {
    SlotMask m = 0;
    for (int r = 0; r < num_ranks; ++r) m |= SlotMask{1} << (color * num_ranks + r);
    return m;
  }
  SlotMask RankMask(int rank) const {
    SlotMask m = 0;
    for (int c = 0; c < num_colors; ++c) m |= SlotMask{1} << (c * num_ranks + rank);
    return m;
  }

  // Throws Error if any field is out of range or inconsistent.
  void Validate() const;
};

Variant MakeVariant(int num_colors, int num_ranks,
                    std::array<uint8_t, kMaxRanks> rank_counts, int hand_size,
                    int max_hint_tokens = 8, int max_lives = 3);

// Named presets: "default" (5-card), "six-card", "seven-card" (hint cap 4),
// "mini" (2 colors, 3 ranks, counts [2,2,1], hand 2).
Variant VariantPreset(const std::string& name);

// Reads a JSON variant file with exactly the Variant fields; unknown keys
// are rejected. Accepts a preset name when the argument names no file.
Variant LoadVariantFile(const std::string& path_or_preset);
std::string VariantToJson(const Variant& v);

// Short human label, e.g. "c5r5h5".
std::string VariantId(const Variant& v);

// Card spellings used in logs and CSVs: color letter from "RYGWB" plus
// 1-based rank, e.g. "R1", "B5". "-" means no card.
std::string CardName(const Variant& v, CardIndex card);
CardIndex ParseCardName(const Variant& v, const std::string& name);

}  // namespace hlbs

#endif  // HLBS_VARIANT_H_
