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

#ifndef HLBS_TYPES_H_
#define HLBS_TYPES_H_

#include <array>
#include <cstdint>

namespace hlbs {

// Compile-time capacities. Variants are validated against these at
// construction; hot-path containers are fixed-size arrays bounded by them.
inline constexpr int kMaxColors = 5;
inline constexpr int kMaxRanks = 5;
inline constexpr int kMaxVocab = kMaxColors * kMaxRanks;
inline constexpr int kMaxHandSize = 7;
inline constexpr int kMaxPlayers = 2;
inline constexpr int kMaxDeckSize = 50;

// A card identity packed as color * num_ranks + rank (variant-dependent).
using CardIndex = uint8_t;
inline constexpr CardIndex kNoCard = 0xFF;

struct Card {
  uint8_t color = 0;
  uint8_t rank = 0;  // 0-based; rank r is the (r+1)-valued card

  bool operator==(const Card&) const = default;
};

// Fixed-capacity ordered hand of packed card indices. Slot 0 is the oldest
// card; draws append at the highest occupied index.
struct Hand {
  std::array<CardIndex, kMaxHandSize> cards{};
  uint8_t size = 0;

  CardIndex operator[](int slot) const { return cards[slot]; }
  CardIndex& operator[](int slot) { return cards[slot]; }
  bool operator==(const Hand& o) const {
    if (size != o.size) return false;
    for (int i = 0; i < size; ++i) {
      if (cards[i] != o.cards[i]) return false;
    }
    return true;
  }
};

// Plausibility mask over packed card indices; bit v set means identity v is
// still consistent with all hints received for the slot.
using SlotMask = uint32_t;

}  // namespace hlbs

#endif  // HLBS_TYPES_H_
