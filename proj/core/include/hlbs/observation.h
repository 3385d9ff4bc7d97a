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

#ifndef HLBS_OBSERVATION_H_
#define HLBS_OBSERVATION_H_

#include <array>

#include "hlbs/event.h"
#include "hlbs/game_state.h"
#include "hlbs/types.h"
#include "hlbs/variant.h"

namespace hlbs {

// Publicly visible part of the last applied event; the drawn card is
// omitted because the actor cannot see it.
struct LastEvent {
  bool present = false;
  ActionKind kind = ActionKind::kPlay;
  uint8_t actor = 0;
  int8_t a = -1;
  int8_t b = -1;
  CardIndex revealed = kNoCard;
  bool success = false;

  bool operator==(const LastEvent&) const = default;
};

// Everything both players know: token counts, board, and the per-slot hint
// knowledge of BOTH hands. Contains no hidden card identity and is a pure
// function of (variant, seed-independent event history), so it can be
// reconstructed from the event log alone.
struct PublicState {
  Variant variant;
  std::array<uint8_t, kMaxColors> fireworks{};
  std::array<uint8_t, kMaxVocab> discards{};
  uint8_t hint_tokens = 0;
  uint8_t life_tokens = 0;
  uint8_t deck_size = 0;
  std::array<std::array<SlotMask, kMaxHandSize>, kMaxPlayers> hint_masks{};
  std::array<std::array<uint8_t, kMaxHandSize>, kMaxPlayers> hint_touched{};
  std::array<uint8_t, kMaxPlayers> hand_sizes{};
  uint8_t current_player = 0;
  int8_t final_countdown = kCountdownInactive;
  uint16_t turn_index = 0;
  bool terminal = false;
  LastEvent last_event;

  bool operator==(const PublicState&) const = default;
};

// What one player privately sees: the partner's cards. Own hint masks are
// replicated here for convenience; they are public information.
struct PrivateObs {
  uint8_t observer = 0;
  Hand partner_hand;
  std::array<SlotMask, kMaxHandSize> own_masks{};
  std::array<uint8_t, kMaxHandSize> own_touched{};
  uint8_t own_hand_size = 0;

  bool operator==(const PrivateObs&) const = default;
};

struct Observation {
  PublicState pub;
  PrivateObs priv;
};

PublicState MakePublicState(const GameState& state);
PrivateObs Observe(const GameState& state, int player);
Observation MakeObservation(const GameState& state, int player);

// (public, per-player private features). The private feature of player i is
// exactly the partner hand seen by i; together with the public state it
// reconstructs Observe(state, i).
struct Factorization {
  PublicState pub;
  std::array<Hand, kMaxPlayers> private_features;
};
Factorization Factorize(const GameState& state);
PrivateObs Reconstruct(const PublicState& pub, const Hand& private_feature,
                       int observer);

}  // namespace hlbs

#endif  // HLBS_OBSERVATION_H_
