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

#ifndef HLBS_GAME_STATE_H_
#define HLBS_GAME_STATE_H_

#include <array>
#include <vector>

#include "hlbs/action.h"
#include "hlbs/event.h"
#include "hlbs/types.h"
#include "hlbs/variant.h"

namespace hlbs {

inline constexpr int8_t kCountdownInactive = -1;

// Full hidden game state. Value type: copies are independent and cheap (one
// flat block plus the event log). All transitions are pure functions of
// (state, action); nothing is shared, so states can cross threads freely.
//
// Ruleset notes, fixed here and relied on by every belief oracle:
//  - a hint must touch at least one card in the target's hand;
//  - discarding is illegal while hint tokens are at the maximum;
//  - completing a color stack restores one hint token (capped);
//  - a bombed-out game scores 0, not the partial fireworks sum;
//  - draws append at the highest slot index, slots shift down on removal,
//    so slot 0 is always the oldest card.
struct GameState {
  Variant variant;

  // deck[0..deck_size); the next card drawn is deck[deck_size - 1].
  std::array<CardIndex, kMaxDeckSize> deck{};
  uint8_t deck_size = 0;

  std::array<Hand, kMaxPlayers> hands{};

  std::array<uint8_t, kMaxColors> fireworks{};  // cards played per color
  std::array<uint8_t, kMaxVocab> discards{};    // copies discarded per identity

  uint8_t hint_tokens = 0;
  uint8_t life_tokens = 0;

  // Public per-slot knowledge accumulated from hints.
  std::array<std::array<SlotMask, kMaxHandSize>, kMaxPlayers> hint_masks{};
  std::array<std::array<uint8_t, kMaxHandSize>, kMaxPlayers> hint_touched{};

  uint8_t current_player = 0;
  int8_t final_countdown = kCountdownInactive;  // moves left once deck is empty
  bool terminal = false;
  uint16_t turn_index = 0;

  // Rollout copies set this false to skip log appends.
  bool log_events = true;
  std::vector<Event> event_log;
};

// Deals a fresh game. The shuffle is a deterministic function of the seed
// alone, so (variant, seed, event_log) identifies a full trajectory.
GameState NewGame(const Variant& variant, uint64_t seed);

// Canonically ordered legal actions (plays by slot, discards by slot, color
// hints, rank hints). Throws RuleViolation on a terminal state.
std::vector<Action> LegalActions(const GameState& state);
bool IsLegalAction(const GameState& state, const Action& a);

// Applies an action in place and returns the reward, defined as the score
// delta: +1 for a successful play, minus the accumulated score when the last
// life is lost, 0 otherwise. Throws RuleViolation naming the broken rule for
// illegal actions.
int Apply(GameState& state, const Action& action);

// 0 when all lives are gone, else the fireworks sum.
int Score(const GameState& state);

bool IsTerminal(const GameState& state);

// Multiset check: deck + hands + discards + played cards == full variant
// deck. Used by tests and debug assertions.
bool CheckCardConservation(const GameState& state);

// Rebuilds the state reached by replaying a recorded log against the seeded
// deal, asserting that revealed/drawn cards match the record.
GameState ReplayEventLog(const Variant& variant, uint64_t seed,
                         const std::vector<Event>& log);

// Identities currently playable (the next rank of some color) and
// identities already played (rank at or below the stack height).
SlotMask PlayableSet(const Variant& v, const std::array<uint8_t, kMaxColors>& fireworks);
SlotMask UselessSet(const Variant& v, const std::array<uint8_t, kMaxColors>& fireworks);

}  // namespace hlbs

#endif  // HLBS_GAME_STATE_H_
