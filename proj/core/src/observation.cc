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

#include "hlbs/observation.h"

namespace hlbs {

PublicState MakePublicState(const GameState& state) {
  PublicState p;
  p.variant = state.variant;
  p.fireworks = state.fireworks;
  p.discards = state.discards;
  p.hint_tokens = state.hint_tokens;
  p.life_tokens = state.life_tokens;
  p.deck_size = state.deck_size;
  p.hint_masks = state.hint_masks;
  p.hint_touched = state.hint_touched;
  for (int i = 0; i < state.variant.num_players; ++i) {
    p.hand_sizes[i] = state.hands[i].size;
  }
  p.current_player = state.current_player;
  p.final_countdown = state.final_countdown;
  p.turn_index = state.turn_index;
  p.terminal = state.terminal;
  if (!state.event_log.empty()) {
    const Event& e = state.event_log.back();
    p.last_event.present = true;
    p.last_event.kind = e.kind;
    p.last_event.actor = e.actor;
    p.last_event.a = e.a;
    p.last_event.b = e.b;
    p.last_event.revealed = e.revealed;
    p.last_event.success = e.success;
  }
  return p;
}

PrivateObs Observe(const GameState& state, int player) {
  PrivateObs o;
  o.observer = static_cast<uint8_t>(player);
  const int partner = 1 - player;
  o.partner_hand = state.hands[partner];
  o.own_masks = state.hint_masks[player];
  o.own_touched = state.hint_touched[player];
  o.own_hand_size = state.hands[player].size;
  return o;
}

Observation MakeObservation(const GameState& state, int player) {
  return Observation{MakePublicState(state), Observe(state, player)};
}

Factorization Factorize(const GameState& state) {
  Factorization f;
  f.pub = MakePublicState(state);
  for (int i = 0; i < state.variant.num_players; ++i) {
    f.private_features[i] = state.hands[1 - i];
  }
  return f;
}

PrivateObs Reconstruct(const PublicState& pub, const Hand& private_feature,
                       int observer) {
  PrivateObs o;
  o.observer = static_cast<uint8_t>(observer);
  o.partner_hand = private_feature;
  o.own_masks = pub.hint_masks[observer];
  o.own_touched = pub.hint_touched[observer];
  o.own_hand_size = pub.hand_sizes[observer];
  return o;
}

}  // namespace hlbs
