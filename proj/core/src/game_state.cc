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

#include "hlbs/game_state.h"

#include <algorithm>

#include "hlbs/error.h"
#include "hlbs/rng.h"

namespace hlbs {

namespace {

bool AllStacksComplete(const GameState& s) {
  for (int c = 0; c < s.variant.num_colors; ++c) {
    if (s.fireworks[c] < s.variant.num_ranks) return false;
  }
  return true;
}

void RemoveSlot(GameState& s, int player, int slot) {
  Hand& h = s.hands[player];
  for (int i = slot; i + 1 < h.size; ++i) {
    h.cards[i] = h.cards[i + 1];
    s.hint_masks[player][i] = s.hint_masks[player][i + 1];
    s.hint_touched[player][i] = s.hint_touched[player][i + 1];
  }
  --h.size;
  s.hint_masks[player][h.size] = 0;
  s.hint_touched[player][h.size] = 0;
}

// Returns the drawn card or kNoCard when the deck is empty.
CardIndex DrawCard(GameState& s, int player) {
  if (s.deck_size == 0) return kNoCard;
  const CardIndex card = s.deck[--s.deck_size];
  Hand& h = s.hands[player];
  h.cards[h.size] = card;
  s.hint_masks[player][h.size] = s.variant.FullMask();
  s.hint_touched[player][h.size] = 0;
  ++h.size;
  return card;
}

void FinishTurn(GameState& s) {
  if (s.final_countdown != kCountdownInactive) {
    --s.final_countdown;
  } else if (s.deck_size == 0) {
    s.final_countdown = s.variant.num_players;
  }
  if (s.life_tokens == 0 || AllStacksComplete(s) || s.final_countdown == 0) {
    s.terminal = true;
  }
  s.current_player = static_cast<uint8_t>((s.current_player + 1) % s.variant.num_players);
  ++s.turn_index;
}

void CheckLegal(const GameState& s, const Action& a) {
  if (s.terminal) throw RuleViolation("game over");
  const int actor = s.current_player;
  switch (a.kind) {
    case ActionKind::kPlay:
      if (a.slot < 0 || a.slot >= s.hands[actor].size) {
        throw RuleViolation("play: slot out of range");
      }
      return;
    case ActionKind::kDiscard:
      if (a.slot < 0 || a.slot >= s.hands[actor].size) {
        throw RuleViolation("discard: slot out of range");
      }
      if (s.hint_tokens >= s.variant.max_hint_tokens) {
        throw RuleViolation("discard: hint tokens already full");
      }
      return;
    case ActionKind::kHintColor:
    case ActionKind::kHintRank: {
      if (s.hint_tokens == 0) throw RuleViolation("hint: no hint tokens");
      if (a.target == actor) throw RuleViolation("hint: cannot hint self");
      if (a.target < 0 || a.target >= s.variant.num_players) {
        throw RuleViolation("hint: bad target");
      }
      const Hand& th = s.hands[a.target];
      bool touches = false;
      for (int i = 0; i < th.size; ++i) {
        const Card c = s.variant.UnpackCard(th.cards[i]);
        if (a.kind == ActionKind::kHintColor ? c.color == a.attr
                                             : c.rank == a.attr) {
          touches = true;
        }
      }
      if (a.attr < 0 ||
          a.attr >= (a.kind == ActionKind::kHintColor ? s.variant.num_colors
                                                      : s.variant.num_ranks)) {
        throw RuleViolation("hint: bad attribute");
      }
      if (!touches) throw RuleViolation("hint: touches no card");
      return;
    }
  }
}

}  // namespace

SlotMask PlayableSet(const Variant& v,
                     const std::array<uint8_t, kMaxColors>& fireworks) {
  SlotMask m = 0;
  for (int c = 0; c < v.num_colors; ++c) {
    if (fireworks[c] < v.num_ranks) {
      m |= SlotMask{1} << (c * v.num_ranks + fireworks[c]);
    }
  }
  return m;
}

SlotMask UselessSet(const Variant& v,
                    const std::array<uint8_t, kMaxColors>& fireworks) {
  SlotMask m = 0;
  for (int c = 0; c < v.num_colors; ++c) {
    for (int r = 0; r < fireworks[c]; ++r) {
      m |= SlotMask{1} << (c * v.num_ranks + r);
    }
  }
  return m;
}

GameState NewGame(const Variant& variant, uint64_t seed) {
  variant.Validate();
  GameState s;
  s.variant = variant;

  int n = 0;
  for (int color = 0; color < variant.num_colors; ++color) {
    for (int rank = 0; rank < variant.num_ranks; ++rank) {
      for (int k = 0; k < variant.rank_counts[rank]; ++k) {
        s.deck[n++] = variant.PackCard(Card{static_cast<uint8_t>(color),
                                            static_cast<uint8_t>(rank)});
      }
    }
  }
  s.deck_size = static_cast<uint8_t>(n);
  Rng deal_rng = Rng(seed).Derive(stream::kDeal);
  Shuffle(s.deck.data(), n, deal_rng);

  for (int p = 0; p < variant.num_players; ++p) {
    for (int i = 0; i < variant.hand_size; ++i) DrawCard(s, p);
  }

  s.hint_tokens = variant.max_hint_tokens;
  s.life_tokens = variant.max_lives;
  if (s.deck_size == 0) s.final_countdown = variant.num_players;
  return s;
}

std::vector<Action> LegalActions(const GameState& state) {
  if (state.terminal) throw RuleViolation("game over");
  std::vector<Action> out;
  const int actor = state.current_player;
  const Hand& h = state.hands[actor];
  out.reserve(2 * h.size + state.variant.num_colors + state.variant.num_ranks);

  for (int i = 0; i < h.size; ++i) out.push_back(Action::Play(i));
  if (state.hint_tokens < state.variant.max_hint_tokens) {
    for (int i = 0; i < h.size; ++i) out.push_back(Action::Discard(i));
  }
  if (state.hint_tokens > 0) {
    for (int t = 0; t < state.variant.num_players; ++t) {
      if (t == actor) continue;
      const Hand& th = state.hands[t];
      uint32_t colors = 0, ranks = 0;
      for (int i = 0; i < th.size; ++i) {
        const Card c = state.variant.UnpackCard(th.cards[i]);
        colors |= 1u << c.color;
        ranks |= 1u << c.rank;
      }
      for (int c = 0; c < state.variant.num_colors; ++c) {
        if (colors & (1u << c)) out.push_back(Action::HintColor(t, c));
      }
      for (int r = 0; r < state.variant.num_ranks; ++r) {
        if (ranks & (1u << r)) out.push_back(Action::HintRank(t, r));
      }
    }
  }
  return out;
}

bool IsLegalAction(const GameState& state, const Action& a) {
  if (state.terminal) return false;
  try {
    CheckLegal(state, a);
  } catch (const RuleViolation&) {
    return false;
  }
  return true;
}

int Apply(GameState& state, const Action& action) {
  CheckLegal(state, action);
  const int actor = state.current_player;
  const int before = Score(state);

  Event ev;
  ev.turn = state.turn_index;
  ev.actor = static_cast<uint8_t>(actor);
  ev.kind = action.kind;

  switch (action.kind) {
    case ActionKind::kPlay: {
      const CardIndex card = state.hands[actor][action.slot];
      const Card c = state.variant.UnpackCard(card);
      ev.a = action.slot;
      ev.revealed = card;
      RemoveSlot(state, actor, action.slot);
      if (state.fireworks[c.color] == c.rank) {
        ++state.fireworks[c.color];
        ev.success = true;
        if (state.fireworks[c.color] == state.variant.num_ranks &&
            state.hint_tokens < state.variant.max_hint_tokens) {
          ++state.hint_tokens;
        }
      } else {
        ++state.discards[card];
        --state.life_tokens;
      }
      ev.drawn = DrawCard(state, actor);
      break;
    }
    case ActionKind::kDiscard: {
      const CardIndex card = state.hands[actor][action.slot];
      ev.a = action.slot;
      ev.revealed = card;
      RemoveSlot(state, actor, action.slot);
      ++state.discards[card];
      ++state.hint_tokens;
      ev.drawn = DrawCard(state, actor);
      break;
    }
    case ActionKind::kHintColor:
    case ActionKind::kHintRank: {
      ev.a = action.target;
      ev.b = action.attr;
      --state.hint_tokens;
      const bool by_color = action.kind == ActionKind::kHintColor;
      const SlotMask attr_mask = by_color
                                     ? state.variant.ColorMask(action.attr)
                                     : state.variant.RankMask(action.attr);
      const Hand& th = state.hands[action.target];
      for (int i = 0; i < th.size; ++i) {
        const Card c = state.variant.UnpackCard(th.cards[i]);
        const bool touched = by_color ? c.color == action.attr : c.rank == action.attr;
        if (touched) {
          state.hint_masks[action.target][i] &= attr_mask;
          state.hint_touched[action.target][i] = 1;
        } else {
          state.hint_masks[action.target][i] &= ~attr_mask;
        }
      }
      break;
    }
  }

  FinishTurn(state);
  if (state.log_events) state.event_log.push_back(ev);
  return Score(state) - before;
}

int Score(const GameState& state) {
  if (state.life_tokens == 0) return 0;
  int sum = 0;
  for (int c = 0; c < state.variant.num_colors; ++c) sum += state.fireworks[c];
  return sum;
}

bool IsTerminal(const GameState& state) { return state.terminal; }

bool CheckCardConservation(const GameState& state) {
  std::array<int, kMaxVocab> counts{};
  for (int i = 0; i < state.deck_size; ++i) ++counts[state.deck[i]];
  for (int p = 0; p < state.variant.num_players; ++p) {
    for (int i = 0; i < state.hands[p].size; ++i) ++counts[state.hands[p][i]];
  }
  for (int v = 0; v < state.variant.Vocab(); ++v) counts[v] += state.discards[v];
  for (int c = 0; c < state.variant.num_colors; ++c) {
    for (int r = 0; r < state.fireworks[c]; ++r) {
      ++counts[state.variant.PackCard(
          Card{static_cast<uint8_t>(c), static_cast<uint8_t>(r)})];
    }
  }
  for (int c = 0; c < state.variant.num_colors; ++c) {
    for (int r = 0; r < state.variant.num_ranks; ++r) {
      const CardIndex v = state.variant.PackCard(
          Card{static_cast<uint8_t>(c), static_cast<uint8_t>(r)});
      if (counts[v] != state.variant.rank_counts[r]) return false;
    }
  }
  return true;
}

GameState ReplayEventLog(const Variant& variant, uint64_t seed,
                         const std::vector<Event>& log) {
  GameState s = NewGame(variant, seed);
  for (const Event& ev : log) {
    if (ev.actor != s.current_player || ev.turn != s.turn_index) {
      throw Error("replay: event out of order");
    }
    Action a;
    switch (ev.kind) {
      case ActionKind::kPlay:
        a = Action::Play(ev.a);
        break;
      case ActionKind::kDiscard:
        a = Action::Discard(ev.a);
        break;
      case ActionKind::kHintColor:
        a = Action::HintColor(ev.a, ev.b);
        break;
      case ActionKind::kHintRank:
        a = Action::HintRank(ev.a, ev.b);
        break;
    }
    if ((ev.kind == ActionKind::kPlay || ev.kind == ActionKind::kDiscard) &&
        s.hands[ev.actor][ev.a] != ev.revealed) {
      throw Error("replay: revealed card mismatch");
    }
    Apply(s, a);
    if (s.log_events && s.event_log.back().drawn != ev.drawn) {
      throw Error("replay: drawn card mismatch");
    }
  }
  return s;
}

}  // namespace hlbs
