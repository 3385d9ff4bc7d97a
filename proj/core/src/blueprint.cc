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

#include "hlbs/blueprint.h"

#include "hlbs/error.h"
#include "hlbs/game_state.h"

namespace hlbs {

namespace {

// Priority cascade shared by both rule bots. The strong bot uses rules
// 1-5, the weak bot rules 1 and 4 (plus the forced-hint rule 5, which is
// the only legal recourse at full tokens).
//
//  1. play the highest slot whose hint mask proves playability;
//  2. hint the partner's newest playable card, choosing the attribute that
//     touches fewer cards (rank on ties);
//  3. discard the lowest slot whose mask proves uselessness;
//  4. discard the lowest never-hinted slot, else slot 0;
//  5. if discarding is illegal, give the rank hint touching most cards.
//
// Playability proofs use the bare hint mask, not card counting; a card whose
// identity is pinned down only by counting is invisible to the cascade.
// Search exploits exactly that gap.
class RuleBlueprint : public BlueprintPolicy {
 public:
  explicit RuleBlueprint(bool weak) : weak_(weak) {}

  Action Act(const Observation& obs, PolicyMemory* /*memory*/) const override {
    const Variant& v = obs.pub.variant;
    const PublicState& pub = obs.pub;
    const PrivateObs& priv = obs.priv;
    const int me = priv.observer;
    const int partner = 1 - me;
    const SlotMask playable = PlayableSet(v, pub.fireworks);
    const SlotMask useless = UselessSet(v, pub.fireworks);
    const bool can_discard = pub.hint_tokens < v.max_hint_tokens;
    const bool can_hint = pub.hint_tokens > 0;

    // Rule 1: provable play, highest slot first.
    for (int s = priv.own_hand_size - 1; s >= 0; --s) {
      const SlotMask m = priv.own_masks[s];
      if (m != 0 && (m & ~playable) == 0) return Action::Play(s);
    }

    if (!weak_ && can_hint) {
      // Rule 2: hint the partner's newest playable card.
      for (int s = priv.partner_hand.size - 1; s >= 0; --s) {
        const Card c = v.UnpackCard(priv.partner_hand[s]);
        if (pub.fireworks[c.color] != c.rank) continue;
        int color_touches = 0, rank_touches = 0;
        for (int i = 0; i < priv.partner_hand.size; ++i) {
          const Card o = v.UnpackCard(priv.partner_hand[i]);
          if (o.color == c.color) ++color_touches;
          if (o.rank == c.rank) ++rank_touches;
        }
        return rank_touches <= color_touches ? Action::HintRank(partner, c.rank)
                                             : Action::HintColor(partner, c.color);
      }
    }

    if (!weak_ && can_discard) {
      // Rule 3: provably useless discard, lowest slot first.
      for (int s = 0; s < priv.own_hand_size; ++s) {
        const SlotMask m = priv.own_masks[s];
        if (m != 0 && (m & ~useless) == 0) return Action::Discard(s);
      }
    }

    if (can_discard && priv.own_hand_size > 0) {
      // Rule 4: lowest never-hinted slot, else the oldest card.
      for (int s = 0; s < priv.own_hand_size; ++s) {
        if (!priv.own_touched[s]) return Action::Discard(s);
      }
      return Action::Discard(0);
    }

    if (can_hint && priv.partner_hand.size > 0) {
      // Rule 5: forced hint at full tokens; rank hint touching most cards.
      int best_rank = 0, best_touches = -1;
      for (int r = 0; r < v.num_ranks; ++r) {
        int touches = 0;
        for (int i = 0; i < priv.partner_hand.size; ++i) {
          if (v.RankOf(priv.partner_hand[i]) == r) ++touches;
        }
        if (touches > best_touches) {
          best_touches = touches;
          best_rank = r;
        }
      }
      if (best_touches > 0) return Action::HintRank(partner, best_rank);
    }

    // Unreachable in supported variants; kept total for safety.
    if (priv.own_hand_size > 0) return Action::Play(0);
    throw Error("blueprint: no action available");
  }

  std::string_view Name() const override {
    return weak_ ? "rule-weak-v1" : "rule-v1";
  }

 private:
  bool weak_;
};

}  // namespace

std::unique_ptr<BlueprintPolicy> MakeBlueprint(std::string_view name) {
  if (name == "rule-v1") return std::make_unique<RuleBlueprint>(false);
  if (name == "rule-weak-v1") return std::make_unique<RuleBlueprint>(true);
  throw Error("unknown blueprint: " + std::string(name));
}

std::vector<std::string> KnownBlueprints() {
  return {"rule-v1", "rule-weak-v1"};
}

bool PolicyConsistent(const BlueprintPolicy& blueprint, const Observation& obs,
                      PolicyMemory* memory, const Action& observed) {
  return blueprint.Act(obs, memory) == observed;
}

}  // namespace hlbs
