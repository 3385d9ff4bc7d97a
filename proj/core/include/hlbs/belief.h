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

#ifndef HLBS_BELIEF_H_
#define HLBS_BELIEF_H_

#include <span>
#include <vector>

#include "hlbs/observation.h"
#include "hlbs/types.h"
#include "hlbs/variant.h"

namespace hlbs {

// Copies of each identity not visible to the observer: full deck minus the
// partner's hand, the discard pile, and cards played onto the stacks. The
// total always equals deck size plus the observer's own hand size.
struct CardCountPool {
  std::array<int16_t, kMaxVocab> counts{};
  int total = 0;

  static CardCountPool FromObservation(const Observation& obs);

  int operator[](int identity) const { return counts[identity]; }
};

// A belief over the observer's own hand, in one of two shapes: per-slot
// marginals, or a weighted set of complete hands.
struct WeightedHand {
  Hand hand;
  double weight = 0.0;
};

struct HandDistribution {
  enum class Form { kMarginal, kWeightedHands };
  Form form = Form::kMarginal;
  int hand_size = 0;

  // kMarginal: marginals[slot][identity], each slot summing to 1.
  std::vector<std::array<double, kMaxVocab>> marginals;

  // kWeightedHands: normalized weights over complete hands.
  std::vector<WeightedHand> hands;

  // Per-slot marginals in either form.
  std::vector<std::array<double, kMaxVocab>> ToMarginals(const Variant& v) const;
};

// Belief from counting and hint masks only: P(slot = c) proportional to
// pool[c] * mask[slot][c]. Throws InconsistentObservation when a slot has no
// support, which cannot happen for observations of reachable states.
HandDistribution GroundedMarginals(const CardCountPool& pool,
                                   std::span<const SlotMask> masks,
                                   int hand_size, const Variant& v);
HandDistribution GroundedMarginals(const Observation& obs);

struct CrossEntropyResult {
  double nats_per_card = 0.0;
  bool zero_mass = false;  // true hand had zero probability somewhere
};

// Mean negative log probability of the true cards under per-slot marginals.
// Returns +infinity with zero_mass set when some true card has no mass;
// grounded and exact beliefs must never trigger that.
CrossEntropyResult PerCardCrossEntropy(const HandDistribution& belief,
                                       std::span<const CardIndex> true_hand,
                                       const Variant& v);

// True when a complete hand respects both the hint masks and the card
// counts of the pool. This is the acceptance predicate for belief sampling.
bool HandConsistent(const Variant& v, const CardCountPool& pool,
                    std::span<const SlotMask> masks,
                    std::span<const CardIndex> hand);

}  // namespace hlbs

#endif  // HLBS_BELIEF_H_
