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

#include "hlbs/belief.h"

#include <cmath>
#include <limits>

#include "hlbs/error.h"

namespace hlbs {

CardCountPool CardCountPool::FromObservation(const Observation& obs) {
  const Variant& v = obs.pub.variant;
  CardCountPool pool;
  for (int c = 0; c < v.num_colors; ++c) {
    for (int r = 0; r < v.num_ranks; ++r) {
      const int idx = c * v.num_ranks + r;
      int n = v.rank_counts[r];
      n -= obs.pub.discards[idx];
      if (r < obs.pub.fireworks[c]) --n;
      pool.counts[idx] = static_cast<int16_t>(n);
    }
  }
  for (int i = 0; i < obs.priv.partner_hand.size; ++i) {
    --pool.counts[obs.priv.partner_hand[i]];
  }
  pool.total = 0;
  for (int idx = 0; idx < v.Vocab(); ++idx) pool.total += pool.counts[idx];
  return pool;
}

std::vector<std::array<double, kMaxVocab>> HandDistribution::ToMarginals(
    const Variant& v) const {
  if (form == Form::kMarginal) return marginals;
  std::vector<std::array<double, kMaxVocab>> out(
      hand_size, std::array<double, kMaxVocab>{});
  double total = 0.0;
  for (const WeightedHand& wh : hands) total += wh.weight;
  if (total <= 0.0) return out;
  for (const WeightedHand& wh : hands) {
    for (int s = 0; s < hand_size; ++s) {
      out[s][wh.hand[s]] += wh.weight / total;
    }
  }
  return out;
}

HandDistribution GroundedMarginals(const CardCountPool& pool,
                                   std::span<const SlotMask> masks,
                                   int hand_size, const Variant& v) {
  HandDistribution d;
  d.form = HandDistribution::Form::kMarginal;
  d.hand_size = hand_size;
  d.marginals.resize(hand_size);
  for (int s = 0; s < hand_size; ++s) {
    double total = 0.0;
    auto& m = d.marginals[s];
    m.fill(0.0);
    for (int idx = 0; idx < v.Vocab(); ++idx) {
      if ((masks[s] & (SlotMask{1} << idx)) && pool[idx] > 0) {
        m[idx] = static_cast<double>(pool[idx]);
        total += m[idx];
      }
    }
    if (total <= 0.0) {
      throw InconsistentObservation("grounded belief: slot has no support");
    }
    for (int idx = 0; idx < v.Vocab(); ++idx) m[idx] /= total;
  }
  return d;
}

HandDistribution GroundedMarginals(const Observation& obs) {
  return GroundedMarginals(CardCountPool::FromObservation(obs),
                           std::span<const SlotMask>(obs.priv.own_masks.data(),
                                                     obs.priv.own_hand_size),
                           obs.priv.own_hand_size, obs.pub.variant);
}

CrossEntropyResult PerCardCrossEntropy(const HandDistribution& belief,
                                       std::span<const CardIndex> true_hand,
                                       const Variant& v) {
  const auto marginals = belief.ToMarginals(v);
  CrossEntropyResult res;
  const int n = static_cast<int>(true_hand.size());
  if (n == 0) return res;
  double sum = 0.0;
  for (int s = 0; s < n; ++s) {
    const double p = marginals[s][true_hand[s]];
    if (p <= 0.0) {
      res.zero_mass = true;
      res.nats_per_card = std::numeric_limits<double>::infinity();
      return res;
    }
    sum -= std::log(p);
  }
  res.nats_per_card = sum / n;
  return res;
}

bool HandConsistent(const Variant& v, const CardCountPool& pool,
                    std::span<const SlotMask> masks,
                    std::span<const CardIndex> hand) {
  std::array<int, kMaxVocab> used{};
  for (size_t s = 0; s < hand.size(); ++s) {
    const CardIndex c = hand[s];
    if (c >= v.Vocab()) return false;
    if (!(masks[s] & (SlotMask{1} << c))) return false;
    if (++used[c] > pool[c]) return false;
  }
  return true;
}

}  // namespace hlbs
