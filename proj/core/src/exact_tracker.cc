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

#include "hlbs/exact_tracker.h"

#include <algorithm>

#include "hlbs/error.h"

namespace hlbs {

namespace {

inline CardIndex SlotOf(uint64_t packed, int slot) {
  return static_cast<CardIndex>((packed >> (8 * slot)) & 0xFF);
}

inline uint64_t WithSlot(uint64_t packed, int slot, CardIndex c) {
  const int sh = 8 * slot;
  return (packed & ~(uint64_t{0xFF} << sh)) | (uint64_t{c} << sh);
}

inline Hand Unpack(uint64_t packed, int hand_size) {
  Hand h;
  h.size = static_cast<uint8_t>(hand_size);
  for (int i = 0; i < hand_size; ++i) h.cards[i] = SlotOf(packed, i);
  return h;
}

}  // namespace

ExactBeliefTracker::ExactBeliefTracker(const Observation& obs,
                                       const BlueprintPolicy& partner_bp,
                                       TrackerConfig config)
    : obs_(obs), partner_bp_(&partner_bp), config_(config) {
  if (!partner_bp.IsMarkov()) {
    throw Error(
        "exact tracker: recurrent blueprints would need per-candidate policy "
        "memory, which is not supported");
  }
  pool_ = CardCountPool::FromObservation(obs_);
  hand_size_ = obs_.priv.own_hand_size;

  const Variant& v = obs_.pub.variant;
  const int V = v.Vocab();
  std::array<int, kMaxVocab> used{};
  uint64_t packed = 0;
  // Depth-first enumeration of mask- and counting-consistent assignments.
  // Aborts by throwing as soon as the configured bound is crossed, before
  // the set is fully materialized.
  struct Frame {
    int slot;
    int next_identity;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.slot == hand_size_) {
      if (candidates_.size() >= config_.max_candidates) {
        throw BeliefSpaceTooLarge("belief-space too large", obs_.pub.turn_index);
      }
      candidates_.push_back(packed);
      stack.pop_back();
      if (!stack.empty()) {
        const int s = stack.back().slot;
        --used[SlotOf(packed, s)];
      }
      continue;
    }
    bool descended = false;
    while (f.next_identity < V) {
      const int c = f.next_identity++;
      if (!(obs_.priv.own_masks[f.slot] & (SlotMask{1} << c))) continue;
      if (used[c] >= pool_[c]) continue;
      ++used[c];
      packed = WithSlot(packed, f.slot, static_cast<CardIndex>(c));
      stack.push_back({f.slot + 1, 0});
      descended = true;
      break;
    }
    if (!descended) {
      stack.pop_back();
      if (!stack.empty()) {
        const int s = stack.back().slot;
        --used[SlotOf(packed, s)];
      }
    }
  }
  ThrowIfEmpty();
}

void ExactBeliefTracker::ThrowIfEmpty() const {
  if (candidates_.empty()) {
    throw BeliefFilteredEmpty("belief filtered to empty", obs_.pub.turn_index);
  }
}

void ExactBeliefTracker::FilterByPartnerAction(const Event& event) {
  const int me = obs_.priv.observer;
  const int partner = 1 - me;
  Action observed;
  switch (event.kind) {
    case ActionKind::kPlay:
      observed = Action::Play(event.a);
      break;
    case ActionKind::kDiscard:
      observed = Action::Discard(event.a);
      break;
    case ActionKind::kHintColor:
      observed = Action::HintColor(event.a, event.b);
      break;
    case ActionKind::kHintRank:
      observed = Action::HintRank(event.a, event.b);
      break;
  }

  // One reusable observation; only the partner's view of our hand varies
  // across candidates.
  Observation partner_obs;
  partner_obs.pub = obs_.pub;
  partner_obs.priv.observer = static_cast<uint8_t>(partner);
  partner_obs.priv.own_masks = obs_.pub.hint_masks[partner];
  partner_obs.priv.own_touched = obs_.pub.hint_touched[partner];
  partner_obs.priv.own_hand_size = obs_.pub.hand_sizes[partner];
  partner_obs.priv.partner_hand.size = static_cast<uint8_t>(hand_size_);

  PolicyMemory memory;  // empty; blueprint is Markov
  auto keep = [&](uint64_t packed) {
    for (int i = 0; i < hand_size_; ++i) {
      partner_obs.priv.partner_hand.cards[i] = SlotOf(packed, i);
    }
    return PolicyConsistent(*partner_bp_, partner_obs, &memory, observed);
  };
  candidates_.erase(
      std::remove_if(candidates_.begin(), candidates_.end(),
                     [&](uint64_t p) { return !keep(p); }),
      candidates_.end());
}

void ExactBeliefTracker::FilterByMasks() {
  candidates_.erase(
      std::remove_if(candidates_.begin(), candidates_.end(),
                     [&](uint64_t p) {
                       for (int i = 0; i < hand_size_; ++i) {
                         if (!(obs_.priv.own_masks[i] &
                               (SlotMask{1} << SlotOf(p, i)))) {
                           return true;
                         }
                       }
                       return false;
                     }),
      candidates_.end());
}

void ExactBeliefTracker::FilterByFeasibility() {
  candidates_.erase(
      std::remove_if(candidates_.begin(), candidates_.end(),
                     [&](uint64_t p) {
                       std::array<int, kMaxVocab> used{};
                       for (int i = 0; i < hand_size_; ++i) {
                         const CardIndex c = SlotOf(p, i);
                         if (++used[c] > pool_[c]) return true;
                       }
                       return false;
                     }),
      candidates_.end());
}

void ExactBeliefTracker::ProjectRevealedSlot(int slot, CardIndex revealed) {
  std::size_t n = 0;
  for (uint64_t p : candidates_) {
    if (SlotOf(p, slot) != revealed) continue;
    // Shift the higher slots down by one byte.
    const uint64_t low_mask = (uint64_t{1} << (8 * slot)) - 1;
    const uint64_t low = p & low_mask;
    const uint64_t high = (p >> (8 * (slot + 1))) << (8 * slot);
    candidates_[n++] = low | high;
  }
  candidates_.resize(n);
  --hand_size_;
  if (hand_size_ == 0 && n > 1) {
    // All survivors project to the same empty assignment.
    candidates_.resize(1);
  }
}

void ExactBeliefTracker::ExtendForDraw() {
  const Variant& v = obs_.pub.variant;
  const int V = v.Vocab();
  std::vector<uint64_t> extended;
  extended.reserve(candidates_.size());
  for (uint64_t p : candidates_) {
    std::array<int, kMaxVocab> used{};
    for (int i = 0; i < hand_size_; ++i) ++used[SlotOf(p, i)];
    for (int c = 0; c < V; ++c) {
      if (used[c] >= pool_[c]) continue;
      if (extended.size() >= config_.max_candidates) {
        throw BeliefSpaceTooLarge("belief-space too large", obs_.pub.turn_index);
      }
      extended.push_back(WithSlot(p, hand_size_, static_cast<CardIndex>(c)));
    }
  }
  candidates_ = std::move(extended);
  ++hand_size_;
}

void ExactBeliefTracker::Update(const Event& event, const Observation& obs_after) {
  const int me = obs_.priv.observer;
  const bool own_action = event.actor == me;

  if (!own_action) {
    FilterByPartnerAction(event);
  }

  if (own_action && (event.kind == ActionKind::kPlay ||
                     event.kind == ActionKind::kDiscard)) {
    ProjectRevealedSlot(event.a, event.revealed);
  }

  // Adopt the post-event view; the pool reflects every newly visible card
  // (our reveal, the partner's draw).
  obs_ = obs_after;
  pool_ = CardCountPool::FromObservation(obs_);

  if (own_action && (event.kind == ActionKind::kPlay ||
                     event.kind == ActionKind::kDiscard) &&
      obs_.priv.own_hand_size > hand_size_) {
    ExtendForDraw();
  }

  FilterByMasks();
  FilterByFeasibility();
  if (hand_size_ == 0 && candidates_.empty()) candidates_.push_back(0);
  ThrowIfEmpty();
}

void ExactBeliefTracker::ComputeWeights(std::vector<double>& out) const {
  out.resize(candidates_.size());
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    const uint64_t p = candidates_[i];
    std::array<int, kMaxVocab> used{};
    double w = 1.0;
    for (int s = 0; s < hand_size_; ++s) {
      const CardIndex c = SlotOf(p, s);
      w *= static_cast<double>(pool_[c] - used[c]);
      ++used[c];
    }
    if (!likelihoods_.empty()) w *= likelihoods_[i];
    out[i] = w;
  }
}

HandDistribution ExactBeliefTracker::Distribution() const {
  HandDistribution d;
  d.form = HandDistribution::Form::kWeightedHands;
  d.hand_size = hand_size_;
  std::vector<double> weights;
  ComputeWeights(weights);
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) {
    throw BeliefFilteredEmpty("belief filtered to empty", obs_.pub.turn_index);
  }
  d.hands.reserve(candidates_.size());
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    d.hands.push_back({Unpack(candidates_[i], hand_size_), weights[i] / total});
  }
  return d;
}

std::vector<Hand> ExactBeliefTracker::SampleHands(int n, Rng& rng) const {
  std::vector<double> cdf;
  ComputeWeights(cdf);
  double total = 0.0;
  for (double& w : cdf) {
    total += w;
    w = total;
  }
  if (total <= 0.0) {
    throw BeliefFilteredEmpty("belief filtered to empty", obs_.pub.turn_index);
  }
  std::vector<Hand> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = rng.NextDouble() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    const std::size_t idx =
        std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
    out.push_back(Unpack(candidates_[idx], hand_size_));
  }
  return out;
}

bool ExactBeliefTracker::Contains(const Hand& hand) const {
  uint64_t packed = 0;
  for (int i = 0; i < hand.size; ++i) packed = WithSlot(packed, i, hand.cards[i]);
  for (uint64_t p : candidates_) {
    if (p == packed) return true;
  }
  return false;
}

}  // namespace hlbs
