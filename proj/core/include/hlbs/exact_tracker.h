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

#ifndef HLBS_EXACT_TRACKER_H_
#define HLBS_EXACT_TRACKER_H_

#include <cstdint>
#include <vector>

#include "hlbs/belief.h"
#include "hlbs/blueprint.h"
#include "hlbs/observation.h"
#include "hlbs/rng.h"

namespace hlbs {

struct TrackerConfig {
  // Maximum number of ordered hand assignments the tracker may hold. The
  // default admits the 5-card game (about 8.9M assignments at the deal) and
  // is exceeded immediately by larger hands, surfacing the memory wall of
  // exact belief maintenance as an error instead of an allocation death.
  std::size_t max_candidates = 12'000'000;
};

// Exact counterfactual belief over the observer's own hand: every ordered
// assignment of identities to the observer's slots that is consistent with
// hint masks, card counting, and—crucially—with every action the partner's
// known policy has taken. Candidate weights are the card-counting
// multiplicities; with a deterministic blueprint, policy filtering is 0/1.
//
// Single-owner mutable; copy the tracker to fork it for parallel use.
class ExactBeliefTracker {
 public:
  // Builds the candidate set for the observation's masks and pool. The
  // blueprint must be Markov; a recurrent blueprint would require one
  // policy-memory copy per candidate, which this tracker does not store.
  ExactBeliefTracker(const Observation& obs, const BlueprintPolicy& partner_bp,
                     TrackerConfig config = {});

  // Feed every applied event in order together with the observer's view
  // after it. Partner actions are policy-filtered; own reveals project and
  // extend the candidate set; hints tighten masks.
  void Update(const Event& event, const Observation& obs_after);

  // Normalized weighted-hand distribution under the current pool.
  HandDistribution Distribution() const;

  // Draws n hands i.i.d. from the candidate weights.
  std::vector<Hand> SampleHands(int n, Rng& rng) const;

  std::size_t CandidateCount() const { return candidates_.size(); }
  int HandSize() const { return hand_size_; }
  const Observation& CurrentObservation() const { return obs_; }

  // True if the given hand is in the candidate set (tests with ground truth).
  bool Contains(const Hand& hand) const;

 private:
  void FilterByPartnerAction(const Event& event);
  void FilterByMasks();
  void FilterByFeasibility();
  void ProjectRevealedSlot(int slot, CardIndex revealed);
  void ExtendForDraw();
  void ComputeWeights(std::vector<double>& out) const;
  void ThrowIfEmpty() const;

  Observation obs_;
  const BlueprintPolicy* partner_bp_;
  TrackerConfig config_;
  CardCountPool pool_;
  int hand_size_ = 0;
  std::vector<uint64_t> candidates_;  // 8 bits per slot, slot 0 lowest byte
  // Likelihood weights for a stochastic blueprint would be stored here; a
  // deterministic blueprint keeps this empty (meaning all ones).
  std::vector<float> likelihoods_;
};

}  // namespace hlbs

#endif  // HLBS_EXACT_TRACKER_H_
