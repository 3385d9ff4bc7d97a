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

#ifndef HLBS_SEARCH_H_
#define HLBS_SEARCH_H_

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hlbs/belief_model.h"
#include "hlbs/blueprint.h"
#include "hlbs/exact_tracker.h"
#include "hlbs/game_state.h"
#include "hlbs/value.h"

namespace hlbs {

inline constexpr int kInfiniteDepth = -1;
inline constexpr double kInfiniteDelta = std::numeric_limits<double>::infinity();

enum class BeliefMode { kLearned, kExact };

struct UcbConfig {
  bool enabled = true;
  double exploration = 3.0;  // bound width multiplier c
  int min_samples = 8;       // samples per action before any elimination
};

struct SearchConfig {
  int num_rollouts = 10000;
  int depth = 16;  // searcher turns per rollout; kInfiniteDepth plays out
  double delta = 0.05;
  UcbConfig ucb;
  int max_attempts_multiplier = 100;
  BeliefMode mode = BeliefMode::kLearned;
  std::size_t candidate_bound = TrackerConfig{}.max_candidates;
};

struct ActionEstimate {
  Action action;
  int count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // Welford sum of squared deviations
  double ucb = std::numeric_limits<double>::infinity();
  double lcb = -std::numeric_limits<double>::infinity();
  bool eliminated = false;

  double Variance() const { return count > 1 ? m2 / (count - 1) : 0.0; }
  void AddSample(double x) {
    ++count;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
};

// Recomputes confidence bounds and applies the elimination rule: an action
// dies when its upper bound falls below the best lower bound. Actions with
// fewer than min_samples (never fewer than 2) samples, the blueprint action,
// and the last survivor are immune.
void UcbUpdate(std::vector<ActionEstimate>& estimates, double exploration,
               int min_samples, int blueprint_index);

// Replaces the searcher's hand with a sampled hand and reshuffles the unseen
// pool (deck plus displaced identities) consistently with card counting.
// Masks and the partner's hand are untouched. The result satisfies card
// conservation by construction.
GameState ImputeState(const GameState& state, int searcher, const Hand& sampled,
                      Rng& rng);

// Plays first_action, then everyone follows the blueprint until the searcher
// has taken `depth` turns in total (partner replies included) or the game
// ends. Returns the reward sum plus, at a non-terminal horizon, the value
// estimate; terminal states never bootstrap.
double RolloutReturn(const GameState& imputed, const Action& first_action,
                     int depth, const BlueprintPolicy& blueprint,
                     const ValueEstimator& value, Rng& rng);

struct MoveReport {
  int turn = 0;
  Action chosen;
  Action blueprint_action;
  std::vector<ActionEstimate> estimates;
  bool deviated = false;
  bool fallback = false;
  std::size_t tracker_candidates = 0;
  int64_t elapsed_us = 0;
};

// Per-move report line: turn, chosen, blueprint action, per-action
// mean/count, flags, elapsed microseconds.
std::string MoveReportToLine(const MoveReport& report);

struct BeliefSource {
  const LearnedBeliefModel* model = nullptr;      // kLearned
  const ExactBeliefTracker* tracker = nullptr;    // kExact
};

// One search decision. Draws hands from the belief, spreads the rollout
// budget over legal actions (round-robin over survivors under UCB, equal
// split otherwise), and deviates from the blueprint action only when the
// best mean exceeds it by more than delta. Hands are shared across actions
// by per-action sample index, so the delta comparison cancels the common
// hand-draw variance. On sampling fallback the blueprint action is returned.
// Deterministic given (state, models, config, rng seed).
std::pair<Action, MoveReport> Decide(const GameState& state, int searcher,
                                     const BeliefSource& belief,
                                     const BlueprintPolicy& blueprint,
                                     const ValueEstimator& value,
                                     const SearchConfig& config, const Rng& rng);

enum class SearcherSelection { kNone, kPlayerZero, kPlayerOne, kBoth };

struct GameWithSearchResult {
  int score = 0;
  std::vector<MoveReport> reports;  // searcher moves only
  int deviations = 0;
  int fallbacks = 0;
  double elapsed_seconds = 0.0;
};

// Full game where the selected player(s) decide by search and the rest play
// the blueprint. Exact mode threads a tracker through every event; the
// tracker's errors (belief-space too large, filtered to empty) propagate.
// Both-player search is supported for learned beliefs only: exact filtering
// assumes the partner follows the blueprint, which both-player search
// violates by construction.
GameWithSearchResult PlayGameWithSearch(
    const Variant& variant, uint64_t seed, SearcherSelection searchers,
    const BlueprintPolicy& blueprint, const LearnedBeliefModel* belief_model,
    const ValueEstimator& value, const SearchConfig& config);

}  // namespace hlbs

#endif  // HLBS_SEARCH_H_
