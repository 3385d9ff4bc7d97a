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

#include "hlbs/search.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include "hlbs/error.h"
#include "hlbs/observation.h"

namespace hlbs {

namespace {

int64_t NowMicros() {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Shared lazy hand stream. Index i always maps to the same hand no matter
// how many hands end up being consumed, so allocation decisions downstream
// cannot perturb the draw sequence.
class HandProvider {
 public:
  virtual ~HandProvider() = default;
  // Returns nullptr once sampling has fallen back.
  virtual const Hand* Get(int index) = 0;
};

class LearnedHandProvider : public HandProvider {
 public:
  LearnedHandProvider(const LearnedBeliefModel& model, const Observation& obs,
                      const SampleConfig& config, Rng rng)
      : model_(model), obs_(obs), config_(config), rng_(rng) {}

  const Hand* Get(int index) override {
    if (failed_) return nullptr;
    while (index >= static_cast<int>(cache_.size())) {
      SampleResult chunk = SampleHands(model_, obs_, kChunk, config_, rng_);
      if (chunk.fallback) {
        failed_ = true;
        return nullptr;
      }
      cache_.insert(cache_.end(), chunk.hands.begin(), chunk.hands.end());
    }
    return &cache_[index];
  }

 private:
  static constexpr int kChunk = 256;
  const LearnedBeliefModel& model_;
  const Observation& obs_;
  SampleConfig config_;
  Rng rng_;
  std::vector<Hand> cache_;
  bool failed_ = false;
};

class ExactHandProvider : public HandProvider {
 public:
  ExactHandProvider(const ExactBeliefTracker& tracker, int n, Rng rng) {
    cache_ = tracker.SampleHands(n, rng);
  }
  const Hand* Get(int index) override {
    return index < static_cast<int>(cache_.size()) ? &cache_[index] : nullptr;
  }

 private:
  std::vector<Hand> cache_;
};

}  // namespace

GameState ImputeState(const GameState& state, int searcher, const Hand& sampled,
                      Rng& rng) {
  GameState out = state;
  out.log_events = false;
  out.event_log.clear();

  // Unseen pool: current deck plus the searcher's displaced hand.
  std::array<int, kMaxVocab> pool{};
  for (int i = 0; i < out.deck_size; ++i) ++pool[out.deck[i]];
  const Hand& old_hand = state.hands[searcher];
  for (int i = 0; i < old_hand.size; ++i) ++pool[old_hand[i]];
  for (int i = 0; i < sampled.size; ++i) {
    if (--pool[sampled[i]] < 0) {
      throw Error("impute: sampled hand exceeds the unseen pool");
    }
  }

  Hand& hand = out.hands[searcher];
  hand = sampled;

  int n = 0;
  for (int v = 0; v < state.variant.Vocab(); ++v) {
    for (int k = 0; k < pool[v]; ++k) out.deck[n++] = static_cast<CardIndex>(v);
  }
  out.deck_size = static_cast<uint8_t>(n);
  Shuffle(out.deck.data(), n, rng);
  return out;
}

double RolloutReturn(const GameState& imputed, const Action& first_action,
                     int depth, const BlueprintPolicy& blueprint,
                     const ValueEstimator& value, Rng& rng) {
  GameState s = imputed;
  s.log_events = false;
  const int searcher = s.current_player;
  double total = Apply(s, first_action);
  int searcher_turns = 1;
  PolicyMemory memories[kMaxPlayers];
  while (!IsTerminal(s)) {
    const int cur = s.current_player;
    if (cur == searcher && depth != kInfiniteDepth && searcher_turns >= depth) {
      return total + value.Estimate(s, rng);
    }
    const Action a = blueprint.Act(MakeObservation(s, cur), &memories[cur]);
    total += Apply(s, a);
    if (cur == searcher) ++searcher_turns;
  }
  return total;
}

void UcbUpdate(std::vector<ActionEstimate>& estimates, double exploration,
               int min_samples, int blueprint_index) {
  const int required = min_samples < 2 ? 2 : min_samples;
  double best_lcb = -std::numeric_limits<double>::infinity();
  for (auto& e : estimates) {
    if (e.eliminated) continue;
    if (e.count >= 2) {
      const double half = exploration * std::sqrt(e.Variance() / e.count);
      e.ucb = e.mean + half;
      e.lcb = e.mean - half;
    } else {
      e.ucb = std::numeric_limits<double>::infinity();
      e.lcb = -std::numeric_limits<double>::infinity();
    }
    if (e.lcb > best_lcb) best_lcb = e.lcb;
  }
  int survivors = 0;
  for (const auto& e : estimates) {
    if (!e.eliminated) ++survivors;
  }
  for (int i = 0; i < static_cast<int>(estimates.size()); ++i) {
    ActionEstimate& e = estimates[i];
    if (e.eliminated || i == blueprint_index) continue;
    if (e.count < required) continue;
    if (survivors <= 1) break;
    if (e.ucb < best_lcb) {
      e.eliminated = true;
      --survivors;
    }
  }
}

std::string MoveReportToLine(const MoveReport& r) {
  std::ostringstream os;
  os << r.turn << "," << ActionToString(r.chosen) << ","
     << ActionToString(r.blueprint_action) << ",";
  char buf[64];
  for (std::size_t i = 0; i < r.estimates.size(); ++i) {
    if (i) os << ";";
    const auto& e = r.estimates[i];
    std::snprintf(buf, sizeof(buf), "%.6f", e.mean);
    os << ActionToString(e.action) << "=" << buf << "/" << e.count;
  }
  os << "," << (r.deviated ? 1 : 0) << "," << (r.fallback ? 1 : 0) << ","
     << r.elapsed_us;
  return os.str();
}

std::pair<Action, MoveReport> Decide(const GameState& state, int searcher,
                                     const BeliefSource& belief,
                                     const BlueprintPolicy& blueprint,
                                     const ValueEstimator& value,
                                     const SearchConfig& config, const Rng& rng) {
  const int64_t t0 = NowMicros();
  const Observation obs = MakeObservation(state, searcher);
  PolicyMemory bp_memory;
  const Action bp_action = blueprint.Act(obs, &bp_memory);

  MoveReport report;
  report.turn = state.turn_index;
  report.blueprint_action = bp_action;

  const std::vector<Action> actions = LegalActions(state);
  const int n_actions = static_cast<int>(actions.size());
  int bp_index = -1;
  report.estimates.resize(n_actions);
  for (int i = 0; i < n_actions; ++i) {
    report.estimates[i].action = actions[i];
    if (actions[i] == bp_action) bp_index = i;
  }

  std::unique_ptr<HandProvider> provider;
  const Rng hand_rng = rng.Derive(stream::kHands);
  if (config.mode == BeliefMode::kLearned) {
    if (belief.model == nullptr) throw Error("decide: no belief model");
    belief.model->EnsureCompatible(state.variant);
    SampleConfig sample_config{config.max_attempts_multiplier};
    provider = std::make_unique<LearnedHandProvider>(*belief.model, obs,
                                                     sample_config, hand_rng);
  } else {
    if (belief.tracker == nullptr) throw Error("decide: no belief tracker");
    report.tracker_candidates = belief.tracker->CandidateCount();
    Rng exact_rng = hand_rng;
    provider = std::make_unique<ExactHandProvider>(*belief.tracker,
                                                   config.num_rollouts, exact_rng);
  }

  auto run_one = [&](int action_index) -> bool {
    ActionEstimate& est = report.estimates[action_index];
    const int j = est.count;  // per-action sample index; hands shared across actions
    const Hand* hand = provider->Get(j);
    if (hand == nullptr) return false;
    Rng rollout_rng = rng.Derive(stream::kRollout, action_index, j);
    const GameState imputed = ImputeState(state, searcher, *hand, rollout_rng);
    est.AddSample(RolloutReturn(imputed, actions[action_index], config.depth,
                                blueprint, value, rollout_rng));
    return true;
  };

  bool fell_back = false;
  if (config.ucb.enabled) {
    int used = 0;
    while (used < config.num_rollouts && !fell_back) {
      bool progressed = false;
      for (int i = 0; i < n_actions && used < config.num_rollouts; ++i) {
        if (report.estimates[i].eliminated) continue;
        if (!run_one(i)) {
          fell_back = true;
          break;
        }
        ++used;
        progressed = true;
      }
      if (!progressed) break;
      UcbUpdate(report.estimates, config.ucb.exploration, config.ucb.min_samples,
                bp_index);
    }
  } else {
    const int base = config.num_rollouts / n_actions;
    const int remainder = config.num_rollouts % n_actions;
    for (int i = 0; i < n_actions && !fell_back; ++i) {
      const int target = base + (i < remainder ? 1 : 0);
      for (int j = 0; j < target; ++j) {
        if (!run_one(i)) {
          fell_back = true;
          break;
        }
      }
    }
  }

  Action chosen = bp_action;
  if (fell_back) {
    report.fallback = true;
  } else {
    int best = -1;
    for (int i = 0; i < n_actions; ++i) {
      const ActionEstimate& e = report.estimates[i];
      if (e.eliminated || e.count == 0) continue;
      if (best < 0 || e.mean > report.estimates[best].mean) best = i;
    }
    if (best >= 0 && bp_index >= 0 && report.estimates[bp_index].count > 0 &&
        report.estimates[best].mean >
            report.estimates[bp_index].mean + config.delta) {
      chosen = actions[best];
      report.deviated = true;
    }
  }
  report.chosen = chosen;
  report.elapsed_us = NowMicros() - t0;
  return {chosen, report};
}

GameWithSearchResult PlayGameWithSearch(
    const Variant& variant, uint64_t seed, SearcherSelection searchers,
    const BlueprintPolicy& blueprint, const LearnedBeliefModel* belief_model,
    const ValueEstimator& value, const SearchConfig& config) {
  const auto searches = [&](int player) {
    switch (searchers) {
      case SearcherSelection::kNone:
        return false;
      case SearcherSelection::kPlayerZero:
        return player == 0;
      case SearcherSelection::kPlayerOne:
        return player == 1;
      case SearcherSelection::kBoth:
        return true;
    }
    return false;
  };
  if (config.mode == BeliefMode::kExact && searchers == SearcherSelection::kBoth) {
    throw Error(
        "exact-belief search assumes the partner plays the blueprint; "
        "both-player search is learned-mode only");
  }
  if (config.mode == BeliefMode::kLearned &&
      searchers != SearcherSelection::kNone && belief_model == nullptr) {
    throw Error("play_game_with_search: learned mode needs a belief model");
  }

  const int64_t t0 = NowMicros();
  GameState state = NewGame(variant, seed);
  const Rng root(seed);

  std::array<std::optional<ExactBeliefTracker>, kMaxPlayers> trackers;
  if (config.mode == BeliefMode::kExact) {
    TrackerConfig tracker_config{config.candidate_bound};
    for (int p = 0; p < variant.num_players; ++p) {
      if (searches(p)) {
        trackers[p].emplace(MakeObservation(state, p), blueprint, tracker_config);
      }
    }
  }

  GameWithSearchResult result;
  PolicyMemory bp_memory;
  while (!IsTerminal(state)) {
    const int cur = state.current_player;
    Action action;
    if (searches(cur)) {
      BeliefSource source;
      source.model = belief_model;
      if (trackers[cur].has_value()) source.tracker = &*trackers[cur];
      auto [a, rep] =
          Decide(state, cur, source, blueprint, value, config,
                 root.Derive(stream::kMove, state.turn_index, cur));
      action = a;
      result.deviations += rep.deviated ? 1 : 0;
      result.fallbacks += rep.fallback ? 1 : 0;
      result.reports.push_back(std::move(rep));
    } else {
      action = blueprint.Act(MakeObservation(state, cur), &bp_memory);
    }
    Apply(state, action);
    const Event& ev = state.event_log.back();
    for (int p = 0; p < variant.num_players; ++p) {
      if (trackers[p].has_value()) {
        trackers[p]->Update(ev, MakeObservation(state, p));
      }
    }
  }
  result.score = Score(state);
  result.elapsed_seconds = static_cast<double>(NowMicros() - t0) / 1e6;
  return result;
}

}  // namespace hlbs
