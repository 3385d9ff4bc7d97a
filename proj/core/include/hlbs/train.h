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

#ifndef HLBS_TRAIN_H_
#define HLBS_TRAIN_H_

#include <vector>

#include "hlbs/belief_model.h"
#include "hlbs/replay.h"
#include "hlbs/value.h"

namespace hlbs {

// One decision point of a recorded game: the public state and the acting
// player's slot knowledge before the move, the ground-truth hand being
// predicted, and the return-to-go regression target. Terminal snapshots
// (hand empty, return 0) are included for value fitting only.
struct TurnSnapshot {
  PublicState pub;
  SlotKnowledge own;
  Hand hand;
  double return_to_go = 0.0;
  uint64_t game_seed = 0;
  bool terminal = false;
};

// Replays each record once and materializes its decision points.
std::vector<TurnSnapshot> BuildSnapshots(const ReplayBuffer& buffer);

// Games are split train/held-out by seed parity so that turns from one game
// never straddle the split.
bool IsHoldoutGame(uint64_t game_seed);

struct BeliefTrainConfig {
  double lr = 0.2;
  int steps = 20000;
  int batch = 16;
  uint64_t seed = 1;
  // Held-out loss is evaluated every eval_every steps; training stops early
  // once the improvement stays below convergence_delta nats/card for
  // convergence_patience consecutive evaluations.
  int eval_every = 2000;
  double convergence_delta = 1e-3;
  int convergence_patience = 5;
  int max_eval_samples = 4000;
};

struct BeliefTrainResult {
  LearnedBeliefModel model;
  double final_train_loss = 0.0;    // nats/card, running over the last window
  double final_holdout_loss = 0.0;  // nats/card
  int steps_run = 0;
};

// Minimizes the auto-regressive negative log likelihood of ground-truth
// hands by SGD over uniformly sampled (game, turn) pairs from the training
// split. Deterministic given (buffer, config.seed). Throws TrainingDiverged
// with the offending step when the loss stops being finite.
BeliefTrainResult TrainBelief(const ReplayBuffer& buffer,
                              const BeliefTrainConfig& config);

// Gradient of the summed per-hand loss at one snapshot; same order as the
// model parameter vector. Exposed for the finite-difference check.
void BeliefLossAndGrad(const LearnedBeliefModel& model, const TurnSnapshot& snap,
                       double* loss, std::vector<double>* grad);
double BeliefLoss(const LearnedBeliefModel& model, const TurnSnapshot& snap);

struct ValueTrainConfig {
  // The public one-hot blocks are collinear, so the closed-form fit is
  // always ridge-regularized; the lambda escalates if the solve still fails.
  double ridge = 1e-6;
  uint64_t seed = 1;
};

struct ValueTrainResult {
  LinearValueModel model;
  double rmse_train = 0.0;
  double rmse_holdout = 0.0;
  double ridge_used = 0.0;
};

// Closed-form ridge regression of return-to-go on public features.
ValueTrainResult TrainValue(const ReplayBuffer& buffer,
                            const ValueTrainConfig& config);

}  // namespace hlbs

#endif  // HLBS_TRAIN_H_
