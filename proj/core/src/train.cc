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

#include "hlbs/train.h"

#include <cmath>
#include <sstream>

#include "hlbs/error.h"
#include "hlbs/game_state.h"
#include "hlbs/observation.h"

namespace hlbs {

std::vector<TurnSnapshot> BuildSnapshots(const ReplayBuffer& buffer) {
  std::vector<TurnSnapshot> out;
  for (std::size_t i = 0; i < buffer.Size(); ++i) {
    const TrajectoryRecord& rec = buffer.At(i);
    GameState state = NewGame(rec.variant, rec.seed);
    for (std::size_t t = 0; t < rec.events.size(); ++t) {
      const Event& ev = rec.events[t];
      TurnSnapshot snap;
      snap.pub = MakePublicState(state);
      const int actor = state.current_player;
      snap.own.masks = state.hint_masks[actor];
      snap.own.touched = state.hint_touched[actor];
      snap.own.hand_size = state.hands[actor].size;
      snap.hand = rec.acting_hands[t];
      snap.return_to_go = rec.returns_to_go[t];
      snap.game_seed = rec.seed;
      out.push_back(std::move(snap));

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
      Apply(state, a);
    }
    TurnSnapshot terminal;
    terminal.pub = MakePublicState(state);
    terminal.return_to_go = 0.0;
    terminal.game_seed = rec.seed;
    terminal.terminal = true;
    out.push_back(std::move(terminal));
  }
  return out;
}

bool IsHoldoutGame(uint64_t game_seed) { return (game_seed & 1) != 0; }

double BeliefLoss(const LearnedBeliefModel& model, const TurnSnapshot& snap) {
  double loss = 0.0;
  SparseFeatures ctx;
  for (int s = 0; s < snap.hand.size; ++s) {
    EncodeBeliefContextSparse(
        snap.pub, snap.own,
        std::span<const CardIndex>(snap.hand.cards.data(), s), ctx);
    const auto probs = model.Forward(ctx);
    loss -= std::log(probs[snap.hand[s]]);
  }
  return loss;
}

void BeliefLossAndGrad(const LearnedBeliefModel& model, const TurnSnapshot& snap,
                       double* loss, std::vector<double>* grad) {
  const int vocab = model.Vocab();
  const int feat = model.FeatureLength();
  if (grad) grad->assign(model.Params().size(), 0.0);
  double total = 0.0;
  SparseFeatures ctx;
  for (int s = 0; s < snap.hand.size; ++s) {
    EncodeBeliefContextSparse(
        snap.pub, snap.own,
        std::span<const CardIndex>(snap.hand.cards.data(), s), ctx);
    const auto probs = model.Forward(ctx);
    const CardIndex target = snap.hand[s];
    total -= std::log(probs[target]);
    if (!grad) continue;
    for (int c = 0; c < vocab; ++c) {
      const double g = probs[c] - (c == target ? 1.0 : 0.0);
      double* row = grad->data() + static_cast<std::size_t>(c) * feat;
      for (const auto& [j, x] : ctx) row[j] += g * x;
      (*grad)[static_cast<std::size_t>(vocab) * feat + c] += g;
    }
  }
  if (loss) *loss = total;
}

BeliefTrainResult TrainBelief(const ReplayBuffer& buffer,
                              const BeliefTrainConfig& config) {
  if (buffer.Size() == 0) throw Error("train_belief: empty buffer");
  const Variant& variant = buffer.GetVariant();
  const auto snapshots = BuildSnapshots(buffer);

  std::vector<int> train_idx, holdout_idx;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    if (snapshots[i].terminal || snapshots[i].hand.size == 0) continue;
    (IsHoldoutGame(snapshots[i].game_seed) ? holdout_idx : train_idx)
        .push_back(static_cast<int>(i));
  }
  if (train_idx.empty()) throw Error("train_belief: no training turns");

  BeliefTrainResult result{LearnedBeliefModel(variant)};
  LearnedBeliefModel& model = result.model;
  const int vocab = model.Vocab();
  const int feat = model.FeatureLength();

  Rng rng = Rng(config.seed).Derive(stream::kTraining);
  Rng eval_rng = Rng(config.seed).Derive(stream::kTraining, 1);

  // Fixed held-out evaluation subset.
  std::vector<int> eval_idx = holdout_idx;
  if (static_cast<int>(eval_idx.size()) > config.max_eval_samples) {
    Shuffle(eval_idx.data(), static_cast<int>(eval_idx.size()), eval_rng);
    eval_idx.resize(config.max_eval_samples);
  }
  const auto holdout_loss = [&]() {
    if (eval_idx.empty()) return 0.0;
    double total = 0.0;
    long cards = 0;
    for (int i : eval_idx) {
      total += BeliefLoss(model, snapshots[i]);
      cards += snapshots[i].hand.size;
    }
    return total / static_cast<double>(cards);
  };

  SparseFeatures ctx;
  double window_loss = 0.0;
  long window_cards = 0;
  double last_eval = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int step = 0; step < config.steps; ++step) {
    const double scale = config.lr / config.batch;
    for (int b = 0; b < config.batch; ++b) {
      const TurnSnapshot& snap =
          snapshots[train_idx[rng.NextBelow(static_cast<uint32_t>(train_idx.size()))]];
      for (int s = 0; s < snap.hand.size; ++s) {
        EncodeBeliefContextSparse(
            snap.pub, snap.own,
            std::span<const CardIndex>(snap.hand.cards.data(), s), ctx);
        const auto probs = model.Forward(ctx);
        const CardIndex target = snap.hand[s];
        const double sample_loss = -std::log(probs[target]);
        if (!std::isfinite(sample_loss)) {
          throw TrainingDiverged("train_belief: non-finite loss", step);
        }
        window_loss += sample_loss;
        ++window_cards;
        for (int c = 0; c < vocab; ++c) {
          const double g = (probs[c] - (c == target ? 1.0 : 0.0)) * scale;
          if (g == 0.0) continue;
          double* row = model.Params().data() + static_cast<std::size_t>(c) * feat;
          for (const auto& [j, x] : ctx) row[j] -= g * x;
          model.BiasAt(c) -= g;
        }
      }
    }
    result.steps_run = step + 1;
    if ((step + 1) % config.eval_every == 0 || step + 1 == config.steps) {
      result.final_train_loss = window_cards ? window_loss / window_cards : 0.0;
      window_loss = 0.0;
      window_cards = 0;
      const double eval = holdout_loss();
      result.final_holdout_loss = eval;
      if (!std::isfinite(eval)) {
        throw TrainingDiverged("train_belief: non-finite held-out loss", step);
      }
      if (last_eval - eval < config.convergence_delta) {
        if (++stall >= config.convergence_patience) break;
      } else {
        stall = 0;
      }
      last_eval = eval;
    }
  }

  std::ostringstream note;
  note << "steps=" << result.steps_run << " lr=" << config.lr
       << " batch=" << config.batch << " seed=" << config.seed
       << " train_loss=" << result.final_train_loss
       << " holdout_loss=" << result.final_holdout_loss;
  model.training_note = note.str();
  return result;
}

namespace {

// Dense symmetric solve via Cholesky; returns false if the matrix is not
// positive definite.
bool CholeskySolve(std::vector<double>& a, std::vector<double>& b, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = a[i * n + j];
      for (int k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
      if (i == j) {
        if (sum <= 0.0) return false;
        a[i * n + i] = std::sqrt(sum);
      } else {
        a[i * n + j] = sum / a[j * n + j];
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    double sum = b[i];
    for (int k = 0; k < i; ++k) sum -= a[i * n + k] * b[k];
    b[i] = sum / a[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double sum = b[i];
    for (int k = i + 1; k < n; ++k) sum -= a[k * n + i] * b[k];
    b[i] = sum / a[i * n + i];
  }
  return true;
}

}  // namespace

ValueTrainResult TrainValue(const ReplayBuffer& buffer,
                            const ValueTrainConfig& config) {
  if (buffer.Size() == 0) throw Error("train_value: empty buffer");
  const Variant& variant = buffer.GetVariant();
  const auto snapshots = BuildSnapshots(buffer);
  const int feat = PublicLayout(variant).total_length;
  const int n = feat + 1;  // bias

  std::vector<double> xtx(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> xty(n, 0.0);
  SparseFeatures x;
  long n_train = 0;
  for (const TurnSnapshot& snap : snapshots) {
    if (IsHoldoutGame(snap.game_seed)) continue;
    ++n_train;
    EncodePublicSparse(snap.pub, x);
    x.emplace_back(feat, 1.0);  // bias column
    for (const auto& [i, xi] : x) {
      xty[i] += xi * snap.return_to_go;
      for (const auto& [j, xj] : x) {
        if (j <= i) xtx[static_cast<std::size_t>(i) * n + j] += xi * xj;
      }
    }
  }
  if (n_train == 0) throw Error("train_value: no training turns");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      xtx[static_cast<std::size_t>(i) * n + j] = xtx[static_cast<std::size_t>(j) * n + i];
    }
  }

  ValueTrainResult result{LinearValueModel(variant)};
  double lambda = config.ridge;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<double> a = xtx;
    std::vector<double> b = xty;
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] += lambda;
    if (CholeskySolve(a, b, n)) {
      result.model.Weights() = b;
      break;
    }
    lambda *= 1000.0;
    if (attempt == 7) throw Error("train_value: normal equations unsolvable");
  }
  result.ridge_used = lambda;
  result.model.ridge_lambda = lambda;

  double se_train = 0.0, se_holdout = 0.0;
  long m_train = 0, m_holdout = 0;
  for (const TurnSnapshot& snap : snapshots) {
    const double err = result.model.Predict(snap.pub) - snap.return_to_go;
    if (IsHoldoutGame(snap.game_seed)) {
      se_holdout += err * err;
      ++m_holdout;
    } else {
      se_train += err * err;
      ++m_train;
    }
  }
  result.rmse_train = m_train ? std::sqrt(se_train / m_train) : 0.0;
  result.rmse_holdout = m_holdout ? std::sqrt(se_holdout / m_holdout) : 0.0;
  result.model.rmse_train = result.rmse_train;
  result.model.rmse_holdout = result.rmse_holdout;
  return result;
}

}  // namespace hlbs
