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

#ifndef HLBS_EXPERIMENT_H_
#define HLBS_EXPERIMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "hlbs/search.h"
#include "hlbs/stats.h"
#include "hlbs/train.h"

namespace hlbs {

inline constexpr const char* kVersionString = "hlbs-1.0.0 enc-v1";

// One evaluation condition: the blueprint alone, learned-belief search at a
// depth, or exact-belief search (always full rollouts).
struct Condition {
  std::string label;
  bool search = false;
  BeliefMode mode = BeliefMode::kLearned;
  int depth = kInfiniteDepth;
};
// Parses "blueprint", "lbs-<k>", "lbs-inf", "exact".
Condition ParseCondition(const std::string& label);

struct ExperimentSpec {
  Variant variant;
  std::string blueprint = "rule-v1";
  std::string belief_path;
  std::string value_path;
  SearchConfig search;
  int n_games = 200;
  uint64_t base_seed = 1;
  std::string out_path;
  int jobs = 1;
  bool include_timing = false;  // timing columns make files non-reproducible

  // eval
  std::vector<std::string> conditions = {"blueprint", "lbs-inf", "exact"};
  // sweep-depth
  int sweep_rollouts = 256;
  int sweep_max_depth = 16;
  // sweep-budget
  int budget = 4000;
  std::vector<double> budget_splits = {0.0, 0.25, 0.5, 0.75, 1.0};
  // degradation / eval searcher
  SearcherSelection searcher = SearcherSelection::kPlayerZero;
  // train
  std::string train_what = "belief";
  int train_games = 2000;
  BeliefTrainConfig belief_config;
  ValueTrainConfig value_config;
};

struct ResultRow {
  std::string condition;
  double mean = 0.0;
  double sem = 0.0;
  int n = 0;
  double seconds_per_game = 0.0;
  double deviation_rate = 0.0;  // deviations per searcher move
  double fallback_rate = 0.0;   // games with at least one fallback
  bool failed = false;          // condition could not run (belief space)
  std::string error;
};

struct EvalOutput {
  std::vector<ResultRow> rows;
  std::vector<std::vector<int>> per_game_scores;  // [condition][game]
};

// Paired-seed evaluation over the requested conditions. Writes <out>,
// <out base>.games.csv and <out base>.summary.json.
EvalOutput CmdEval(const ExperimentSpec& spec);

struct BeliefQualityOutput {
  std::vector<int> turns;
  std::vector<double> grounded;  // per-turn mean nats/card
  std::vector<double> learned;
  std::vector<double> exact;
  std::vector<int> n_at_turn;
  bool exact_available = true;
  MeanSem grounded_overall;  // over all (game, turn) samples
  MeanSem learned_overall;
  MeanSem exact_overall;
};

// Per-turn cross entropy of grounded/learned/exact beliefs over blueprint
// self-play, measured for the acting player before each move.
BeliefQualityOutput CmdBeliefQuality(const ExperimentSpec& spec);

struct SweepDepthCell {
  int depth = 0;
  int rollouts = 0;
  ResultRow row;
};
// Fixed-budget grid: depth doubles while rollouts halve, so depth * rollouts
// is constant across cells.
std::vector<SweepDepthCell> CmdSweepDepth(const ExperimentSpec& spec);

struct SweepBudgetRow {
  std::string split_label;  // "games|steps"
  int data_games = 0;
  int belief_steps = 0;
  ResultRow blueprint;
  ResultRow lbs;
};
// Splits a fixed budget between self-play data volume and belief training
// steps, then evaluates LBS-inf against the (fixed) blueprint.
std::vector<SweepBudgetRow> CmdSweepBudget(const ExperimentSpec& spec);

struct DegradationOutput {
  ResultRow single;
  ResultRow both;
  bool direction_ok = false;  // both <= single, logged but not gating
};
// Single-searcher vs both-players learned-belief search on paired seeds.
DegradationOutput CmdDegradation(const ExperimentSpec& spec);

struct TrainOutput {
  std::string model_path;
  double metric_train = 0.0;    // nats/card or rmse
  double metric_holdout = 0.0;
  int steps_run = 0;
};
// Generates self-play data and trains the requested model, saving it to
// spec.out_path.
TrainOutput CmdTrain(const ExperimentSpec& spec);

// Helpers shared with tests.
std::vector<ResultRow> EvalRows(const EvalOutput& out);
std::string EvalSummaryCsv(const ExperimentSpec& spec, const EvalOutput& out);
double FormatRoundTrip(double x);  // value as printed with %.6f

}  // namespace hlbs

#endif  // HLBS_EXPERIMENT_H_
