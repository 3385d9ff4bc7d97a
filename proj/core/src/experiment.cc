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

#include "hlbs/experiment.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hlbs/error.h"
#include "hlbs/parallel.h"
#include "json.hpp"

namespace hlbs {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::string Fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("short write: " + path);
}

std::string OutBase(const std::string& out_path) {
  const auto dot = out_path.rfind('.');
  const auto slash = out_path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out_path;
  }
  return out_path.substr(0, dot);
}

OrderedJson SpecJson(const ExperimentSpec& spec, const std::string& command) {
  OrderedJson j;
  j["command"] = command;
  j["version"] = kVersionString;
  j["variant"] = OrderedJson::parse(VariantToJson(spec.variant));
  j["blueprint"] = spec.blueprint;
  j["n_games"] = spec.n_games;
  j["base_seed"] = spec.base_seed;
  j["jobs"] = spec.jobs;
  j["rollouts"] = spec.search.num_rollouts;
  j["depth"] = spec.search.depth == kInfiniteDepth
                   ? OrderedJson("inf")
                   : OrderedJson(spec.search.depth);
  j["delta"] = std::isinf(spec.search.delta) ? OrderedJson("inf")
                                             : OrderedJson(spec.search.delta);
  j["ucb"] = spec.search.ucb.enabled;
  return j;
}

struct ConditionRun {
  ResultRow row;
  std::vector<int> scores;
};

// Plays the paired seed list under one condition. Seeds are base_seed + i;
// all conditions of a command share them.
ConditionRun RunCondition(const ExperimentSpec& spec, const Condition& cond,
                          const LearnedBeliefModel* model,
                          const ValueEstimator& value,
                          SearcherSelection searchers) {
  ConditionRun run;
  run.row.condition = cond.label;
  run.scores.assign(spec.n_games, 0);
  std::vector<int> deviations(spec.n_games, 0);
  std::vector<int> moves(spec.n_games, 0);
  std::vector<uint8_t> fell_back(spec.n_games, 0);
  std::vector<double> elapsed(spec.n_games, 0.0);

  SearchConfig config = spec.search;
  config.depth = cond.depth;
  config.mode = cond.mode;

  const auto blueprint = MakeBlueprint(spec.blueprint);
  try {
    ParallelFor(spec.n_games, spec.jobs, [&](int i) {
      const uint64_t seed = spec.base_seed + static_cast<uint64_t>(i);
      const GameWithSearchResult res = PlayGameWithSearch(
          spec.variant, seed, cond.search ? searchers : SearcherSelection::kNone,
          *blueprint, model, value, config);
      run.scores[i] = res.score;
      deviations[i] = res.deviations;
      moves[i] = static_cast<int>(res.reports.size());
      fell_back[i] = res.fallbacks > 0 ? 1 : 0;
      elapsed[i] = res.elapsed_seconds;
    });
  } catch (const BeliefSpaceTooLarge& e) {
    run.row.failed = true;
    run.row.error = e.what();
    run.scores.clear();
    return run;
  }

  std::vector<double> xs(run.scores.begin(), run.scores.end());
  const MeanSem ms = ComputeMeanSem(xs);
  run.row.mean = ms.mean;
  run.row.sem = ms.sem;
  run.row.n = ms.n;
  long total_moves = 0, total_devs = 0, total_fallback_games = 0;
  double total_elapsed = 0.0;
  for (int i = 0; i < spec.n_games; ++i) {
    total_moves += moves[i];
    total_devs += deviations[i];
    total_fallback_games += fell_back[i];
    total_elapsed += elapsed[i];
  }
  run.row.deviation_rate =
      total_moves > 0 ? double(total_devs) / double(total_moves) : 0.0;
  run.row.fallback_rate =
      spec.n_games > 0 ? double(total_fallback_games) / spec.n_games : 0.0;
  run.row.seconds_per_game = spec.n_games > 0 ? total_elapsed / spec.n_games : 0.0;
  return run;
}

std::string RowsCsv(const std::string& schema,
                    const std::vector<ResultRow>& rows, bool timing) {
  std::ostringstream os;
  os << "# hlbs-csv-v1 " << schema << (timing ? "+timing" : "") << "\n";
  os << "condition,mean,sem,n,deviation_rate,fallback_rate";
  if (timing) os << ",seconds_per_game";
  os << "\n";
  for (const ResultRow& r : rows) {
    if (r.failed) {
      os << r.condition << ",,,0,,";
      if (timing) os << ",";
      os << "\n";
      continue;
    }
    os << r.condition << "," << Fmt(r.mean) << "," << Fmt(r.sem) << "," << r.n
       << "," << Fmt(r.deviation_rate) << "," << Fmt(r.fallback_rate);
    if (timing) os << "," << Fmt(r.seconds_per_game);
    os << "\n";
  }
  return os.str();
}

OrderedJson RowJson(const ResultRow& r, bool timing) {
  OrderedJson j;
  j["condition"] = r.condition;
  if (r.failed) {
    j["failed"] = true;
    j["error"] = r.error;
    return j;
  }
  j["mean"] = FormatRoundTrip(r.mean);
  j["sem"] = FormatRoundTrip(r.sem);
  j["n"] = r.n;
  j["deviation_rate"] = FormatRoundTrip(r.deviation_rate);
  j["fallback_rate"] = FormatRoundTrip(r.fallback_rate);
  if (timing) j["seconds_per_game"] = FormatRoundTrip(r.seconds_per_game);
  return j;
}

}  // namespace

double FormatRoundTrip(double x) { return std::stod(Fmt(x)); }

Condition ParseCondition(const std::string& label) {
  Condition c;
  c.label = label;
  if (label == "blueprint") {
    c.search = false;
    return c;
  }
  if (label == "exact") {
    c.search = true;
    c.mode = BeliefMode::kExact;
    c.depth = kInfiniteDepth;
    return c;
  }
  if (label.rfind("lbs-", 0) == 0) {
    c.search = true;
    c.mode = BeliefMode::kLearned;
    const std::string depth = label.substr(4);
    c.depth = depth == "inf" ? kInfiniteDepth : std::stoi(depth);
    if (c.depth != kInfiniteDepth && c.depth < 1) {
      throw Error("bad condition depth: " + label);
    }
    return c;
  }
  throw Error("unknown condition: " + label +
              " (expected blueprint, lbs-<k>, lbs-inf, exact)");
}

EvalOutput CmdEval(const ExperimentSpec& spec) {
  std::optional<LearnedBeliefModel> model;
  bool needs_model = false;
  std::vector<Condition> conditions;
  for (const auto& label : spec.conditions) {
    conditions.push_back(ParseCondition(label));
    needs_model |= conditions.back().search &&
                   conditions.back().mode == BeliefMode::kLearned;
  }
  if (needs_model) {
    if (spec.belief_path.empty()) throw Error("eval: --belief required for lbs conditions");
    model.emplace(LearnedBeliefModel::Load(spec.belief_path));
    model->EnsureCompatible(spec.variant);
  }
  std::optional<LinearValueModel> value_model;
  if (!spec.value_path.empty()) {
    value_model.emplace(LinearValueModel::Load(spec.value_path));
    value_model->EnsureCompatible(spec.variant);
  }
  const ZeroValue zero;
  const ValueEstimator& value =
      value_model ? static_cast<const ValueEstimator&>(*value_model) : zero;

  EvalOutput out;
  for (const Condition& cond : conditions) {
    if (cond.search && cond.depth != kInfiniteDepth && !value_model) {
      throw Error("eval: finite-depth condition '" + cond.label +
                  "' needs --value for the bootstrap");
    }
    ConditionRun run = RunCondition(spec, cond, model ? &*model : nullptr, value,
                                    spec.searcher);
    out.rows.push_back(run.row);
    out.per_game_scores.push_back(std::move(run.scores));
  }

  if (!spec.out_path.empty()) {
    WriteTextFile(spec.out_path, EvalSummaryCsv(spec, out));

    std::ostringstream games;
    games << "# hlbs-csv-v1 eval-games\ngame,seed";
    for (const auto& row : out.rows) games << "," << row.condition;
    games << "\n";
    for (int i = 0; i < spec.n_games; ++i) {
      games << i << "," << (spec.base_seed + static_cast<uint64_t>(i));
      for (std::size_t c = 0; c < out.rows.size(); ++c) {
        games << ",";
        if (!out.rows[c].failed) games << out.per_game_scores[c][i];
      }
      games << "\n";
    }
    WriteTextFile(OutBase(spec.out_path) + ".games.csv", games.str());

    OrderedJson j = SpecJson(spec, "eval");
    j["conditions"] = OrderedJson::array();
    for (const auto& row : out.rows) {
      j["conditions"].push_back(RowJson(row, spec.include_timing));
    }
    WriteTextFile(OutBase(spec.out_path) + ".summary.json", j.dump(2) + "\n");
  }
  return out;
}

std::string EvalSummaryCsv(const ExperimentSpec& spec, const EvalOutput& out) {
  return RowsCsv("eval-summary", out.rows, spec.include_timing);
}

std::vector<ResultRow> EvalRows(const EvalOutput& out) { return out.rows; }

BeliefQualityOutput CmdBeliefQuality(const ExperimentSpec& spec) {
  if (spec.belief_path.empty()) throw Error("belief-quality: --belief required");
  const LearnedBeliefModel model = LearnedBeliefModel::Load(spec.belief_path);
  model.EnsureCompatible(spec.variant);
  const auto blueprint = MakeBlueprint(spec.blueprint);

  struct PerGame {
    std::vector<int> turns;
    std::vector<double> grounded, learned, exact;
    bool exact_ok = true;
  };
  std::vector<PerGame> games(spec.n_games);

  ParallelFor(spec.n_games, spec.jobs, [&](int i) {
    PerGame& g = games[i];
    const uint64_t seed = spec.base_seed + static_cast<uint64_t>(i);
    GameState state = NewGame(spec.variant, seed);
    std::array<std::optional<ExactBeliefTracker>, kMaxPlayers> trackers;
    try {
      for (int p = 0; p < spec.variant.num_players; ++p) {
        trackers[p].emplace(MakeObservation(state, p), *blueprint,
                            TrackerConfig{spec.search.candidate_bound});
      }
    } catch (const BeliefSpaceTooLarge&) {
      g.exact_ok = false;
    }
    PolicyMemory memory;
    while (!IsTerminal(state)) {
      const int actor = state.current_player;
      const Observation obs = MakeObservation(state, actor);
      const Hand& hand = state.hands[actor];
      const std::span<const CardIndex> true_hand(hand.cards.data(), hand.size);

      g.turns.push_back(state.turn_index);
      g.grounded.push_back(
          PerCardCrossEntropy(GroundedMarginals(obs), true_hand, spec.variant)
              .nats_per_card);
      g.learned.push_back(
          model
              .PerCardCrossEntropy(obs.pub, SlotKnowledge::FromPrivate(obs.priv),
                                   true_hand)
              .nats_per_card);
      if (g.exact_ok) {
        g.exact.push_back(PerCardCrossEntropy(trackers[actor]->Distribution(),
                                              true_hand, spec.variant)
                              .nats_per_card);
      }

      const Action a = blueprint->Act(obs, &memory);
      Apply(state, a);
      if (g.exact_ok) {
        try {
          const Event& ev = state.event_log.back();
          for (int p = 0; p < spec.variant.num_players; ++p) {
            trackers[p]->Update(ev, MakeObservation(state, p));
          }
        } catch (const BeliefSpaceTooLarge&) {
          g.exact_ok = false;
        }
      }
    }
  });

  BeliefQualityOutput out;
  for (const PerGame& g : games) out.exact_available &= g.exact_ok;

  std::vector<double> g_sum, l_sum, e_sum;
  std::vector<int> count;
  std::vector<double> g_all, l_all, e_all;
  for (const PerGame& g : games) {
    for (std::size_t t = 0; t < g.turns.size(); ++t) {
      const int turn = g.turns[t];
      if (turn >= static_cast<int>(count.size())) {
        count.resize(turn + 1, 0);
        g_sum.resize(turn + 1, 0.0);
        l_sum.resize(turn + 1, 0.0);
        e_sum.resize(turn + 1, 0.0);
      }
      ++count[turn];
      g_sum[turn] += g.grounded[t];
      l_sum[turn] += g.learned[t];
      if (out.exact_available) e_sum[turn] += g.exact[t];
      g_all.push_back(g.grounded[t]);
      l_all.push_back(g.learned[t]);
      if (out.exact_available) e_all.push_back(g.exact[t]);
    }
  }
  for (int turn = 0; turn < static_cast<int>(count.size()); ++turn) {
    if (count[turn] == 0) continue;
    out.turns.push_back(turn);
    out.n_at_turn.push_back(count[turn]);
    out.grounded.push_back(g_sum[turn] / count[turn]);
    out.learned.push_back(l_sum[turn] / count[turn]);
    out.exact.push_back(out.exact_available ? e_sum[turn] / count[turn] : 0.0);
  }
  out.grounded_overall = ComputeMeanSem(g_all);
  out.learned_overall = ComputeMeanSem(l_all);
  out.exact_overall = ComputeMeanSem(e_all);

  if (!out.exact_available) {
    std::cerr << "warning: exact belief column omitted (candidate bound "
                 "exceeded)\n";
  }

  if (!spec.out_path.empty()) {
    std::ostringstream os;
    os << "# hlbs-csv-v1 belief-quality\nturn,grounded,learned,exact,n_at_turn\n";
    for (std::size_t i = 0; i < out.turns.size(); ++i) {
      os << out.turns[i] << "," << Fmt(out.grounded[i]) << ","
         << Fmt(out.learned[i]) << ",";
      if (out.exact_available) os << Fmt(out.exact[i]);
      os << "," << out.n_at_turn[i] << "\n";
    }
    WriteTextFile(spec.out_path, os.str());

    OrderedJson j = SpecJson(spec, "belief-quality");
    j["exact_available"] = out.exact_available;
    j["grounded_mean"] = FormatRoundTrip(out.grounded_overall.mean);
    j["learned_mean"] = FormatRoundTrip(out.learned_overall.mean);
    if (out.exact_available) {
      j["exact_mean"] = FormatRoundTrip(out.exact_overall.mean);
    }
    WriteTextFile(OutBase(spec.out_path) + ".summary.json", j.dump(2) + "\n");
  }
  return out;
}

std::vector<SweepDepthCell> CmdSweepDepth(const ExperimentSpec& spec) {
  if (spec.belief_path.empty()) throw Error("sweep-depth: --belief required");
  LearnedBeliefModel model = LearnedBeliefModel::Load(spec.belief_path);
  model.EnsureCompatible(spec.variant);
  std::optional<LinearValueModel> value_model;
  if (!spec.value_path.empty()) {
    value_model.emplace(LinearValueModel::Load(spec.value_path));
    value_model->EnsureCompatible(spec.variant);
  }
  if (!value_model) throw Error("sweep-depth: --value required for bootstraps");

  std::vector<SweepDepthCell> cells;
  int depth = 1;
  int rollouts = spec.sweep_rollouts;
  while (depth <= spec.sweep_max_depth && rollouts >= 1) {
    ExperimentSpec cell_spec = spec;
    cell_spec.search.num_rollouts = rollouts;
    Condition cond;
    cond.label = "lbs-" + std::to_string(depth) + "x" + std::to_string(rollouts);
    cond.search = true;
    cond.mode = BeliefMode::kLearned;
    cond.depth = depth;
    ConditionRun run =
        RunCondition(cell_spec, cond, &model, *value_model, spec.searcher);
    cells.push_back({depth, rollouts, run.row});
    depth *= 2;
    rollouts /= 2;
  }

  if (!spec.out_path.empty()) {
    std::ostringstream os;
    os << "# hlbs-csv-v1 sweep-depth"
       << (spec.include_timing ? "+timing" : "") << "\n";
    os << "depth,rollouts,mean,sem,n,deviation_rate,fallback_rate";
    if (spec.include_timing) os << ",seconds_per_game";
    os << "\n";
    for (const auto& c : cells) {
      os << c.depth << "," << c.rollouts << "," << Fmt(c.row.mean) << ","
         << Fmt(c.row.sem) << "," << c.row.n << "," << Fmt(c.row.deviation_rate)
         << "," << Fmt(c.row.fallback_rate);
      if (spec.include_timing) os << "," << Fmt(c.row.seconds_per_game);
      os << "\n";
    }
    WriteTextFile(spec.out_path, os.str());
    OrderedJson j = SpecJson(spec, "sweep-depth");
    j["cells"] = OrderedJson::array();
    for (const auto& c : cells) {
      OrderedJson cj = RowJson(c.row, spec.include_timing);
      cj["depth"] = c.depth;
      cj["rollouts"] = c.rollouts;
      j["cells"].push_back(cj);
    }
    WriteTextFile(OutBase(spec.out_path) + ".summary.json", j.dump(2) + "\n");
  }
  return cells;
}

std::vector<SweepBudgetRow> CmdSweepBudget(const ExperimentSpec& spec) {
  const auto blueprint = MakeBlueprint(spec.blueprint);
  std::vector<SweepBudgetRow> rows;
  const ZeroValue zero;

  for (std::size_t k = 0; k < spec.budget_splits.size(); ++k) {
    const double f = spec.budget_splits[k];
    SweepBudgetRow row;
    row.belief_steps = static_cast<int>(std::lround(f * spec.budget));
    // Five budget units buy one self-play game.
    row.data_games = std::max(
        1, static_cast<int>(std::lround((1.0 - f) * spec.budget / 5.0)));
    row.split_label =
        std::to_string(row.data_games) + "|" + std::to_string(row.belief_steps);

    const uint64_t data_seed = Rng(spec.base_seed).Derive(stream::kTraining, k).NextU64();
    const ReplayBuffer buffer = GenerateSelfplay(*blueprint, spec.variant,
                                                 row.data_games, data_seed,
                                                 spec.jobs);
    BeliefTrainConfig cfg = spec.belief_config;
    cfg.steps = row.belief_steps;
    cfg.seed = data_seed;
    BeliefTrainResult trained = TrainBelief(buffer, cfg);

    Condition bp_cond = ParseCondition("blueprint");
    Condition lbs_cond = ParseCondition("lbs-inf");
    ConditionRun bp_run =
        RunCondition(spec, bp_cond, nullptr, zero, spec.searcher);
    ConditionRun lbs_run =
        RunCondition(spec, lbs_cond, &trained.model, zero, spec.searcher);
    row.blueprint = bp_run.row;
    row.lbs = lbs_run.row;
    rows.push_back(std::move(row));
  }

  if (!spec.out_path.empty()) {
    std::ostringstream os;
    os << "# hlbs-csv-v1 sweep-budget\n";
    os << "split,data_games,belief_steps,blueprint_mean,blueprint_sem,lbs_mean,"
          "lbs_sem,n,lbs_fallback_rate\n";
    for (const auto& r : rows) {
      os << r.split_label << "," << r.data_games << "," << r.belief_steps << ","
         << Fmt(r.blueprint.mean) << "," << Fmt(r.blueprint.sem) << ","
         << Fmt(r.lbs.mean) << "," << Fmt(r.lbs.sem) << "," << r.lbs.n << ","
         << Fmt(r.lbs.fallback_rate) << "\n";
    }
    WriteTextFile(spec.out_path, os.str());
    OrderedJson j = SpecJson(spec, "sweep-budget");
    j["budget"] = spec.budget;
    j["rows"] = OrderedJson::array();
    for (const auto& r : rows) {
      OrderedJson rj;
      rj["split"] = r.split_label;
      rj["blueprint"] = RowJson(r.blueprint, spec.include_timing);
      rj["lbs"] = RowJson(r.lbs, spec.include_timing);
      j["rows"].push_back(rj);
    }
    WriteTextFile(OutBase(spec.out_path) + ".summary.json", j.dump(2) + "\n");
  }
  return rows;
}

DegradationOutput CmdDegradation(const ExperimentSpec& spec) {
  if (spec.belief_path.empty()) throw Error("degradation: --belief required");
  LearnedBeliefModel model = LearnedBeliefModel::Load(spec.belief_path);
  model.EnsureCompatible(spec.variant);
  std::optional<LinearValueModel> value_model;
  if (!spec.value_path.empty()) {
    value_model.emplace(LinearValueModel::Load(spec.value_path));
    value_model->EnsureCompatible(spec.variant);
  }
  const ZeroValue zero;
  const ValueEstimator& value =
      value_model ? static_cast<const ValueEstimator&>(*value_model) : zero;
  if (spec.search.depth != kInfiniteDepth && !value_model) {
    throw Error("degradation: finite depth needs --value");
  }

  Condition cond;
  cond.search = true;
  cond.mode = BeliefMode::kLearned;
  cond.depth = spec.search.depth;

  DegradationOutput out;
  cond.label = "lbs-single";
  out.single =
      RunCondition(spec, cond, &model, value, SearcherSelection::kPlayerZero).row;
  cond.label = "lbs-both";
  out.both = RunCondition(spec, cond, &model, value, SearcherSelection::kBoth).row;
  out.direction_ok = out.both.mean <= out.single.mean;

  if (!spec.out_path.empty()) {
    std::vector<ResultRow> rows = {out.single, out.both};
    WriteTextFile(spec.out_path,
                  RowsCsv("degradation", rows, spec.include_timing));
    OrderedJson j = SpecJson(spec, "degradation");
    j["single"] = RowJson(out.single, spec.include_timing);
    j["both"] = RowJson(out.both, spec.include_timing);
    j["direction_both_le_single"] = out.direction_ok;
    WriteTextFile(OutBase(spec.out_path) + ".summary.json", j.dump(2) + "\n");
  }
  return out;
}

TrainOutput CmdTrain(const ExperimentSpec& spec) {
  if (spec.out_path.empty()) throw Error("train: --out required");
  const auto blueprint = MakeBlueprint(spec.blueprint);
  const ReplayBuffer buffer = GenerateSelfplay(
      *blueprint, spec.variant, spec.train_games, spec.base_seed, spec.jobs);

  TrainOutput out;
  out.model_path = spec.out_path;
  if (spec.train_what == "belief") {
    BeliefTrainResult res = TrainBelief(buffer, spec.belief_config);
    res.model.Save(spec.out_path);
    out.metric_train = res.final_train_loss;
    out.metric_holdout = res.final_holdout_loss;
    out.steps_run = res.steps_run;
  } else if (spec.train_what == "value") {
    ValueTrainResult res = TrainValue(buffer, spec.value_config);
    res.model.Save(spec.out_path);
    out.metric_train = res.rmse_train;
    out.metric_holdout = res.rmse_holdout;
  } else {
    throw Error("train: --what must be belief or value");
  }

  OrderedJson j = SpecJson(spec, "train");
  j["what"] = spec.train_what;
  j["train_games"] = spec.train_games;
  j["metric_train"] = FormatRoundTrip(out.metric_train);
  j["metric_holdout"] = FormatRoundTrip(out.metric_holdout);
  j["steps_run"] = out.steps_run;
  WriteTextFile(OutBase(spec.out_path) + ".summary.json", j.dump(2) + "\n");
  return out;
}

}  // namespace hlbs
