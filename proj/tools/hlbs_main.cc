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

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hlbs/error.h"
#include "hlbs/experiment.h"

namespace {

using hlbs::ExperimentSpec;

void AddCommonOptions(CLI::App* cmd, ExperimentSpec& spec,
                      std::string& variant_arg, std::string& depth_arg,
                      std::string& delta_arg, std::string& searcher_arg,
                      bool& no_ucb) {
  cmd->add_option("--variant", variant_arg,
                  "Variant preset name or JSON file (default, six-card, "
                  "seven-card, mini)");
  cmd->add_option("--blueprint", spec.blueprint, "Blueprint policy name");
  cmd->add_option("--belief", spec.belief_path, "Belief model file");
  cmd->add_option("--value", spec.value_path, "Value model file");
  cmd->add_option("--games", spec.n_games, "Number of games");
  cmd->add_option("--seed", spec.base_seed, "Base seed");
  cmd->add_option("--rollouts", spec.search.num_rollouts, "Rollouts per move");
  cmd->add_option("--depth", depth_arg, "Rollout depth (integer or 'inf')");
  cmd->add_option("--delta", delta_arg, "Deviation threshold (or 'inf')");
  cmd->add_option("--mode", spec.search.mode, "Belief mode")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, hlbs::BeliefMode>{
              {"learned", hlbs::BeliefMode::kLearned},
              {"exact", hlbs::BeliefMode::kExact}},
          CLI::ignore_case));
  cmd->add_option("--searcher", searcher_arg, "Searching player: 0|1|both|none");
  cmd->add_option("--jobs", spec.jobs, "Worker threads");
  cmd->add_option("--out", spec.out_path, "Output CSV path");
  cmd->add_flag("--timing", spec.include_timing,
                "Add wall-clock columns (makes output files run-dependent)");
  cmd->add_flag("--no-ucb", no_ucb, "Disable UCB pruning");
  cmd->add_option("--ucb-c", spec.search.ucb.exploration, "UCB bound width");
  cmd->add_option("--candidate-bound", spec.search.candidate_bound,
                  "Exact-belief candidate limit");
}

void FinishSpec(ExperimentSpec& spec, const std::string& variant_arg,
                const std::string& depth_arg, const std::string& delta_arg,
                const std::string& searcher_arg, bool no_ucb) {
  if (!variant_arg.empty()) spec.variant = hlbs::LoadVariantFile(variant_arg);
  if (!depth_arg.empty()) {
    spec.search.depth =
        depth_arg == "inf" ? hlbs::kInfiniteDepth : std::stoi(depth_arg);
  }
  if (!delta_arg.empty()) {
    spec.search.delta =
        delta_arg == "inf" ? hlbs::kInfiniteDelta : std::stod(delta_arg);
  }
  if (searcher_arg == "0" || searcher_arg.empty()) {
    spec.searcher = hlbs::SearcherSelection::kPlayerZero;
  } else if (searcher_arg == "1") {
    spec.searcher = hlbs::SearcherSelection::kPlayerOne;
  } else if (searcher_arg == "both") {
    spec.searcher = hlbs::SearcherSelection::kBoth;
  } else if (searcher_arg == "none") {
    spec.searcher = hlbs::SearcherSelection::kNone;
  } else {
    throw hlbs::Error("bad --searcher: " + searcher_arg);
  }
  if (no_ucb) spec.search.ucb.enabled = false;
}

void PrintRow(const hlbs::ResultRow& r) {
  if (r.failed) {
    std::printf("  %-14s FAILED: %s\n", r.condition.c_str(), r.error.c_str());
    return;
  }
  std::printf("  %-14s %7.3f +- %5.3f  (n=%d, dev=%.3f, fb=%.3f, %.2fs/game)\n",
              r.condition.c_str(), r.mean, r.sem, r.n, r.deviation_rate,
              r.fallback_rate, r.seconds_per_game);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief-based search for Hanabi: blueprint evaluation, belief "
               "training, and search experiments"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  spec.variant = hlbs::VariantPreset("default");
  std::string variant_arg, depth_arg, delta_arg, searcher_arg;
  bool no_ucb = false;

  auto* eval = app.add_subcommand("eval", "Paired-seed evaluation over conditions");
  std::string conditions_arg;
  eval->add_option("--conditions", conditions_arg,
                   "Comma list: blueprint,lbs-<k>,lbs-inf,exact");
  AddCommonOptions(eval, spec, variant_arg, depth_arg, delta_arg, searcher_arg,
                   no_ucb);

  auto* train = app.add_subcommand("train", "Generate self-play data and train a model");
  train->add_option("--what", spec.train_what, "belief or value");
  train->add_option("--steps", spec.belief_config.steps, "SGD steps");
  train->add_option("--lr", spec.belief_config.lr, "Learning rate");
  train->add_option("--batch", spec.belief_config.batch, "Batch size");
  std::string buffer_out;
  train->add_option("--buffer-out", buffer_out,
                    "Also write the replay buffer (text format)");
  AddCommonOptions(train, spec, variant_arg, depth_arg, delta_arg, searcher_arg,
                   no_ucb);

  auto* quality = app.add_subcommand(
      "belief-quality", "Per-turn cross entropy of grounded/learned/exact beliefs");
  AddCommonOptions(quality, spec, variant_arg, depth_arg, delta_arg,
                   searcher_arg, no_ucb);

  auto* sweep_depth = app.add_subcommand(
      "sweep-depth", "Fixed-budget grid: double depth, halve rollouts");
  sweep_depth->add_option("--start-rollouts", spec.sweep_rollouts,
                          "Rollouts at depth 1");
  sweep_depth->add_option("--max-depth", spec.sweep_max_depth, "Largest depth");
  AddCommonOptions(sweep_depth, spec, variant_arg, depth_arg, delta_arg,
                   searcher_arg, no_ucb);

  auto* sweep_budget = app.add_subcommand(
      "sweep-budget", "Split a fixed budget between data volume and training steps");
  sweep_budget->add_option("--budget", spec.budget, "Total budget units");
  AddCommonOptions(sweep_budget, spec, variant_arg, depth_arg, delta_arg,
                   searcher_arg, no_ucb);

  auto* degradation = app.add_subcommand(
      "degradation", "Single-searcher vs both-players learned search");
  AddCommonOptions(degradation, spec, variant_arg, depth_arg, delta_arg,
                   searcher_arg, no_ucb);

  auto* layout = app.add_subcommand(
      "layout", "Print the feature layout document for a variant");
  layout->add_option("--variant", variant_arg, "Variant preset or file");
  layout->add_option("--out", spec.out_path, "Write to file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    FinishSpec(spec, variant_arg, depth_arg, delta_arg, searcher_arg, no_ucb);

    if (eval->parsed()) {
      if (!conditions_arg.empty()) {
        spec.conditions.clear();
        std::string cur;
        for (char ch : conditions_arg + ",") {
          if (ch == ',') {
            if (!cur.empty()) spec.conditions.push_back(cur);
            cur.clear();
          } else {
            cur.push_back(ch);
          }
        }
      }
      const auto out = hlbs::CmdEval(spec);
      std::printf("eval (%d games, seed %llu):\n", spec.n_games,
                  static_cast<unsigned long long>(spec.base_seed));
      for (const auto& row : out.rows) PrintRow(row);
    } else if (train->parsed()) {
      spec.train_games = spec.n_games;
      spec.belief_config.seed = spec.base_seed;
      spec.value_config.seed = spec.base_seed;
      const auto out = hlbs::CmdTrain(spec);
      std::printf("trained %s -> %s\n", spec.train_what.c_str(),
                  out.model_path.c_str());
      std::printf("  train metric   %.4f\n", out.metric_train);
      std::printf("  holdout metric %.4f\n", out.metric_holdout);
      if (spec.train_what == "belief") {
        std::printf("  steps run      %d\n", out.steps_run);
      }
      if (!buffer_out.empty()) {
        const auto blueprint = hlbs::MakeBlueprint(spec.blueprint);
        hlbs::SaveBufferText(
            hlbs::GenerateSelfplay(*blueprint, spec.variant, spec.train_games,
                                   spec.base_seed, spec.jobs),
            buffer_out);
        std::printf("  buffer -> %s\n", buffer_out.c_str());
      }
    } else if (quality->parsed()) {
      const auto out = hlbs::CmdBeliefQuality(spec);
      std::printf("belief quality over %d games (nats/card, lower is better):\n",
                  spec.n_games);
      std::printf("  grounded %.4f\n  learned  %.4f\n", out.grounded_overall.mean,
                  out.learned_overall.mean);
      if (out.exact_available) {
        std::printf("  exact    %.4f\n", out.exact_overall.mean);
      } else {
        std::printf("  exact    (omitted: candidate bound exceeded)\n");
      }
    } else if (sweep_depth->parsed()) {
      const auto cells = hlbs::CmdSweepDepth(spec);
      std::printf("depth sweep (depth x rollouts constant):\n");
      for (const auto& c : cells) PrintRow(c.row);
    } else if (sweep_budget->parsed()) {
      const auto rows = hlbs::CmdSweepBudget(spec);
      std::printf("budget sweep (data games | belief steps):\n");
      for (const auto& r : rows) {
        std::printf("  %-12s blueprint %.3f  lbs %.3f (fb=%.3f)\n",
                    r.split_label.c_str(), r.blueprint.mean, r.lbs.mean,
                    r.lbs.fallback_rate);
      }
    } else if (degradation->parsed()) {
      const auto out = hlbs::CmdDegradation(spec);
      PrintRow(out.single);
      PrintRow(out.both);
      std::printf("  direction (both <= single): %s\n",
                  out.direction_ok ? "pass" : "fail");
    } else if (layout->parsed()) {
      const std::string text = hlbs::LayoutText(spec.variant);
      if (spec.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
      } else {
        std::ofstream out(spec.out_path, std::ios::binary);
        out << text;
      }
      std::fprintf(stderr, "layout hash: %llx\n",
                   static_cast<unsigned long long>(hlbs::LayoutHash(spec.variant)));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
