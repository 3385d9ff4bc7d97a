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

#ifndef HLBS_TESTS_TEST_UTIL_H_
#define HLBS_TESTS_TEST_UTIL_H_

#include <cstdlib>
#include <functional>
#include <string>

#include "hlbs/blueprint.h"
#include "hlbs/game_state.h"
#include "hlbs/observation.h"
#include "hlbs/rng.h"

namespace hlbs::testutil {

// Applies uniformly random legal actions until the game ends, invoking
// on_step after every apply.
inline GameState RandomPlayout(
    const Variant& v, uint64_t seed,
    const std::function<void(const GameState&)>& on_step = nullptr) {
  GameState s = NewGame(v, seed);
  Rng rng = Rng(seed).Derive(99);
  while (!IsTerminal(s)) {
    const auto actions = LegalActions(s);
    Apply(s, actions[rng.NextBelow(static_cast<uint32_t>(actions.size()))]);
    if (on_step) on_step(s);
  }
  return s;
}

// Blueprint self-play to the end, with an optional per-turn hook called
// before each move.
inline GameState SelfPlay(
    const Variant& v, uint64_t seed, const BlueprintPolicy& bp,
    const std::function<void(const GameState&)>& before_move = nullptr) {
  GameState s = NewGame(v, seed);
  PolicyMemory memory;
  while (!IsTerminal(s)) {
    if (before_move) before_move(s);
    Apply(s, bp.Act(MakeObservation(s, s.current_player), &memory));
  }
  return s;
}

inline Variant Mini() { return VariantPreset("mini"); }
inline Variant Default() { return VariantPreset("default"); }

inline std::string DataDir() {
  const char* dir = std::getenv("HLBS_DATA_DIR");
  return dir ? dir : "tests/data";
}

}  // namespace hlbs::testutil

#endif  // HLBS_TESTS_TEST_UTIL_H_
