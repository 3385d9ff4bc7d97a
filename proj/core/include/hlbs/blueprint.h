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

#ifndef HLBS_BLUEPRINT_H_
#define HLBS_BLUEPRINT_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hlbs/action.h"
#include "hlbs/observation.h"

namespace hlbs {

// Opaque recurrent state. Empty for Markov policies; a recurrent blueprint
// would round-trip its hidden state through here so that exact-belief
// candidates can each carry their own copy.
struct PolicyMemory {
  std::vector<uint8_t> bytes;
  bool Empty() const { return bytes.empty(); }
};

// A fixed, deterministic policy known to both players. act() must return a
// legal action and must be a pure function of (observation, memory).
class BlueprintPolicy {
 public:
  virtual ~BlueprintPolicy() = default;

  virtual Action Act(const Observation& obs, PolicyMemory* memory) const = 0;

  // Markov policies ignore memory entirely; consistency filtering then
  // needs no per-candidate memory tracking.
  virtual bool IsMarkov() const { return true; }
  virtual std::string_view Name() const = 0;
};

// Known blueprints: "rule-v1" (full cascade) and "rule-weak-v1" (play/discard
// rules only). Throws Error for unknown names.
std::unique_ptr<BlueprintPolicy> MakeBlueprint(std::string_view name);
std::vector<std::string> KnownBlueprints();

// True iff the blueprint would have taken `observed` in this situation.
// With deterministic blueprints this is the whole 0/1 likelihood used by
// counterfactual filtering.
bool PolicyConsistent(const BlueprintPolicy& blueprint, const Observation& obs,
                      PolicyMemory* memory, const Action& observed);

}  // namespace hlbs

#endif  // HLBS_BLUEPRINT_H_
