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

#ifndef HLBS_ERROR_H_
#define HLBS_ERROR_H_

#include <stdexcept>
#include <string>

namespace hlbs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Illegal action applied or operation requested on a finished game.
struct RuleViolation : Error {
  using Error::Error;
};

// An observation admits no consistent hand; indicates an engine bug rather
// than a recoverable condition.
struct InconsistentObservation : Error {
  using Error::Error;
};

// The exact tracker's candidate set would exceed its configured bound.
struct BeliefSpaceTooLarge : Error {
  BeliefSpaceTooLarge(const std::string& what, int turn_index)
      : Error(what), turn(turn_index) {}
  int turn;
};

// Policy-consistency filtering removed every candidate; the observed actions
// are incompatible with the assumed blueprint.
struct BeliefFilteredEmpty : Error {
  BeliefFilteredEmpty(const std::string& what, int turn_index)
      : Error(what), turn(turn_index) {}
  int turn;
};

// A model was asked to consume features produced by a different encoder
// layout version.
struct EncoderMismatch : Error {
  using Error::Error;
};

// Training produced a non-finite loss.
struct TrainingDiverged : Error {
  TrainingDiverged(const std::string& what, int step_index)
      : Error(what), step(step_index) {}
  int step;
};

}  // namespace hlbs

#endif  // HLBS_ERROR_H_
