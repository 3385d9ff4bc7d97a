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

#ifndef HLBS_REPLAY_H_
#define HLBS_REPLAY_H_

#include <deque>
#include <string>
#include <vector>

#include "hlbs/blueprint.h"
#include "hlbs/event.h"
#include "hlbs/rng.h"
#include "hlbs/types.h"
#include "hlbs/variant.h"

namespace hlbs {

// One recorded self-play game. Returns are undiscounted score deltas, so
// R^0 equals the final score and R^t = r_t + R^{t+1} holds exactly,
// including the bomb-out zeroing through the terminal penalty reward.
struct TrajectoryRecord {
  Variant variant;
  uint64_t seed = 0;
  std::vector<Event> events;
  std::vector<Hand> acting_hands;      // acting player's hand before each move
  std::vector<int16_t> returns_to_go;  // R^t per move
  int16_t final_score = 0;
};

// Bounded FIFO with a uniform sampler.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = 1u << 20) : capacity_(capacity) {}

  void Add(TrajectoryRecord record);
  const TrajectoryRecord& Sample(Rng& rng) const;
  const TrajectoryRecord& At(std::size_t i) const { return records_[i]; }
  std::size_t Size() const { return records_.size(); }
  std::size_t Capacity() const { return capacity_; }
  const Variant& GetVariant() const;

 private:
  std::size_t capacity_;
  std::deque<TrajectoryRecord> records_;
};

// Plays n_games of fixed-blueprint self-play. Game i is seeded by
// Derive(seed, game, i), so the buffer is a pure function of
// (blueprint, variant, n_games, seed) regardless of the job count.
ReplayBuffer GenerateSelfplay(const BlueprintPolicy& blueprint,
                              const Variant& variant, int n_games,
                              uint64_t seed, int jobs = 1);

// Line-delimited text format: a short header, then one record per line as
// `seed|event;event;...|hand:hand:...|r,r,...`. Cards use CardName
// spelling. Byte-identical for identical buffers.
std::string BufferToText(const ReplayBuffer& buffer);
ReplayBuffer BufferFromText(const std::string& text);
void SaveBufferText(const ReplayBuffer& buffer, const std::string& path);
ReplayBuffer LoadBufferText(const std::string& path);

// Binary columnar cache for fast reload; preserves everything including
// event success flags.
void SaveBufferBinary(const ReplayBuffer& buffer, const std::string& path);
ReplayBuffer LoadBufferBinary(const std::string& path);

}  // namespace hlbs

#endif  // HLBS_REPLAY_H_
