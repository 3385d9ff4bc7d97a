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

#ifndef HLBS_ENCODING_H_
#define HLBS_ENCODING_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hlbs/observation.h"
#include "hlbs/types.h"
#include "hlbs/variant.h"

namespace hlbs {

using FeatureVector = std::vector<double>;

// (index, value) pairs; indices strictly increasing. The sparse form drives
// training and sampling hot loops; the dense form is the documented
// contract. Both are produced by the same fill routines.
using SparseFeatures = std::vector<std::pair<int, double>>;

// Bump when any block definition changes; model files carry the hash of the
// generated layout text and refuse to load against a different encoder.
inline constexpr int kEncodingVersion = 1;

struct LayoutBlock {
  std::string name;
  int offset = 0;
  int length = 0;
};

struct FeatureLayout {
  std::vector<LayoutBlock> blocks;
  int total_length = 0;

  int Find(const std::string& name) const;  // offset, or -1
};

// Public-state encoder: fireworks one-hots, discard and remaining-pool
// counts, token/deck one-hots, both players' hint masks and touched flags,
// turn parity, last event, countdown.
FeatureLayout PublicLayout(const Variant& v);
FeatureVector EncodePublic(const PublicState& pub);
void EncodePublicSparse(const PublicState& pub, SparseFeatures& out);

// Auto-regressive belief context for one slot prediction: position one-hot,
// the decoded prefix, the slot's own hint knowledge, public-pool counting
// adjusted for the prefix, playability interactions, then the full public
// block. Purely public inputs; the observer's own hand never appears.
struct SlotKnowledge {
  std::array<SlotMask, kMaxHandSize> masks{};
  std::array<uint8_t, kMaxHandSize> touched{};
  uint8_t hand_size = 0;

  static SlotKnowledge FromPrivate(const PrivateObs& priv) {
    return SlotKnowledge{priv.own_masks, priv.own_touched, priv.own_hand_size};
  }
};

FeatureLayout BeliefContextLayout(const Variant& v);
FeatureVector EncodeBeliefContext(const PublicState& pub,
                                  const SlotKnowledge& own,
                                  std::span<const CardIndex> decoded_prefix);
void EncodeBeliefContextSparse(const PublicState& pub, const SlotKnowledge& own,
                               std::span<const CardIndex> decoded_prefix,
                               SparseFeatures& out);

// Generated layout documentation: one line per block with offsets and
// lengths for both encoders of a variant. The 64-bit FNV-1a hash of this
// text is the encoder version stamped into model files.
std::string LayoutText(const Variant& v);
uint64_t LayoutHash(const Variant& v);

}  // namespace hlbs

#endif  // HLBS_ENCODING_H_
