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

#include "hlbs/encoding.h"

#include <algorithm>
#include <sstream>

#include "hlbs/game_state.h"

namespace hlbs {

namespace {

// Remaining copies of each identity given only public information: full
// deck minus discards minus cards sitting on the fireworks stacks.
void PublicPool(const PublicState& pub, std::array<int, kMaxVocab>& pool) {
  const Variant& v = pub.variant;
  for (int c = 0; c < v.num_colors; ++c) {
    for (int r = 0; r < v.num_ranks; ++r) {
      const int idx = c * v.num_ranks + r;
      pool[idx] = v.rank_counts[r] - pub.discards[idx] - (r < pub.fireworks[c] ? 1 : 0);
    }
  }
}

struct LayoutBuilder {
  FeatureLayout layout;
  void Add(const std::string& name, int length) {
    layout.blocks.push_back({name, layout.total_length, length});
    layout.total_length += length;
  }
};

constexpr int kLastEventKinds = 5;  // none/play/discard/hint_color/hint_rank

}  // namespace

int FeatureLayout::Find(const std::string& name) const {
  for (const auto& b : blocks) {
    if (b.name == name) return b.offset;
  }
  return -1;
}

FeatureLayout PublicLayout(const Variant& v) {
  LayoutBuilder b;
  const int V = v.Vocab();
  b.Add("fireworks", v.num_colors * (v.num_ranks + 1));
  b.Add("discards", V);
  b.Add("public_pool", V);
  b.Add("hint_tokens", v.max_hint_tokens + 1);
  b.Add("life_tokens", v.max_lives + 1);
  b.Add("deck_size", v.DeckSizeAfterDeal() + 1);
  b.Add("masks", kMaxPlayers * v.hand_size * V);
  b.Add("touched", kMaxPlayers * v.hand_size);
  b.Add("current_player", kMaxPlayers);
  b.Add("last_event_kind", kLastEventKinds);
  b.Add("last_event_actor", kMaxPlayers);
  b.Add("last_event_success", 1);
  b.Add("countdown", kMaxPlayers + 2);
  return b.layout;
}

namespace {

void FillPublicSparse(const PublicState& pub, SparseFeatures& out) {
  const Variant& v = pub.variant;
  const int V = v.Vocab();
  int off = 0;

  // fireworks
  for (int c = 0; c < v.num_colors; ++c) {
    out.emplace_back(off + c * (v.num_ranks + 1) + pub.fireworks[c], 1.0);
  }
  off += v.num_colors * (v.num_ranks + 1);

  // discards, normalized by copies per identity
  for (int c = 0; c < v.num_colors; ++c) {
    for (int r = 0; r < v.num_ranks; ++r) {
      const int idx = c * v.num_ranks + r;
      if (pub.discards[idx] > 0) {
        out.emplace_back(off + idx,
                         double(pub.discards[idx]) / double(v.rank_counts[r]));
      }
    }
  }
  off += V;

  // public pool, normalized likewise
  std::array<int, kMaxVocab> pool{};
  PublicPool(pub, pool);
  for (int c = 0; c < v.num_colors; ++c) {
    for (int r = 0; r < v.num_ranks; ++r) {
      const int idx = c * v.num_ranks + r;
      if (pool[idx] > 0) {
        out.emplace_back(off + idx, double(pool[idx]) / double(v.rank_counts[r]));
      }
    }
  }
  off += V;

  out.emplace_back(off + pub.hint_tokens, 1.0);
  off += v.max_hint_tokens + 1;
  out.emplace_back(off + pub.life_tokens, 1.0);
  off += v.max_lives + 1;
  out.emplace_back(off + std::min<int>(pub.deck_size, v.DeckSizeAfterDeal()), 1.0);
  off += v.DeckSizeAfterDeal() + 1;

  for (int p = 0; p < kMaxPlayers; ++p) {
    for (int s = 0; s < v.hand_size; ++s) {
      if (s < pub.hand_sizes[p]) {
        const SlotMask m = pub.hint_masks[p][s];
        for (int idx = 0; idx < V; ++idx) {
          if (m & (SlotMask{1} << idx)) {
            out.emplace_back(off + (p * v.hand_size + s) * V + idx, 1.0);
          }
        }
      }
    }
  }
  off += kMaxPlayers * v.hand_size * V;

  for (int p = 0; p < kMaxPlayers; ++p) {
    for (int s = 0; s < v.hand_size; ++s) {
      if (s < pub.hand_sizes[p] && pub.hint_touched[p][s]) {
        out.emplace_back(off + p * v.hand_size + s, 1.0);
      }
    }
  }
  off += kMaxPlayers * v.hand_size;

  out.emplace_back(off + pub.current_player, 1.0);
  off += kMaxPlayers;

  const int kind = pub.last_event.present ? 1 + static_cast<int>(pub.last_event.kind) : 0;
  out.emplace_back(off + kind, 1.0);
  off += kLastEventKinds;
  if (pub.last_event.present) {
    out.emplace_back(off + pub.last_event.actor, 1.0);
  }
  off += kMaxPlayers;
  if (pub.last_event.present && pub.last_event.success) {
    out.emplace_back(off, 1.0);
  }
  off += 1;

  // countdown: slot 0 = inactive, slot 1+k = k moves remaining
  const int cd = pub.final_countdown == kCountdownInactive
                     ? 0
                     : 1 + std::min<int>(pub.final_countdown, kMaxPlayers + 0);
  out.emplace_back(off + cd, 1.0);
  off += kMaxPlayers + 2;
}

}  // namespace

void EncodePublicSparse(const PublicState& pub, SparseFeatures& out) {
  out.clear();
  FillPublicSparse(pub, out);
}

FeatureVector EncodePublic(const PublicState& pub) {
  SparseFeatures sparse;
  FillPublicSparse(pub, sparse);
  FeatureVector dense(PublicLayout(pub.variant).total_length, 0.0);
  for (const auto& [i, x] : sparse) dense[i] = x;
  return dense;
}

FeatureLayout BeliefContextLayout(const Variant& v) {
  LayoutBuilder b;
  const int V = v.Vocab();
  b.Add("position", v.hand_size);
  b.Add("slot_mask", V);
  b.Add("slot_touched", 1);
  b.Add("pool_minus_prefix", V);
  b.Add("pool_exhausted", V);
  b.Add("playable_now", V);
  b.Add("touched_x_playable", V);
  b.Add("touched_x_mask", V);
  b.Add("prefix", v.hand_size * V);
  const FeatureLayout pub = PublicLayout(v);
  for (const auto& blk : pub.blocks) b.Add("public." + blk.name, blk.length);
  return b.layout;
}

namespace {

void FillBeliefContextSparse(const PublicState& pub, const SlotKnowledge& own,
                             std::span<const CardIndex> prefix,
                             SparseFeatures& out) {
  const Variant& v = pub.variant;
  const int V = v.Vocab();
  const int pos = static_cast<int>(prefix.size());
  int off = 0;

  out.emplace_back(off + std::min(pos, v.hand_size - 1), 1.0);
  off += v.hand_size;

  const SlotMask mask = pos < own.hand_size ? own.masks[pos] : v.FullMask();
  const bool touched = pos < own.hand_size && own.touched[pos];
  for (int idx = 0; idx < V; ++idx) {
    if (mask & (SlotMask{1} << idx)) out.emplace_back(off + idx, 1.0);
  }
  off += V;
  if (touched) out.emplace_back(off, 1.0);
  off += 1;

  std::array<int, kMaxVocab> pool{};
  PublicPool(pub, pool);
  for (const CardIndex c : prefix) --pool[c];
  for (int c = 0; c < v.num_colors; ++c) {
    for (int r = 0; r < v.num_ranks; ++r) {
      const int idx = c * v.num_ranks + r;
      if (pool[idx] > 0) {
        out.emplace_back(off + idx, double(pool[idx]) / double(v.rank_counts[r]));
      }
    }
  }
  off += V;
  for (int idx = 0; idx < V; ++idx) {
    if (pool[idx] <= 0) out.emplace_back(off + idx, 1.0);
  }
  off += V;

  const SlotMask playable = PlayableSet(v, pub.fireworks);
  for (int idx = 0; idx < V; ++idx) {
    if (playable & (SlotMask{1} << idx)) out.emplace_back(off + idx, 1.0);
  }
  off += V;
  if (touched) {
    for (int idx = 0; idx < V; ++idx) {
      if (playable & (SlotMask{1} << idx)) out.emplace_back(off + idx, 1.0);
    }
  }
  off += V;
  if (touched) {
    for (int idx = 0; idx < V; ++idx) {
      if (mask & (SlotMask{1} << idx)) out.emplace_back(off + idx, 1.0);
    }
  }
  off += V;

  for (int i = 0; i < pos && i < v.hand_size; ++i) {
    out.emplace_back(off + i * V + prefix[i], 1.0);
  }
  off += v.hand_size * V;

  const int public_base = off;
  SparseFeatures pub_sparse;
  FillPublicSparse(pub, pub_sparse);
  for (const auto& [i, x] : pub_sparse) out.emplace_back(public_base + i, x);
}

}  // namespace

void EncodeBeliefContextSparse(const PublicState& pub, const SlotKnowledge& own,
                               std::span<const CardIndex> decoded_prefix,
                               SparseFeatures& out) {
  out.clear();
  FillBeliefContextSparse(pub, own, decoded_prefix, out);
}

FeatureVector EncodeBeliefContext(const PublicState& pub,
                                  const SlotKnowledge& own,
                                  std::span<const CardIndex> decoded_prefix) {
  SparseFeatures sparse;
  FillBeliefContextSparse(pub, own, decoded_prefix, sparse);
  FeatureVector dense(BeliefContextLayout(pub.variant).total_length, 0.0);
  for (const auto& [i, x] : sparse) dense[i] = x;
  return dense;
}

std::string LayoutText(const Variant& v) {
  std::ostringstream os;
  os << "hlbs feature layout v" << kEncodingVersion << "\n";
  os << "variant " << VariantId(v) << " counts";
  for (int r = 0; r < v.num_ranks; ++r) os << " " << int{v.rank_counts[r]};
  os << " hints " << int{v.max_hint_tokens} << " lives " << int{v.max_lives}
     << "\n";
  const FeatureLayout pub = PublicLayout(v);
  os << "[public] length " << pub.total_length << "\n";
  for (const auto& b : pub.blocks) {
    os << "  " << b.name << " offset " << b.offset << " length " << b.length
       << "\n";
  }
  const FeatureLayout ctx = BeliefContextLayout(v);
  os << "[belief_context] length " << ctx.total_length << "\n";
  for (const auto& b : ctx.blocks) {
    os << "  " << b.name << " offset " << b.offset << " length " << b.length
       << "\n";
  }
  return os.str();
}

uint64_t LayoutHash(const Variant& v) {
  const std::string text = LayoutText(v);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hlbs
