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

#include "hlbs/belief_model.h"

#include <cmath>
#include <cstring>
#include <fstream>

#include "hlbs/error.h"

namespace hlbs {

namespace {

constexpr char kMagic[8] = {'H', 'L', 'B', 'S', 'B', 'M', '1', '\n'};

void SoftmaxInPlace(std::array<double, kMaxVocab>& logits, int vocab) {
  double max_logit = logits[0];
  for (int c = 1; c < vocab; ++c) max_logit = std::max(max_logit, logits[c]);
  double total = 0.0;
  for (int c = 0; c < vocab; ++c) {
    logits[c] = std::exp(logits[c] - max_logit);
    total += logits[c];
  }
  for (int c = 0; c < vocab; ++c) logits[c] /= total;
}

template <typename T>
void WriteRaw(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void ReadRaw(std::ifstream& in, T& value) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
}

void WriteVariant(std::ofstream& out, const Variant& v) {
  WriteRaw(out, v.num_colors);
  WriteRaw(out, v.num_ranks);
  for (int r = 0; r < kMaxRanks; ++r) WriteRaw(out, v.rank_counts[r]);
  WriteRaw(out, v.hand_size);
  WriteRaw(out, v.max_hint_tokens);
  WriteRaw(out, v.max_lives);
  WriteRaw(out, v.num_players);
}

Variant ReadVariant(std::ifstream& in) {
  Variant v;
  ReadRaw(in, v.num_colors);
  ReadRaw(in, v.num_ranks);
  for (int r = 0; r < kMaxRanks; ++r) ReadRaw(in, v.rank_counts[r]);
  ReadRaw(in, v.hand_size);
  ReadRaw(in, v.max_hint_tokens);
  ReadRaw(in, v.max_lives);
  ReadRaw(in, v.num_players);
  return v;
}

}  // namespace

LearnedBeliefModel::LearnedBeliefModel(const Variant& variant)
    : variant_(variant),
      vocab_(variant.Vocab()),
      feature_length_(BeliefContextLayout(variant).total_length),
      encoder_hash_(LayoutHash(variant)),
      params_(static_cast<std::size_t>(vocab_) * feature_length_ + vocab_, 0.0) {}

std::array<double, kMaxVocab> LearnedBeliefModel::Forward(
    const SparseFeatures& context) const {
  std::array<double, kMaxVocab> logits{};
  for (int c = 0; c < vocab_; ++c) {
    const double* row = params_.data() + static_cast<std::size_t>(c) * feature_length_;
    double z = BiasAt(c);
    for (const auto& [j, x] : context) z += row[j] * x;
    logits[c] = z;
  }
  SoftmaxInPlace(logits, vocab_);
  return logits;
}

std::array<double, kMaxVocab> LearnedBeliefModel::Forward(
    const FeatureVector& context) const {
  if (static_cast<int>(context.size()) != feature_length_) {
    throw EncoderMismatch("belief model: context length mismatch");
  }
  SparseFeatures sparse;
  sparse.reserve(context.size() / 4);
  for (int j = 0; j < feature_length_; ++j) {
    if (context[j] != 0.0) sparse.emplace_back(j, context[j]);
  }
  return Forward(sparse);
}

CrossEntropyResult LearnedBeliefModel::PerCardCrossEntropy(
    const PublicState& pub, const SlotKnowledge& own,
    std::span<const CardIndex> true_hand) const {
  EnsureCompatible(pub.variant);
  CrossEntropyResult res;
  const int n = static_cast<int>(true_hand.size());
  if (n == 0) return res;
  SparseFeatures ctx;
  double sum = 0.0;
  for (int s = 0; s < n; ++s) {
    EncodeBeliefContextSparse(pub, own, true_hand.first(s), ctx);
    const auto probs = Forward(ctx);
    sum -= std::log(probs[true_hand[s]]);
  }
  res.nats_per_card = sum / n;
  return res;
}

void LearnedBeliefModel::EnsureCompatible(const Variant& v) const {
  if (LayoutHash(v) != encoder_hash_) {
    throw EncoderMismatch("belief model: encoder layout mismatch");
  }
}

void LearnedBeliefModel::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(kMagic, sizeof(kMagic));
  WriteRaw(out, encoder_hash_);
  WriteVariant(out, variant_);
  const uint32_t vocab = static_cast<uint32_t>(vocab_);
  const uint32_t feat = static_cast<uint32_t>(feature_length_);
  WriteRaw(out, vocab);
  WriteRaw(out, feat);
  const uint32_t note_len = static_cast<uint32_t>(training_note.size());
  WriteRaw(out, note_len);
  out.write(training_note.data(), note_len);
  out.write(reinterpret_cast<const char*>(params_.data()),
            static_cast<std::streamsize>(params_.size() * sizeof(double)));
  if (!out) throw Error("short write: " + path);
}

LearnedBeliefModel LearnedBeliefModel::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error("not a belief model file: " + path);
  }
  uint64_t hash = 0;
  ReadRaw(in, hash);
  const Variant v = ReadVariant(in);
  v.Validate();
  uint32_t vocab = 0, feat = 0, note_len = 0;
  ReadRaw(in, vocab);
  ReadRaw(in, feat);
  ReadRaw(in, note_len);
  std::string note(note_len, '\0');
  in.read(note.data(), note_len);

  LearnedBeliefModel model(v);
  if (hash != model.encoder_hash_) {
    throw EncoderMismatch("belief model file: encoder layout mismatch");
  }
  if (vocab != static_cast<uint32_t>(model.vocab_) ||
      feat != static_cast<uint32_t>(model.feature_length_)) {
    throw EncoderMismatch("belief model file: dimension mismatch");
  }
  model.training_note = note;
  in.read(reinterpret_cast<char*>(model.params_.data()),
          static_cast<std::streamsize>(model.params_.size() * sizeof(double)));
  if (!in) throw Error("truncated belief model file: " + path);
  return model;
}

SampleResult SampleHands(const LearnedBeliefModel& model, const Observation& obs,
                         int n, const SampleConfig& config, Rng& rng) {
  model.EnsureCompatible(obs.pub.variant);
  const Variant& v = obs.pub.variant;
  const int hand_size = obs.priv.own_hand_size;
  const CardCountPool pool = CardCountPool::FromObservation(obs);
  const SlotKnowledge own = SlotKnowledge::FromPrivate(obs.priv);
  const std::span<const SlotMask> masks(obs.priv.own_masks.data(), hand_size);

  SampleResult result;
  result.hands.reserve(n);
  const long budget = static_cast<long>(config.max_attempts_multiplier) * n;

  SparseFeatures ctx;
  std::array<CardIndex, kMaxHandSize> draw{};
  while (static_cast<int>(result.hands.size()) < n) {
    if (result.attempts >= budget) {
      result.fallback = true;
      return result;
    }
    ++result.attempts;
    for (int s = 0; s < hand_size; ++s) {
      EncodeBeliefContextSparse(obs.pub, own,
                                std::span<const CardIndex>(draw.data(), s), ctx);
      const auto probs = model.Forward(ctx);
      double x = rng.NextDouble();
      int chosen = v.Vocab() - 1;
      for (int c = 0; c < v.Vocab(); ++c) {
        x -= probs[c];
        if (x < 0.0) {
          chosen = c;
          break;
        }
      }
      draw[s] = static_cast<CardIndex>(chosen);
    }
    if (HandConsistent(v, pool, masks,
                       std::span<const CardIndex>(draw.data(), hand_size))) {
      Hand h;
      h.size = static_cast<uint8_t>(hand_size);
      for (int s = 0; s < hand_size; ++s) h.cards[s] = draw[s];
      result.hands.push_back(h);
    }
  }
  return result;
}

}  // namespace hlbs
