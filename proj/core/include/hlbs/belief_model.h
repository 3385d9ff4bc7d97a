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

#ifndef HLBS_BELIEF_MODEL_H_
#define HLBS_BELIEF_MODEL_H_

#include <string>
#include <vector>

#include "hlbs/belief.h"
#include "hlbs/encoding.h"
#include "hlbs/observation.h"
#include "hlbs/rng.h"

namespace hlbs {

// Auto-regressive belief over the observer's own hand: a linear-softmax head
// over the card vocabulary, conditioned on the belief-context features, one
// slot at a time from oldest to newest. The context is purely public, so the
// model can never leak the hand it predicts.
class LearnedBeliefModel {
 public:
  explicit LearnedBeliefModel(const Variant& variant);

  const Variant& GetVariant() const { return variant_; }
  int Vocab() const { return vocab_; }
  int FeatureLength() const { return feature_length_; }
  uint64_t EncoderHash() const { return encoder_hash_; }

  // Softmax over the card vocabulary for one decoding step. The dense
  // overload validates the feature length and throws EncoderMismatch.
  std::array<double, kMaxVocab> Forward(const SparseFeatures& context) const;
  std::array<double, kMaxVocab> Forward(const FeatureVector& context) const;

  // Chain-rule per-card cross entropy of a true hand, conditioning each slot
  // on the true prefix. Never infinite: softmax puts mass everywhere.
  CrossEntropyResult PerCardCrossEntropy(const PublicState& pub,
                                         const SlotKnowledge& own,
                                         std::span<const CardIndex> true_hand) const;

  // Weight for class c, feature j; bias for class c. Flat little-endian
  // array in the model file: vocab*feature_length weights then vocab biases.
  double& WeightAt(int c, int j) { return params_[c * feature_length_ + j]; }
  double WeightAt(int c, int j) const { return params_[c * feature_length_ + j]; }
  double& BiasAt(int c) { return params_[vocab_ * feature_length_ + c]; }
  double BiasAt(int c) const { return params_[vocab_ * feature_length_ + c]; }
  std::vector<double>& Params() { return params_; }
  const std::vector<double>& Params() const { return params_; }

  std::string training_note;  // free-form metadata saved with the file

  void Save(const std::string& path) const;
  static LearnedBeliefModel Load(const std::string& path);

  // Throws EncoderMismatch when the model was trained against a different
  // variant or encoder layout version.
  void EnsureCompatible(const Variant& v) const;

 private:
  Variant variant_;
  int vocab_ = 0;
  int feature_length_ = 0;
  uint64_t encoder_hash_ = 0;
  std::vector<double> params_;
};

struct SampleConfig {
  int max_attempts_multiplier = 100;  // total draws allowed = multiplier * n
};

struct SampleResult {
  std::vector<Hand> hands;
  bool fallback = false;
  int attempts = 0;
};

// Draws complete hands slot-by-slot from the raw model conditionals, then
// accepts a hand only if it satisfies hint masks and card counting. Sampling
// is unconstrained and filtering happens per complete hand, so accepted
// hands follow the model distribution conditioned on consistency. Returns
// exactly n hands, or fallback=true once the attempt budget is exhausted.
SampleResult SampleHands(const LearnedBeliefModel& model, const Observation& obs,
                         int n, const SampleConfig& config, Rng& rng);

}  // namespace hlbs

#endif  // HLBS_BELIEF_MODEL_H_
