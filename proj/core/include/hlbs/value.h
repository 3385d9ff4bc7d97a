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

#ifndef HLBS_VALUE_H_
#define HLBS_VALUE_H_

#include <string>
#include <vector>

#include "hlbs/encoding.h"
#include "hlbs/game_state.h"
#include "hlbs/observation.h"
#include "hlbs/rng.h"

namespace hlbs {

// Estimate of the remaining undiscounted return from a state. Rollout
// truncation bootstraps from this. The rng parameter exists for estimators
// that are themselves sampled (the calibration stub in tests); model-based
// estimators ignore it.
class ValueEstimator {
 public:
  virtual ~ValueEstimator() = default;
  virtual double Estimate(const GameState& state, Rng& rng) const = 0;
};

// Always zero. Stands in when no bootstrap is needed (infinite-depth
// rollouts) and as the untrained baseline.
class ZeroValue : public ValueEstimator {
 public:
  double Estimate(const GameState&, Rng&) const override { return 0.0; }
};

// Linear regression from public features to return-to-go.
class LinearValueModel : public ValueEstimator {
 public:
  explicit LinearValueModel(const Variant& variant);

  double Predict(const PublicState& pub) const;
  double Estimate(const GameState& state, Rng&) const override {
    return Predict(MakePublicState(state));
  }

  const Variant& GetVariant() const { return variant_; }
  int FeatureLength() const { return feature_length_; }
  std::vector<double>& Weights() { return weights_; }  // bias last
  const std::vector<double>& Weights() const { return weights_; }

  double rmse_train = 0.0;
  double rmse_holdout = 0.0;
  double ridge_lambda = 0.0;

  void Save(const std::string& path) const;
  static LinearValueModel Load(const std::string& path);
  void EnsureCompatible(const Variant& v) const;

 private:
  Variant variant_;
  int feature_length_ = 0;
  uint64_t encoder_hash_ = 0;
  std::vector<double> weights_;  // feature_length_ + 1 (bias)
};

}  // namespace hlbs

#endif  // HLBS_VALUE_H_
