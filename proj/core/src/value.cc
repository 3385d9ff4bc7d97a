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

#include "hlbs/value.h"

#include <cstring>
#include <fstream>

#include "hlbs/error.h"

namespace hlbs {

namespace {
constexpr char kMagic[8] = {'H', 'L', 'B', 'S', 'V', 'M', '1', '\n'};

template <typename T>
void WriteRaw(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}
template <typename T>
void ReadRaw(std::ifstream& in, T& value) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
}
}  // namespace

LinearValueModel::LinearValueModel(const Variant& variant)
    : variant_(variant),
      feature_length_(PublicLayout(variant).total_length),
      encoder_hash_(LayoutHash(variant)),
      weights_(feature_length_ + 1, 0.0) {}

double LinearValueModel::Predict(const PublicState& pub) const {
  SparseFeatures x;
  EncodePublicSparse(pub, x);
  double y = weights_[feature_length_];
  for (const auto& [j, v] : x) y += weights_[j] * v;
  return y;
}

void LinearValueModel::EnsureCompatible(const Variant& v) const {
  if (LayoutHash(v) != encoder_hash_) {
    throw EncoderMismatch("value model: encoder layout mismatch");
  }
}

void LinearValueModel::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(kMagic, sizeof(kMagic));
  WriteRaw(out, encoder_hash_);
  WriteRaw(out, variant_.num_colors);
  WriteRaw(out, variant_.num_ranks);
  for (int r = 0; r < kMaxRanks; ++r) WriteRaw(out, variant_.rank_counts[r]);
  WriteRaw(out, variant_.hand_size);
  WriteRaw(out, variant_.max_hint_tokens);
  WriteRaw(out, variant_.max_lives);
  WriteRaw(out, variant_.num_players);
  const uint32_t feat = static_cast<uint32_t>(feature_length_);
  WriteRaw(out, feat);
  WriteRaw(out, rmse_train);
  WriteRaw(out, rmse_holdout);
  WriteRaw(out, ridge_lambda);
  out.write(reinterpret_cast<const char*>(weights_.data()),
            static_cast<std::streamsize>(weights_.size() * sizeof(double)));
  if (!out) throw Error("short write: " + path);
}

LinearValueModel LinearValueModel::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error("not a value model file: " + path);
  }
  uint64_t hash = 0;
  ReadRaw(in, hash);
  Variant v;
  ReadRaw(in, v.num_colors);
  ReadRaw(in, v.num_ranks);
  for (int r = 0; r < kMaxRanks; ++r) ReadRaw(in, v.rank_counts[r]);
  ReadRaw(in, v.hand_size);
  ReadRaw(in, v.max_hint_tokens);
  ReadRaw(in, v.max_lives);
  ReadRaw(in, v.num_players);
  v.Validate();
  uint32_t feat = 0;
  ReadRaw(in, feat);
  LinearValueModel model(v);
  if (hash != model.encoder_hash_ ||
      feat != static_cast<uint32_t>(model.feature_length_)) {
    throw EncoderMismatch("value model file: encoder layout mismatch");
  }
  ReadRaw(in, model.rmse_train);
  ReadRaw(in, model.rmse_holdout);
  ReadRaw(in, model.ridge_lambda);
  in.read(reinterpret_cast<char*>(model.weights_.data()),
          static_cast<std::streamsize>(model.weights_.size() * sizeof(double)));
  if (!in) throw Error("truncated value model file: " + path);
  return model;
}

}  // namespace hlbs
