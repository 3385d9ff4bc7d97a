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

#ifndef HLBS_RNG_H_
#define HLBS_RNG_H_

#include <cstdint>

namespace hlbs {

// Counter-based splittable PRNG (SplitMix64 output function over a keyed
// counter). Streams derived through Derive() are statistically independent
// and fully determined by the root seed and the derivation path, so parallel
// consumers can be given disjoint streams ahead of time and results do not
// depend on scheduling. Output is identical across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : key_(Mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  uint64_t NextU64() { return Mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

  // Uniform in [0, 1).
  double NextDouble() { return (NextU64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, n), n >= 1. Rejection over the top
  // multiple of n.
  uint32_t NextBelow(uint32_t n) {
    if (n <= 1) return 0;
    const uint64_t bound = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = NextU64();
    } while (x >= bound);
    return static_cast<uint32_t>(x % n);
  }

  // Child stream keyed by up to three path components. Independent of this
  // stream's counter position.
  Rng Derive(uint64_t a, uint64_t b = 0, uint64_t c = 0) const {
    Rng child(0);
    uint64_t k = key_;
    k = Mix(k ^ Mix(a + 0x517cc1b727220a95ull));
    k = Mix(k ^ Mix(b + 0x6a09e667f3bcc909ull));
    k = Mix(k ^ Mix(c + 0xbb67ae8584caa73bull));
    child.key_ = k;
    return child;
  }

  static uint64_t Mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

 private:
  uint64_t key_ = 0;
  uint64_t counter_ = 0;
};

// Deterministic in-place Fisher-Yates shuffle. std::shuffle is
// implementation-defined, so sequences would not be reproducible across
// standard libraries.
template <typename T>
void Shuffle(T* data, int n, Rng& rng) {
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.NextBelow(static_cast<uint32_t>(i + 1)));
    T tmp = data[i];
    data[i] = data[j];
    data[j] = tmp;
  }
}

// Fixed stream tags for Derive() paths used across the project.
namespace stream {
inline constexpr uint64_t kDeal = 1;
inline constexpr uint64_t kGame = 2;
inline constexpr uint64_t kMove = 3;
inline constexpr uint64_t kHands = 4;
inline constexpr uint64_t kRollout = 5;
inline constexpr uint64_t kTraining = 6;
inline constexpr uint64_t kValueStub = 7;
}  // namespace stream

}  // namespace hlbs

#endif  // HLBS_RNG_H_
