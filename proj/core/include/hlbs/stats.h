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

#ifndef HLBS_STATS_H_
#define HLBS_STATS_H_

#include <cmath>
#include <span>

namespace hlbs {

struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;  // sd / sqrt(n), sample standard deviation
  int n = 0;
};

inline MeanSem ComputeMeanSem(std::span<const double> xs) {
  MeanSem out;
  out.n = static_cast<int>(xs.size());
  if (out.n == 0) return out;
  double mean = 0.0, m2 = 0.0;
  int k = 0;
  for (double x : xs) {
    ++k;
    const double d = x - mean;
    mean += d / k;
    m2 += d * (x - mean);
  }
  out.mean = mean;
  if (out.n > 1) out.sem = std::sqrt(m2 / (out.n - 1)) / std::sqrt(double(out.n));
  return out;
}

// One-sided sign test for paired samples: P(X >= wins) with
// X ~ Binomial(wins + losses, 1/2). Ties are dropped.
inline double SignTestPValue(int wins, int losses) {
  const int n = wins + losses;
  if (n == 0) return 1.0;
  // Exact binomial tail via log factorials.
  double p = 0.0;
  for (int k = wins; k <= n; ++k) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(n - k + 1.0) - n * std::log(2.0);
    p += std::exp(log_term);
  }
  return p < 1.0 ? p : 1.0;
}

}  // namespace hlbs

#endif  // HLBS_STATS_H_
