// Copyright 2026 The qhesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qhesim/rng.hpp"

namespace qhesim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t tag : tags) h = splitmix64(h ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
  return h;
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities,
                                         std::uint64_t shots, Rng& rng) {
  const std::size_t n = probabilities.size();
  std::vector<std::uint64_t> counts(n, 0);
  if (n == 0 || shots == 0) return counts;

  std::vector<double> cdf(n);
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = probabilities[i] > 0.0 ? probabilities[i] : 0.0;
    acc += p;
    cdf[i] = acc;
    if (p > 0.0) last_nonzero = i;
  }
  // Draw against the unnormalized total so tiny normalization errors do not
  // shift mass onto a zero-probability outcome.
  const double total = acc;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double r = rng.uniform() * total;
    std::size_t k = 0;
    while (k < last_nonzero && r >= cdf[k]) ++k;
    ++counts[k];
  }
  return counts;
}

}  // namespace qhesim
