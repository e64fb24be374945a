// Copyright 2026 The Pennies Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PENNIES_RANDOM_H_
#define PENNIES_RANDOM_H_

#include <cstdint>
#include <random>

namespace pennies {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t MixSeed(std::uint64_t x);

// Seeded random stream. Draws are a pure function of the seed on every
// platform: the engine is mt19937_64 (fully specified by the standard) and
// all conversions to doubles are done here rather than through the
// implementation-defined <random> distributions.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  // Independent stream for a (seed, stream id) pair.
  static RandomSource Derive(std::uint64_t seed, std::uint64_t stream) {
    return RandomSource(MixSeed(seed ^ MixSeed(stream + 0x5bd1e995u)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // True with probability p.
  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, n).
  int UniformInt(int n) {
    const int v = static_cast<int>(Uniform() * n);
    return v < n ? v : n - 1;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace pennies

#endif  // PENNIES_RANDOM_H_
