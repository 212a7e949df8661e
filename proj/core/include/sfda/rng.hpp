/* Copyright 2026 The ssvep-sfda Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SFDA_RNG_HPP_
#define SFDA_RNG_HPP_

#include <cstdint>
#include <initializer_list>

namespace sfda {

/// SplitMix64 generator (Steele, Lea & Flood).
///
/// The state advances by 0x9E3779B97F4A7C15 per draw and the output is mixed
/// with the multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB. Derived
/// distributions are implemented here, not through <random>.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();

  /// Uniform integer in [0, n); n must be nonzero.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Order-sensitive hash of a list of 64-bit words, used to derive
/// independent seeds (e.g. per participant, per trial, per epoch).
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words);

}  // namespace sfda

#endif  // SFDA_RNG_HPP_
