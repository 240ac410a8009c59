// Copyright 2026 The tsobs Authors.
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
#ifndef TSOBS_RNG_HPP_
#define TSOBS_RNG_HPP_

#include <cstdint>
#include <random>

namespace tsobs {

// Seed derivation used for every replication and every per-episode stream.
//
//   mix(z)            = SplitMix64 finalizer
//   derive_seed(m, i) = mix(mix(m) + 0x9E3779B97F4A7C15 * (i + 1))   (mod 2^64)
//
// mix is a bijection on 64-bit words and the golden-ratio increment is odd,
// so for a fixed master seed distinct indices never collide. This function
// is part of the file-format contract: traces are reproducible from
// (master_seed, replication_index) on any platform.
std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;
std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::uint64_t index) noexcept;

// Portable random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the variates below are computed here
// rather than with <random> distributions, whose algorithms vary between
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Standard normal (Marsaglia polar method, spare variate discarded).
  double normal();

  // Gamma(shape, 1), Marsaglia-Tsang. shape > 0.
  double gamma(double shape);

  // Beta(a, b) via the gamma ratio. a, b > 0.
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsobs

#endif  // TSOBS_RNG_HPP_
