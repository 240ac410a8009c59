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
#include "tsobs/rng.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "doctest.h"

namespace tsobs {
namespace {

TEST_CASE("derive_seed is a pure function") {
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("derive_seed has no collisions over 10^4 indices") {
  for (std::uint64_t master : {0ULL, 1ULL, 0xDEADBEEFULL, ~0ULL}) {
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i <= 10000; ++i) {
      CHECK(seen.insert(derive_seed(master, i)).second);
    }
  }
}

TEST_CASE("derive_seed matches the documented SplitMix64 composition") {
  // Reference SplitMix64 finalizer, written out independently.
  auto mix = [](std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  for (std::uint64_t m : {0ULL, 5ULL, 123456789ULL}) {
    for (std::uint64_t i : {0ULL, 1ULL, 99ULL}) {
      CHECK(derive_seed(m, i) == mix(mix(m) + 0x9E3779B97F4A7C15ULL * (i + 1)));
    }
  }
}

TEST_CASE("Rng streams are reproducible") {
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(9), d(10);
  CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("uniform lies in [0, 1) and below() in range") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.below(7) < 7);
  }
  CHECK(rng.below(1) == 0);
}

TEST_CASE("below is close to uniform") {
  Rng rng(2);
  std::vector<int> counts(5, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[rng.below(5)];
  for (int c : counts) CHECK(std::abs(c / double(n) - 0.2) < 0.01);
}

TEST_CASE("normal moments") {
  Rng rng(3);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("gamma and beta means") {
  Rng rng(4);
  const int n = 100000;
  for (double shape : {0.3, 1.0, 4.5}) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += rng.gamma(shape);
    CHECK(std::abs(s / n - shape) < 0.03 * std::max(1.0, shape));
  }
  double s = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.beta(2.0, 5.0);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
    s += x;
  }
  CHECK(std::abs(s / n - 2.0 / 7.0) < 0.005);
}

TEST_CASE("beta with tiny shapes stays in [0, 1]") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.beta(1e-3, 1e-3);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
}

}  // namespace
}  // namespace tsobs
