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
#include "tsobs/belief.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tsobs/error.hpp"
#include "tsobs/rng.hpp"

namespace tsobs {
namespace {

using doctest::Approx;

ParameterGrid two_by_two() {
  return ParameterGrid({0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}});
}

TEST_CASE("update_discrete examples") {
  auto g = two_by_two();
  auto b = update_discrete(DiscreteBelief::from_prior(g), g, 0, 1.0);
  CHECK(b[0] == Approx(0.9));
  CHECK(b[1] == Approx(0.1));

  auto point = update_discrete(DiscreteBelief({1.0, 0.0}), g, 1, 1.0);
  CHECK(point[0] == 1.0);
  CHECK(point[1] == 0.0);

  ParameterGrid flat({0.25, 0.25, 0.5}, {{0.3, 0.6}, {0.3, 0.6}, {0.3, 0.6}});
  auto f = update_discrete(DiscreteBelief::from_prior(flat), flat, 1, 0.0);
  CHECK(f[0] == Approx(0.25));
  CHECK(f[2] == Approx(0.5));
}

TEST_CASE("update_discrete matches the from-scratch posterior") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng.below(4), k = 1 + rng.below(3);
    oracle::Table means(m, std::vector<double>(k));
    for (auto& row : means) {
      for (auto& x : row) x = 0.05 + 0.9 * rng.uniform();
    }
    std::vector<double> prior(m);
    double total = 0;
    for (auto& x : prior) total += (x = rng.uniform() + 0.01);
    for (auto& x : prior) x /= total;
    ParameterGrid g(prior, means);
    DiscreteBelief b = DiscreteBelief::from_prior(g);
    oracle::History h;
    for (int step = 0; step < 6; ++step) {
      const std::size_t a = rng.below(k);
      const int r = rng.uniform() < 0.5 ? 1 : 0;
      b = update_discrete(b, g, a, r);
      h.emplace_back(a, r);
    }
    auto expected = oracle::posterior(prior, means, h);
    for (std::size_t i = 0; i < m; ++i)
      CHECK(b[i] == Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("update_discrete errors") {
  ParameterGrid g({0.5, 0.5}, {{1.0, 0.5}, {1.0, 0.5}});
  auto b = DiscreteBelief::from_prior(g);
  try {
    update_discrete(b, g, 0, 0.0);
    FAIL("expected degenerate evidence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateEvidence);
  }
  CHECK_THROWS_AS(update_discrete(b, g, 0, 0.5), Error);
  CHECK_THROWS_AS(update_discrete(b, g, 5, 1.0), Error);
  CHECK_THROWS_AS(DiscreteBelief({0.6, 0.6}), Error);
  CHECK_THROWS_AS(DiscreteBelief({-0.1, 1.1}), Error);
}

TEST_CASE("predictive probability") {
  auto g = two_by_two();
  auto b = DiscreteBelief::from_prior(g);
  CHECK(predictive_probability(b, g, 0, 1.0) == Approx(0.5));
  b = DiscreteBelief({0.9, 0.1});
  CHECK(predictive_probability(b, g, 0, 1.0) == Approx(0.82));
  CHECK(predictive_probability(b, g, 0, 0.0) == Approx(0.18));
}

TEST_CASE("update_beta examples") {
  auto b = BetaBelief::uniform(2);
  auto up = update_beta(b, 0, 1.0);
  CHECK(up.alpha(0) == 2.0);
  CHECK(up.beta(0) == 1.0);
  auto down = update_beta(b, 0, 0.0);
  CHECK(down.alpha(0) == 1.0);
  CHECK(down.beta(0) == 2.0);
  auto other = update_beta(b, 1, 1.0);
  CHECK(other.alpha(0) == 1.0);
  CHECK(other.beta(0) == 1.0);
  try {
    update_beta(b, 0, 0.5);
    FAIL("expected invalid argument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidArgument);
  }
}

TEST_CASE("sample_parameter, discrete") {
  Rng rng(5);
  DiscreteBelief point({1.0, 0.0});
  for (int i = 0; i < 1000; ++i) CHECK(sample_parameter(point, rng) == 0);
  DiscreteBelief half({0.5, 0.5});
  int ones = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += sample_parameter(half, rng) == 1 ? 1 : 0;
  CHECK(std::abs(ones / double(n) - 0.5) < 0.01);
  // A zero-weight index in the middle is never drawn.
  DiscreteBelief gap({0.5, 0.0, 0.5});
  for (int i = 0; i < 10000; ++i) CHECK(sample_parameter(gap, rng) != 1);
}

TEST_CASE("sample_parameter, Beta") {
  Rng rng(6);
  BetaBelief b({{1e6, 1.0}});
  int high = 0;
  for (int i = 0; i < 1000; ++i) high += sample_parameter(b, rng)[0] > 0.99;
  CHECK(high == 1000);
}

TEST_CASE("optimal_action_probability examples") {
  auto g = two_by_two();
  auto p = optimal_action_probability(DiscreteBelief({0.5, 0.5}), g);
  CHECK(p.probs == std::vector<double>{0.5, 0.5});
  CHECK(p.estimation == OptimalActionDistribution::Estimation::kExact);
  p = optimal_action_probability(DiscreteBelief({0.9, 0.1}), g);
  CHECK(p.probs[0] == Approx(0.9));
  CHECK(p.probs[1] == Approx(0.1));
  ParameterGrid ties({0.3, 0.7}, {{0.5, 0.5, 0.5}, {0.2, 0.2, 0.2}});
  p = optimal_action_probability(DiscreteBelief::from_prior(ties), ties);
  CHECK(p.probs == std::vector<double>{1.0, 0.0, 0.0});
  const std::vector<ActionIndex> both{0, 1};
  CHECK(optimal_action_probability(DiscreteBelief({0.9, 0.1}), g).mass(both) ==
        Approx(1.0));
}

TEST_CASE("optimal_action_probability_mc") {
  Rng rng(7);
  BetaBelief sep({{1e6, 1.0}, {1.0, 1e6}});
  auto p = optimal_action_probability_mc(sep, 10000, rng);
  CHECK(p.probs[0] >= 0.999);
  CHECK(p.estimation == OptimalActionDistribution::Estimation::kMonteCarlo);
  CHECK(p.n_draws == 10000);

  const std::uint64_t n = 100000;
  p = optimal_action_probability_mc(BetaBelief::uniform(2), n, rng);
  const double se = std::sqrt(0.25 / n);
  CHECK(std::abs(p.probs[0] - 0.5) < 3 * se);
  CHECK(p.probs[0] + p.probs[1] == Approx(1.0));

  p = optimal_action_probability_mc(BetaBelief::uniform(3), 1, rng);
  int ones = 0;
  for (double x : p.probs) {
    CHECK((x == 0.0 || x == 1.0));
    ones += x == 1.0;
  }
  CHECK(ones == 1);
}

}  // namespace
}  // namespace tsobs
