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
#include "tsobs/policy.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tsobs/episode.hpp"
#include "tsobs/error.hpp"
#include "tsobs/rng.hpp"

namespace tsobs {
namespace {

std::shared_ptr<const ParameterGrid> grid(std::vector<double> prior,
                                          std::vector<std::vector<double>> m) {
  return std::make_shared<const ParameterGrid>(std::move(prior), m);
}

PolicyState ts_state(std::shared_ptr<const ParameterGrid> g) {
  return PolicyState(ThompsonDiscrete{}, g->num_actions(), g->reward(), g);
}

TEST_CASE("integer_sqrt and perfect squares") {
  CHECK(integer_sqrt(0) == 0);
  CHECK(integer_sqrt(99) == 9);
  CHECK(integer_sqrt(100) == 10);
  CHECK(integer_sqrt(1000000) == 1000);
  CHECK(integer_sqrt(~0ULL) == 4294967295ULL);
  CHECK(is_perfect_square(9));
  CHECK(!is_perfect_square(10));
  std::uint64_t squares = 0;
  for (std::uint64_t t = 1; t <= 10000; ++t) squares += is_perfect_square(t);
  CHECK(squares == 100);
}

TEST_CASE("ts_select examples") {
  Rng rng(1);
  auto point = grid({1.0, 0.0}, {{0.2, 0.8}, {0.9, 0.1}});
  auto s = ts_state(point);
  for (int i = 0; i < 1000; ++i) CHECK(ts_select(s, rng) == 1);

  auto ties = grid({0.5, 0.5}, {{0.5, 0.5}, {0.3, 0.3}});
  auto st = ts_state(ties);
  for (int i = 0; i < 1000; ++i) CHECK(ts_select(st, rng) == 0);

  auto sym = grid({0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}});
  auto ss = ts_state(sym);
  int zeros = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) zeros += ts_select(ss, rng) == 0;
  CHECK(std::abs(zeros / double(n) - 0.5) < 0.01);
}

TEST_CASE("ts_select never picks an action with an empty optimal set") {
  Rng rng(2);
  auto g = grid({0.3, 0.3, 0.4},
                {{0.9, 0.1, 0.5}, {0.9, 0.2, 0.1}, {0.1, 0.2, 0.3}});
  auto s = ts_state(g);
  for (int i = 0; i < 20000; ++i) CHECK(ts_select(s, rng) != 1);
}

TEST_CASE("probability matching on random beliefs") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + rng.below(4), k = 2 + rng.below(3);
    std::vector<std::vector<double>> means(m, std::vector<double>(k));
    for (auto& row : means) {
      for (auto& x : row) x = rng.uniform();
    }
    std::vector<double> w(m);
    double total = 0;
    for (auto& x : w) total += (x = rng.uniform());
    for (auto& x : w) x /= total;
    auto g = grid(w, means);
    auto s = ts_state(g);
    std::vector<double> freq(k, 0.0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) freq[ts_select(s, rng)] += 1.0 / n;
    CHECK(oracle::total_variation(freq, oracle::optimal_probability(w, means)) <
          0.01);
  }
}

TEST_CASE("composite_select at square and non-square steps") {
  auto g = grid({0.5, 0.5}, {{0.9, 0.1, 0.0}, {0.1, 0.9, 0.0}});
  PolicyState comp(SquareStepComposite{2, ThompsonDiscrete{}}, 3, g->reward(),
                   g);
  Rng r1(4), r2(4);
  CHECK(composite_select(comp, 9, r1) == 2);
  // Square steps leave the rng untouched.
  CHECK(r1.next_u64() == r2.next_u64());
  auto inner = ts_state(g);
  for (std::uint64_t t = 10; t < 15; ++t) {
    CHECK(composite_select(comp, t, r1) == ts_select(inner, r2));
  }
}

TEST_CASE("composite isolation matches a standalone inner run") {
  auto g = grid({0.4, 0.6}, {{0.8, 0.3}, {0.2, 0.7}});
  const Environment env = Environment::from_grid(*g, TrueParameter{1});
  PolicyState comp(SquareStepComposite{0, ThompsonDiscrete{}}, 2, g->reward(),
                   g);
  Rng policy_rng(10), env_rng(11);
  const std::uint64_t horizon = 500;
  std::uint64_t forced = 0;
  std::vector<std::pair<ActionIndex, double>> inner_steps;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const ActionIndex a = comp.select(t, policy_rng);
    const double r = env.sample(a, env_rng);
    if (is_perfect_square(t)) {
      ++forced;
      CHECK(a == 0);
    } else {
      inner_steps.emplace_back(a, r);
    }
    comp.observe(t, a, r);
  }
  CHECK(forced == integer_sqrt(horizon));

  // Replay the non-square subsequence through a plain Thompson learner with
  // its own copy of the policy stream.
  PolicyState alone = ts_state(g);
  Rng replay_rng(10);
  std::uint64_t t = 1;
  for (const auto& [a, r] : inner_steps) {
    CHECK(alone.select(t, replay_rng) == a);
    alone.observe(t, a, r);
    ++t;
  }
  CHECK(std::get<DiscreteBelief>(comp.belief()) ==
        std::get<DiscreteBelief>(alone.belief()));
}

TEST_CASE("policy_update delegates and checks support") {
  auto g = grid({0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}});
  auto s = ts_state(g);
  auto next = policy_update(s, 1, 0, 1.0);
  CHECK(std::get<DiscreteBelief>(next.belief()) ==
        update_discrete(DiscreteBelief::from_prior(*g), *g, 0, 1.0));
  CHECK(std::get<DiscreteBelief>(s.belief()) == DiscreteBelief::from_prior(*g));
  try {
    policy_update(s, 1, 0, 0.5);
    FAIL("expected invalid argument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidArgument);
  }
}

TEST_CASE("Thompson Beta and uniform policies") {
  Rng rng(12);
  PolicyState beta(ThompsonBeta{1.0, 1.0}, 2, RewardModel::bernoulli());
  for (int i = 0; i < 50; ++i) beta.observe(i + 1, 0, 1.0);
  for (int i = 0; i < 50; ++i) beta.observe(i + 1, 1, 0.0);
  int zeros = 0;
  for (int i = 0; i < 1000; ++i) zeros += beta.select(1, rng) == 0;
  CHECK(zeros > 990);
  CHECK(!beta.exact_optimal_action_probability().has_value());

  PolicyState uni(UniformRandom{}, 4, RewardModel::bernoulli());
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 40000; ++i) ++counts[uni.select(1, rng)];
  for (int c : counts) CHECK(std::abs(c / 40000.0 - 0.25) < 0.01);
}

TEST_CASE("describe and is_thompson") {
  CHECK(is_thompson(ThompsonDiscrete{}));
  CHECK(is_thompson(ThompsonBeta{}));
  CHECK(!is_thompson(UniformRandom{}));
  CHECK(!is_thompson(SquareStepComposite{}));
  CHECK(!describe(SquareStepComposite{1, ThompsonDiscrete{}}).empty());
}

}  // namespace
}  // namespace tsobs
