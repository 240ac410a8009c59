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
#include "tsobs/episode.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tsobs/replication.hpp"

namespace tsobs {
namespace {

TEST_CASE("T = 1 with a point-mass prior plays A*") {
  ParameterGrid g({0.0, 1.0}, {{0.9, 0.1}, {0.2, 0.7}});
  auto res = run_episode(g, TrueParameter{1}, ThompsonDiscrete{}, 1, 5);
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].action == 1);
  CHECK(res.trace[0].t == 1);
}

TEST_CASE("run_episode is deterministic in the seed") {
  auto g = std::make_shared<const ParameterGrid>(
      std::vector<double>{0.5, 0.5},
      std::vector<std::vector<double>>{{0.9, 0.1}, {0.1, 0.9}});
  ModelSpec model = GridModel{g, std::nullopt};
  auto a = run_episode(model, ThompsonDiscrete{}, 200, 77, true);
  auto b = run_episode(model, ThompsonDiscrete{}, 200, 77, true);
  CHECK(a.trace == b.trace);
  CHECK(a.snapshots == b.snapshots);
  CHECK(a.snapshots.size() == 200);
  auto c = run_episode(model, ThompsonDiscrete{}, 200, 78, true);
  CHECK(!(a.trace == c.trace &&
          a.realization.true_parameter == c.realization.true_parameter));

  ModelSpec beta = BetaBernoulliModel{3, 1.0, 1.0, std::nullopt};
  auto d = run_episode(beta, ThompsonBeta{}, 100, 3);
  auto e = run_episode(beta, ThompsonBeta{}, 100, 3);
  CHECK(d.trace == e.trace);
  CHECK(d.snapshots.empty());
}

TEST_CASE("snapshots hold the exact p-vector given the previous history") {
  std::vector<double> prior{0.3, 0.7};
  oracle::Table means{{0.8, 0.4}, {0.3, 0.6}};
  ParameterGrid g(prior, means);
  auto res = run_episode(g, TrueParameter{0}, ThompsonDiscrete{}, 30, 9, true);
  oracle::History h;
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    auto p =
        oracle::optimal_probability(oracle::posterior(prior, means, h), means);
    CHECK(res.snapshots[i][0] == doctest::Approx(p[0]).epsilon(1e-12));
    h.emplace_back(res.trace[i].action, static_cast<int>(res.trace[i].reward));
  }
}

TEST_CASE("distribution of (A1, r1, A2) matches the joint oracle") {
  // Symmetric instance with theta* drawn from the prior, so the law of the
  // history is the Bayes mixture the oracle computes.
  std::vector<double> prior{0.5, 0.5};
  oracle::Table means{{0.9, 0.1}, {0.1, 0.9}};
  auto g = std::make_shared<const ParameterGrid>(prior, means);
  ModelSpec model = GridModel{g, std::nullopt};
  const int n = 100000;
  std::map<std::tuple<std::size_t, int, std::size_t>, int> counts;
  for (int i = 0; i < n; ++i) {
    auto res = run_episode(model, ThompsonDiscrete{}, 2, derive_seed(2024, i));
    ++counts[{res.trace[0].action, static_cast<int>(res.trace[0].reward),
              res.trace[1].action}];
  }
  for (std::size_t a1 = 0; a1 < 2; ++a1) {
    for (int r1 = 0; r1 < 2; ++r1) {
      for (std::size_t a2 = 0; a2 < 2; ++a2) {
        // Marginalize r2 out of the depth-2 oracle.
        double p = 0.0;
        for (int r2 = 0; r2 < 2; ++r2) {
          p += oracle::history_probability(prior, means, {{a1, r1}, {a2, r2}});
        }
        const double emp = counts[{a1, r1, a2}] / double(n);
        const double se = std::sqrt(p * (1 - p) / n);
        CHECK(std::abs(emp - p) < 3 * se);
      }
    }
  }
}

TEST_CASE("replication regret and counts") {
  auto g = std::make_shared<const ParameterGrid>(
      std::vector<double>{0.5, 0.5},
      std::vector<std::vector<double>>{{0.9, 0.1}, {0.1, 0.9}});
  ModelSpec model = GridModel{g, 0};
  ReplicationOptions opts;
  opts.checkpoints = {10, 100};
  opts.keep_trace = true;
  opts.per_step_gaps = true;
  auto o = run_replication(model, UniformRandom{}, 100, 4, opts);
  REQUIRE(o.trace.has_value());
  double regret = 0.0;
  std::vector<std::uint64_t> counts(2, 0);
  for (const auto& rec : o.trace->records()) {
    regret += rec.action == 0 ? 0.0 : 0.8;
    ++counts[rec.action];
    if (rec.t == 10) {
      CHECK(o.cumulative_regret[0] == doctest::Approx(regret));
      CHECK(o.counts_at[0] == counts);
    }
  }
  CHECK(o.cumulative_regret[1] == doctest::Approx(regret));
  CHECK(o.counts_at[1] == counts);
  CHECK(o.gaps.size() == 100);
  CHECK(o.observer.total() == 100);

  // The replication runs the same streams as run_episode.
  auto ep = run_episode(model, UniformRandom{}, 100, 4);
  CHECK(ep.trace == *o.trace);
  CHECK_THROWS(check_checkpoints({10, 10}, 100));
  CHECK_THROWS(check_checkpoints({101}, 100));
  CHECK_THROWS(check_checkpoints({0}, 100));
}

}  // namespace
}  // namespace tsobs
