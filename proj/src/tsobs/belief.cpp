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

#include "tsobs/error.hpp"

namespace tsobs {

namespace {

void check_reward(const RewardModel& model, double reward) {
  if (!model.in_support(reward)) {
    fail(ErrorKind::kInvalidArgument, "reward " + std::to_string(reward) +
                                          " is outside the " + model.name() +
                                          " support");
  }
}

}  // namespace

DiscreteBelief::DiscreteBelief(std::vector<double> weights)
    : weights_(std::move(weights)) {
  require(!weights_.empty(), "belief needs at least one weight");
  double total = 0.0;
  for (double w : weights_) {
    require(std::isfinite(w) && w >= 0.0,
            "belief weights must be finite and nonnegative");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, "belief weights must sum to 1");
}

DiscreteBelief DiscreteBelief::from_prior(const ParameterGrid& grid) {
  return DiscreteBelief({grid.prior().begin(), grid.prior().end()});
}

DiscreteBelief update_discrete(const DiscreteBelief& belief,
                               const ParameterGrid& grid, ActionIndex a,
                               double reward) {
  require(belief.size() == grid.num_parameters(),
          "belief is not aligned with the grid");
  require(a < grid.num_actions(), "action index out of range");
  check_reward(grid.reward(), reward);

  std::vector<double> next(belief.size());
  double total = 0.0;
  for (ParameterIndex m = 0; m < belief.size(); ++m) {
    next[m] = belief[m] * grid.reward().likelihood(reward, grid.mean(m, a));
    total += next[m];
  }
  if (!(total > 0.0)) {
    fail(ErrorKind::kDegenerateEvidence,
         "observation has zero likelihood under every parameter with "
         "positive weight");
  }
  for (double& w : next) w /= total;
  return DiscreteBelief(std::move(next), DiscreteBelief::Unchecked{});
}

double predictive_probability(const DiscreteBelief& belief,
                              const ParameterGrid& grid, ActionIndex a,
                              double reward) {
  require(belief.size() == grid.num_parameters(),
          "belief is not aligned with the grid");
  require(a < grid.num_actions(), "action index out of range");
  double p = 0.0;
  for (ParameterIndex m = 0; m < belief.size(); ++m) {
    p += belief[m] * grid.reward().likelihood(reward, grid.mean(m, a));
  }
  return p;
}

BetaBelief::BetaBelief(std::vector<std::pair<double, double>> params)
    : params_(std::move(params)) {
  require(!params_.empty(), "beta belief needs at least one arm");
  for (const auto& [alpha, beta] : params_) {
    require(std::isfinite(alpha) && std::isfinite(beta) && alpha > 0.0 &&
                beta > 0.0,
            "beta parameters must be finite and positive");
  }
}

BetaBelief BetaBelief::uniform(std::size_t num_actions, double alpha,
                               double beta) {
  return BetaBelief(
      std::vector<std::pair<double, double>>(num_actions, {alpha, beta}));
}

BetaBelief update_beta(const BetaBelief& belief, ActionIndex a, double reward) {
  require(a < belief.num_actions(), "action index out of range");
  require(reward == 0.0 || reward == 1.0,
          "beta-bernoulli reward must be 0 or 1");
  auto params = belief.params();
  params[a].first += reward;
  params[a].second += 1.0 - reward;
  return BetaBelief(std::move(params));
}

ParameterIndex sample_parameter(const DiscreteBelief& belief, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  ParameterIndex last_positive = 0;
  for (ParameterIndex m = 0; m < belief.size(); ++m) {
    if (belief[m] <= 0.0) continue;
    cumulative += belief[m];
    last_positive = m;
    if (u < cumulative) return m;
  }
  // Only reachable when rounding leaves the cumulative sum below u.
  return last_positive;
}

std::vector<double> sample_parameter(const BetaBelief& belief, Rng& rng) {
  std::vector<double> means(belief.num_actions());
  for (ActionIndex a = 0; a < means.size(); ++a) {
    means[a] = rng.beta(belief.alpha(a), belief.beta(a));
  }
  return means;
}

double OptimalActionDistribution::mass(
    std::span<const ActionIndex> subset) const {
  double total = 0.0;
  for (ActionIndex a : subset) {
    require(a < probs.size(), "action index out of range");
    total += probs[a];
  }
  return total;
}

OptimalActionDistribution optimal_action_probability(
    const DiscreteBelief& belief, const ParameterGrid& grid) {
  require(belief.size() == grid.num_parameters(),
          "belief is not aligned with the grid");
  OptimalActionDistribution out;
  out.probs.assign(grid.num_actions(), 0.0);
  for (ParameterIndex m = 0; m < belief.size(); ++m) {
    out.probs[grid.optimal_action(m)] += belief[m];
  }
  return out;
}

OptimalActionDistribution optimal_action_probability_mc(
    const BetaBelief& belief, std::uint64_t n_draws, Rng& rng) {
  require(n_draws >= 1, "n_draws must be at least 1");
  std::vector<std::uint64_t> hits(belief.num_actions(), 0);
  for (std::uint64_t i = 0; i < n_draws; ++i) {
    ++hits[argmax_min_index(sample_parameter(belief, rng))];
  }
  OptimalActionDistribution out;
  out.estimation = OptimalActionDistribution::Estimation::kMonteCarlo;
  out.n_draws = n_draws;
  out.probs.reserve(hits.size());
  for (auto h : hits) {
    out.probs.push_back(static_cast<double>(h) / static_cast<double>(n_draws));
  }
  return out;
}

}  // namespace tsobs
