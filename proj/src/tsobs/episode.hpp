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
#ifndef TSOBS_EPISODE_HPP_
#define TSOBS_EPISODE_HPP_

// The interaction loop: select, sample a reward under the true parameter,
// update. Every episode owns three independent random streams derived from
// its seed, so the environment, the learner and the draw of theta* never
// perturb each other.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "tsobs/model.hpp"
#include "tsobs/policy.hpp"

namespace tsobs {

enum Stream : std::uint64_t {
  kEnvironmentStream = 0,
  kPolicyStream = 1,
  kParameterStream = 2,
};

// Finite grid; the learner's model is the grid itself. true_parameter unset
// means theta* is drawn from the grid prior.
struct GridModel {
  std::shared_ptr<const ParameterGrid> grid;
  std::optional<ParameterIndex> true_parameter;
};

// Independent Bernoulli arms with Beta(prior_alpha, prior_beta) priors.
// true_means unset means every arm mean is drawn from the prior.
struct BetaBernoulliModel {
  std::size_t num_actions = 2;
  double prior_alpha = 1.0;
  double prior_beta = 1.0;
  std::optional<std::vector<double>> true_means;
};

using ModelSpec = std::variant<GridModel, BetaBernoulliModel>;

std::size_t num_actions(const ModelSpec& model);
RewardModel reward_model(const ModelSpec& model);

struct Realization {
  Environment environment;
  std::optional<ParameterIndex> true_parameter;  // grid models only
};

// Draws theta* when the model asks for it; otherwise consumes nothing.
Realization realize(const ModelSpec& model, Rng& parameter_rng);
TrueParameter draw_true_parameter(const ParameterGrid& grid, Rng& rng);

PolicyState initial_policy_state(const ModelSpec& model,
                                 const PolicyKind& kind);

// Called once per step after the reward is drawn and before the learner
// absorbs it; state still holds the H_{t-1} posterior.
using StepCallback =
    std::function<void(std::uint64_t t, ActionIndex action, double reward,
                       const PolicyState& state)>;

void simulate_steps(const Environment& environment, PolicyState& state,
                    std::uint64_t horizon, Rng& policy_rng, Rng& env_rng,
                    const StepCallback& on_step);

struct EpisodeResult {
  Realization realization;
  ActionTrace trace;
  // snapshots[t-1] is the learner's optimal-action distribution given
  // H_{t-1}, which for a pure Thompson learner is the law of A_t. Filled only
  // when requested and the learner belief is exact. A composite reports its
  // inner belief.
  std::vector<std::vector<double>> snapshots;
  PolicyState final_state;
};

EpisodeResult run_episode(const ModelSpec& model, const PolicyKind& kind,
                          std::uint64_t horizon, std::uint64_t seed,
                          bool snapshots = false);

EpisodeResult run_episode(const ParameterGrid& grid, TrueParameter theta,
                          const PolicyKind& kind, std::uint64_t horizon,
                          std::uint64_t seed, bool snapshots = false);

}  // namespace tsobs

#endif  // TSOBS_EPISODE_HPP_
