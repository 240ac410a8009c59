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

#include "tsobs/error.hpp"

namespace tsobs {

std::size_t num_actions(const ModelSpec& model) {
  if (const auto* g = std::get_if<GridModel>(&model)) {
    return g->grid->num_actions();
  }
  return std::get<BetaBernoulliModel>(model).num_actions;
}

RewardModel reward_model(const ModelSpec& model) {
  if (const auto* g = std::get_if<GridModel>(&model)) return g->grid->reward();
  return RewardModel::bernoulli();
}

TrueParameter draw_true_parameter(const ParameterGrid& grid, Rng& rng) {
  return {sample_parameter(DiscreteBelief::from_prior(grid), rng)};
}

Realization realize(const ModelSpec& model, Rng& parameter_rng) {
  if (const auto* g = std::get_if<GridModel>(&model)) {
    require(g->grid != nullptr, "grid model has no grid");
    const TrueParameter theta =
        g->true_parameter ? TrueParameter{*g->true_parameter}
                          : draw_true_parameter(*g->grid, parameter_rng);
    return {Environment::from_grid(*g->grid, theta), theta.index};
  }
  const auto& b = std::get<BetaBernoulliModel>(model);
  if (b.true_means) {
    require(b.true_means->size() == b.num_actions,
            "true_means length does not match the arm count");
    return {Environment(*b.true_means, RewardModel::bernoulli()), std::nullopt};
  }
  std::vector<double> means(b.num_actions);
  for (double& f : means) f = parameter_rng.beta(b.prior_alpha, b.prior_beta);
  return {Environment(std::move(means), RewardModel::bernoulli()),
          std::nullopt};
}

PolicyState initial_policy_state(const ModelSpec& model,
                                 const PolicyKind& kind) {
  std::shared_ptr<const ParameterGrid> grid;
  if (const auto* g = std::get_if<GridModel>(&model)) grid = g->grid;
  return PolicyState(kind, num_actions(model), reward_model(model),
                     std::move(grid));
}

void simulate_steps(const Environment& environment, PolicyState& state,
                    std::uint64_t horizon, Rng& policy_rng, Rng& env_rng,
                    const StepCallback& on_step) {
  require(environment.num_actions() == state.num_actions(),
          "policy and environment disagree on the number of actions");
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const ActionIndex a = state.select(t, policy_rng);
    const double r = environment.sample(a, env_rng);
    if (on_step) on_step(t, a, r, state);
    state.observe(t, a, r);
  }
}

EpisodeResult run_episode(const ModelSpec& model, const PolicyKind& kind,
                          std::uint64_t horizon, std::uint64_t seed,
                          bool snapshots) {
  require(horizon >= 1, "horizon must be at least 1");
  Rng parameter_rng(derive_seed(seed, kParameterStream));
  Rng policy_rng(derive_seed(seed, kPolicyStream));
  Rng env_rng(derive_seed(seed, kEnvironmentStream));

  EpisodeResult out{realize(model, parameter_rng),
                    ActionTrace(num_actions(model)),
                    {},
                    initial_policy_state(model, kind)};
  out.trace.reserve(horizon);
  const bool exact =
      snapshots &&
      out.final_state.exact_optimal_action_probability().has_value();
  if (exact) out.snapshots.reserve(horizon);

  simulate_steps(
      out.realization.environment, out.final_state, horizon, policy_rng,
      env_rng,
      [&](std::uint64_t, ActionIndex a, double r, const PolicyState& state) {
        out.trace.append(a, r);
        if (exact) {
          out.snapshots.push_back(
              state.exact_optimal_action_probability()->probs);
        }
      });
  return out;
}

EpisodeResult run_episode(const ParameterGrid& grid, TrueParameter theta,
                          const PolicyKind& kind, std::uint64_t horizon,
                          std::uint64_t seed, bool snapshots) {
  check_model(grid);
  require(theta.index < grid.num_parameters(),
          "true parameter index out of range");
  GridModel model{std::make_shared<const ParameterGrid>(grid), theta.index};
  return run_episode(ModelSpec{model}, kind, horizon, seed, snapshots);
}

}  // namespace tsobs
