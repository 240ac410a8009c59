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
#ifndef TSOBS_POLICY_HPP_
#define TSOBS_POLICY_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "tsobs/belief.hpp"
#include "tsobs/model.hpp"
#include "tsobs/rng.hpp"

namespace tsobs {

// Thompson sampling over the exact posterior of a ParameterGrid.
struct ThompsonDiscrete {};

// Thompson sampling with independent Beta priors (Bernoulli rewards).
struct ThompsonBeta {
  double prior_alpha = 1.0;
  double prior_beta = 1.0;
};

// Uniform random play; a linear-regret negative control.
struct UniformRandom {};

using BasePolicyKind =
    std::variant<ThompsonDiscrete, ThompsonBeta, UniformRandom>;

// Plays fixed_action at every perfect-square step t = i^2 and the inner
// policy elsewhere. Neither component sees the other's observations. The
// inner kind is a BasePolicyKind, so composites cannot nest.
struct SquareStepComposite {
  ActionIndex fixed_action = 0;
  BasePolicyKind inner = ThompsonDiscrete{};
};

using PolicyKind = std::variant<ThompsonDiscrete, ThompsonBeta, UniformRandom,
                                SquareStepComposite>;

std::string describe(const PolicyKind& kind);
bool is_thompson(const PolicyKind& kind);

std::uint64_t integer_sqrt(std::uint64_t n) noexcept;
inline bool is_perfect_square(std::uint64_t t) noexcept {
  const auto r = integer_sqrt(t);
  return r * r == t;
}

// Learner state. For a composite, the belief is the inner policy's belief
// and it only ever absorbs observations from non-square steps.
class PolicyState {
 public:
  using Belief = std::variant<std::monostate, DiscreteBelief, BetaBelief>;

  // grid is required for ThompsonDiscrete (alone or as the inner policy)
  // and must have num_actions actions. Throws kInvalidArgument or
  // kUnsupportedInstance when the kind does not fit the model.
  PolicyState(PolicyKind kind, std::size_t num_actions, RewardModel reward,
              std::shared_ptr<const ParameterGrid> grid = nullptr);

  const PolicyKind& kind() const { return kind_; }
  std::size_t num_actions() const { return num_actions_; }
  const RewardModel& reward() const { return reward_; }
  const Belief& belief() const { return belief_; }
  const ParameterGrid* grid() const { return grid_.get(); }

  // Draws A_t. Consumes policy randomness only when the acting component
  // is randomized.
  ActionIndex select(std::uint64_t t, Rng& rng) const;

  // Absorbs the step-t observation in place.
  void observe(std::uint64_t t, ActionIndex a, double reward);

  // p_t over actions when the learner's belief admits exact computation.
  std::optional<OptimalActionDistribution> exact_optimal_action_probability()
      const;

 private:
  BasePolicyKind acting_kind() const;

  PolicyKind kind_;
  std::size_t num_actions_;
  RewardModel reward_;
  std::shared_ptr<const ParameterGrid> grid_;
  Belief belief_;
};

// Thompson step: sample from the belief, play the sampled optimal action.
ActionIndex ts_select(const PolicyState& state, Rng& rng);

// Square steps return the fixed action without touching the inner policy
// or the rng; other steps delegate to the inner policy.
ActionIndex composite_select(const PolicyState& state, std::uint64_t t,
                             Rng& rng);

// Value-returning form of PolicyState::observe.
PolicyState policy_update(const PolicyState& state, std::uint64_t t,
                          ActionIndex a, double reward);

}  // namespace tsobs

#endif  // TSOBS_POLICY_HPP_
