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

#include "tsobs/error.hpp"

namespace tsobs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string describe_base(const BasePolicyKind& kind) {
  return std::visit(
      Overloaded{
          [](const ThompsonDiscrete&) -> std::string {
            return "thompson-discrete";
          },
          [](const ThompsonBeta&) -> std::string { return "thompson-beta"; },
          [](const UniformRandom&) -> std::string { return "uniform"; },
      },
      kind);
}

PolicyState::Belief initial_belief(const BasePolicyKind& kind,
                                   std::size_t num_actions,
                                   const RewardModel& reward,
                                   const ParameterGrid* grid) {
  return std::visit(
      Overloaded{
          [&](const ThompsonDiscrete&) -> PolicyState::Belief {
            if (grid == nullptr) {
              fail(ErrorKind::kUnsupportedInstance,
                   "thompson-discrete needs a parameter grid");
            }
            require(grid->num_actions() == num_actions,
                    "grid action count does not match the action set");
            return DiscreteBelief::from_prior(*grid);
          },
          [&](const ThompsonBeta& beta) -> PolicyState::Belief {
            if (reward.family != RewardFamily::kBernoulli) {
              fail(ErrorKind::kUnsupportedInstance,
                   "thompson-beta needs bernoulli rewards");
            }
            return BetaBelief::uniform(num_actions, beta.prior_alpha,
                                       beta.prior_beta);
          },
          [](const UniformRandom&) -> PolicyState::Belief {
            return std::monostate{};
          },
      },
      kind);
}

}  // namespace

std::string describe(const PolicyKind& kind) {
  if (const auto* c = std::get_if<SquareStepComposite>(&kind)) {
    return "composite(fixed=" + std::to_string(c->fixed_action + 1) +
           ", inner=" + describe_base(c->inner) + ")";
  }
  return std::visit(
      Overloaded{
          [](const SquareStepComposite&) -> std::string { return {}; },
          [](const auto& base) { return describe_base(BasePolicyKind{base}); },
      },
      kind);
}

bool is_thompson(const PolicyKind& kind) {
  return std::holds_alternative<ThompsonDiscrete>(kind) ||
         std::holds_alternative<ThompsonBeta>(kind);
}

std::uint64_t integer_sqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  // Correct the floating-point estimate in either direction.
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

PolicyState::PolicyState(PolicyKind kind, std::size_t num_actions,
                         RewardModel reward,
                         std::shared_ptr<const ParameterGrid> grid)
    : kind_(std::move(kind)),
      num_actions_(num_actions),
      reward_(reward),
      grid_(std::move(grid)) {
  require(num_actions_ >= 1, "policy needs at least one action");
  if (const auto* c = std::get_if<SquareStepComposite>(&kind_)) {
    require(c->fixed_action < num_actions_,
            "composite fixed action out of range");
  }
  belief_ = initial_belief(acting_kind(), num_actions_, reward_, grid_.get());
}

BasePolicyKind PolicyState::acting_kind() const {
  return std::visit(Overloaded{
                        [](const SquareStepComposite& c) -> BasePolicyKind {
                          return c.inner;
                        },
                        [](const auto& base) -> BasePolicyKind { return base; },
                    },
                    kind_);
}

namespace {

ActionIndex select_base(const PolicyState::Belief& belief,
                        const ParameterGrid* grid, std::size_t num_actions,
                        Rng& rng) {
  if (const auto* d = std::get_if<DiscreteBelief>(&belief)) {
    return grid->optimal_action(sample_parameter(*d, rng));
  }
  if (const auto* b = std::get_if<BetaBelief>(&belief)) {
    return argmax_min_index(sample_parameter(*b, rng));
  }
  return static_cast<ActionIndex>(rng.below(num_actions));
}

}  // namespace

ActionIndex PolicyState::select(std::uint64_t t, Rng& rng) const {
  if (const auto* c = std::get_if<SquareStepComposite>(&kind_)) {
    if (is_perfect_square(t)) return c->fixed_action;
  }
  return select_base(belief_, grid_.get(), num_actions_, rng);
}

void PolicyState::observe(std::uint64_t t, ActionIndex a, double reward) {
  require(a < num_actions_, "action index out of range");
  if (!reward_.in_support(reward)) {
    fail(ErrorKind::kInvalidArgument, "reward " + std::to_string(reward) +
                                          " is outside the " + reward_.name() +
                                          " support");
  }
  if (std::holds_alternative<SquareStepComposite>(kind_) &&
      is_perfect_square(t)) {
    return;
  }
  if (auto* d = std::get_if<DiscreteBelief>(&belief_)) {
    *d = update_discrete(*d, *grid_, a, reward);
  } else if (auto* b = std::get_if<BetaBelief>(&belief_)) {
    *b = update_beta(*b, a, reward);
  }
}

std::optional<OptimalActionDistribution>
PolicyState::exact_optimal_action_probability() const {
  if (const auto* d = std::get_if<DiscreteBelief>(&belief_)) {
    return optimal_action_probability(*d, *grid_);
  }
  return std::nullopt;
}

ActionIndex ts_select(const PolicyState& state, Rng& rng) {
  require(is_thompson(state.kind()), "ts_select needs a thompson policy");
  return select_base(state.belief(), state.grid(), state.num_actions(), rng);
}

ActionIndex composite_select(const PolicyState& state, std::uint64_t t,
                             Rng& rng) {
  require(std::holds_alternative<SquareStepComposite>(state.kind()),
          "composite_select needs a square-step composite policy");
  return state.select(t, rng);
}

PolicyState policy_update(const PolicyState& state, std::uint64_t t,
                          ActionIndex a, double reward) {
  PolicyState next = state;
  next.observe(t, a, reward);
  return next;
}

}  // namespace tsobs
