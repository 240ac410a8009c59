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
#include "tsobs/replication.hpp"

#include "tsobs/error.hpp"

namespace tsobs {

void check_checkpoints(const std::vector<std::uint64_t>& checkpoints,
                       std::uint64_t horizon) {
  std::uint64_t previous = 0;
  for (auto t : checkpoints) {
    require(t > previous,
            "checkpoints must be positive and strictly increasing");
    require(t <= horizon, "checkpoint " + std::to_string(t) +
                              " exceeds the horizon " +
                              std::to_string(horizon));
    previous = t;
  }
}

ReplicationOutcome run_replication(const ModelSpec& model,
                                   const PolicyKind& kind,
                                   std::uint64_t horizon, std::uint64_t seed,
                                   const ReplicationOptions& options) {
  require(horizon >= 1, "horizon must be at least 1");
  check_checkpoints(options.checkpoints, horizon);
  Rng parameter_rng(derive_seed(seed, kParameterStream));
  Rng policy_rng(derive_seed(seed, kPolicyStream));
  Rng env_rng(derive_seed(seed, kEnvironmentStream));

  const std::size_t k = num_actions(model);
  ReplicationOutcome out{.seed = seed,
                         .realization = realize(model, parameter_rng),
                         .observer = FrequencyEstimator(k)};
  PolicyState state = initial_policy_state(model, kind);
  const Environment& env = out.realization.environment;

  if (options.keep_trace) {
    out.trace.emplace(k);
    out.trace->reserve(horizon);
  }
  const bool snapshots =
      options.snapshots && state.exact_optimal_action_probability().has_value();
  if (options.per_step_gaps) out.gaps.reserve(horizon);

  const auto* composite = std::get_if<SquareStepComposite>(&kind);
  double regret = 0.0;
  std::size_t next_checkpoint = 0;
  simulate_steps(
      env, state, horizon, policy_rng, env_rng,
      [&](std::uint64_t t, ActionIndex a, double r, const PolicyState& s) {
        out.observer.record(a);
        if (composite && is_perfect_square(t) && a == composite->fixed_action) {
          ++out.forced_plays;
        }
        const double gap = env.gap(a);
        regret += gap;
        if (options.per_step_gaps) out.gaps.push_back(gap);
        if (out.trace) out.trace->append(a, r);
        if (snapshots) {
          out.snapshots.push_back(s.exact_optimal_action_probability()->probs);
        }
        if (next_checkpoint < options.checkpoints.size() &&
            options.checkpoints[next_checkpoint] == t) {
          out.cumulative_regret.push_back(regret);
          out.counts_at.push_back(out.observer.counts());
          ++next_checkpoint;
        }
      });
  out.point_estimate = point_estimate(out.observer);
  if (auto p = state.exact_optimal_action_probability()) {
    out.terminal_p = std::move(p->probs);
  }
  return out;
}

}  // namespace tsobs
