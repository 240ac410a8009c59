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
#ifndef TSOBS_REPLICATION_HPP_
#define TSOBS_REPLICATION_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "tsobs/episode.hpp"
#include "tsobs/observer.hpp"

namespace tsobs {

struct ReplicationOptions {
  // Strictly increasing, each in [1, horizon].
  std::vector<std::uint64_t> checkpoints;
  bool keep_trace = false;
  bool snapshots = false;
  bool per_step_gaps = false;
};

// One simulated episode reduced to what the diagnostics and the harness
// consume. Uses the same random streams as run_episode, so the trace is the
// one run_episode(model, kind, horizon, seed) produces.
struct ReplicationOutcome {
  std::uint64_t seed = 0;
  Realization realization;
  FrequencyEstimator observer{1};
  ActionIndex point_estimate = 0;
  // Per checkpoint: sum over steps of f(theta*, A*) - f(theta*, A_t), and
  // the visit counts of every action.
  std::vector<double> cumulative_regret = {};
  std::vector<std::vector<std::uint64_t>> counts_at = {};
  std::vector<double> gaps = {};  // per step, when requested
  // Square steps on which a composite's fixed component acted.
  std::uint64_t forced_plays = 0;
  std::optional<ActionTrace> trace = {};
  std::vector<std::vector<double>> snapshots = {};
  // Learner's exact optimal-action distribution after the last update.
  std::optional<std::vector<double>> terminal_p = {};
};

void check_checkpoints(const std::vector<std::uint64_t>& checkpoints,
                       std::uint64_t horizon);

ReplicationOutcome run_replication(const ModelSpec& model,
                                   const PolicyKind& kind,
                                   std::uint64_t horizon, std::uint64_t seed,
                                   const ReplicationOptions& options);

}  // namespace tsobs

#endif  // TSOBS_REPLICATION_HPP_
