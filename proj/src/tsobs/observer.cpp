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
#include "tsobs/observer.hpp"

#include <algorithm>

#include "tsobs/error.hpp"

namespace tsobs {

ActionSubset::ActionSubset(std::vector<ActionIndex> actions,
                           std::size_t num_actions)
    : actions_(std::move(actions)) {
  for (ActionIndex a : actions_) {
    require(a < num_actions, "subset action " + std::to_string(a + 1) +
                                 " exceeds the action count " +
                                 std::to_string(num_actions));
  }
  std::sort(actions_.begin(), actions_.end());
  actions_.erase(std::unique(actions_.begin(), actions_.end()), actions_.end());
}

ActionSubset ActionSubset::singleton(ActionIndex a, std::size_t num_actions) {
  return ActionSubset({a}, num_actions);
}

ActionSubset ActionSubset::all(std::size_t num_actions) {
  std::vector<ActionIndex> v(num_actions);
  for (ActionIndex a = 0; a < num_actions; ++a) v[a] = a;
  return ActionSubset(std::move(v), num_actions);
}

ActionSubset ActionSubset::complement(std::size_t num_actions) const {
  std::vector<ActionIndex> v;
  for (ActionIndex a = 0; a < num_actions; ++a) {
    if (!contains(a)) v.push_back(a);
  }
  return ActionSubset(std::move(v), num_actions);
}

bool ActionSubset::contains(ActionIndex a) const {
  return std::binary_search(actions_.begin(), actions_.end(), a);
}

void FrequencyEstimator::record(ActionIndex a) {
  require(a < counts_.size(), "action index out of range");
  ++counts_[a];
  ++total_;
}

void FrequencyEstimator::merge(const FrequencyEstimator& other) {
  require(other.num_actions() == num_actions(),
          "cannot merge estimators over different action sets");
  for (std::size_t a = 0; a < counts_.size(); ++a)
    counts_[a] += other.counts_[a];
  total_ += other.total_;
}

FrequencyEstimator record(const FrequencyEstimator& est, ActionIndex a) {
  FrequencyEstimator next = est;
  next.record(a);
  return next;
}

double frequency(const FrequencyEstimator& est, const ActionSubset& subset) {
  if (est.total() == 0) {
    fail(ErrorKind::kUndefinedAtZero, "frequency is undefined at T = 0");
  }
  std::uint64_t hits = 0;
  for (ActionIndex a : subset.actions()) hits += est.count(a);
  return static_cast<double>(hits) / static_cast<double>(est.total());
}

ActionIndex point_estimate(const FrequencyEstimator& est) {
  if (est.total() == 0) {
    fail(ErrorKind::kUndefinedAtZero, "point estimate is undefined at T = 0");
  }
  const auto& c = est.counts();
  // max_element returns the first maximum.
  return static_cast<ActionIndex>(std::max_element(c.begin(), c.end()) -
                                  c.begin());
}

ConvergenceCurve convergence_curve(std::span<const ActionIndex> actions,
                                   std::size_t num_actions,
                                   const ActionSubset& subset,
                                   std::span<const std::uint64_t> checkpoints) {
  ConvergenceCurve curve;
  curve.points.reserve(checkpoints.size());
  FrequencyEstimator est(num_actions);
  std::uint64_t previous = 0;
  for (std::uint64_t t : checkpoints) {
    require(t >= 1 && t > previous,
            "checkpoints must be positive and strictly increasing");
    if (t > actions.size()) {
      fail(ErrorKind::kInvalidArgument, "checkpoint " + std::to_string(t) +
                                            " is beyond the trace length " +
                                            std::to_string(actions.size()));
    }
    for (std::uint64_t i = previous; i < t; ++i) est.record(actions[i]);
    curve.points.push_back({t, frequency(est, subset)});
    previous = t;
  }
  return curve;
}

}  // namespace tsobs
