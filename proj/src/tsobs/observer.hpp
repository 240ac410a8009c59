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
#ifndef TSOBS_OBSERVER_HPP_
#define TSOBS_OBSERVER_HPP_

// External-observer estimate of the optimal action. The observer sees the
// agent's action sequence and nothing else: no rewards, beliefs or
// parameters enter this module. For a Thompson agent with sublinear
// Bayesian regret, N_{B,T} / T converges almost surely to the indicator that
// the optimal action lies in B.

#include <cstdint>
#include <span>
#include <vector>

#include "tsobs/model.hpp"

namespace tsobs {

// Set of action indices, stored sorted and without duplicates.
class ActionSubset {
 public:
  ActionSubset() = default;
  // Throws kInvalidArgument when an index is >= num_actions.
  ActionSubset(std::vector<ActionIndex> actions, std::size_t num_actions);
  static ActionSubset singleton(ActionIndex a, std::size_t num_actions);
  static ActionSubset all(std::size_t num_actions);

  // Set complement within {0, .., num_actions - 1}.
  ActionSubset complement(std::size_t num_actions) const;

  std::span<const ActionIndex> actions() const { return actions_; }
  bool contains(ActionIndex a) const;
  bool empty() const { return actions_.empty(); }

 private:
  std::vector<ActionIndex> actions_;
};

class FrequencyEstimator {
 public:
  explicit FrequencyEstimator(std::size_t num_actions)
      : counts_(num_actions, 0) {}

  std::size_t num_actions() const { return counts_.size(); }
  std::uint64_t total() const { return total_; }
  std::uint64_t count(ActionIndex a) const { return counts_.at(a); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  void record(ActionIndex a);
  // Count-wise sum. Associative and commutative.
  void merge(const FrequencyEstimator& other);

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Value-returning record.
FrequencyEstimator record(const FrequencyEstimator& est, ActionIndex a);

// N_{B,T} / T. Throws kUndefinedAtZero before the first record.
double frequency(const FrequencyEstimator& est, const ActionSubset& subset);

// Smallest index among the most visited actions. Throws kUndefinedAtZero
// before the first record.
ActionIndex point_estimate(const FrequencyEstimator& est);

struct CurvePoint {
  std::uint64_t t = 0;
  double value = 0.0;
};

struct ConvergenceCurve {
  std::vector<CurvePoint> points;
};

// Frequency of the subset within the first t actions at each checkpoint.
// Checkpoints must be strictly increasing, >= 1 and <= actions.size().
ConvergenceCurve convergence_curve(std::span<const ActionIndex> actions,
                                   std::size_t num_actions,
                                   const ActionSubset& subset,
                                   std::span<const std::uint64_t> checkpoints);

}  // namespace tsobs

#endif  // TSOBS_OBSERVER_HPP_
