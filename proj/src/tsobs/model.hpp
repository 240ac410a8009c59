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
#ifndef TSOBS_MODEL_HPP_
#define TSOBS_MODEL_HPP_

// Bandit environment: the ordered action set, a finite parameter grid with a
// prior and a mean-reward table, reward sampling, and the optimal-action map.
//
// Actions and parameters are 0-based inside the library. Files and the CLI
// print them 1-based (a_1..a_K, theta_1..theta_M).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsobs/rng.hpp"

namespace tsobs {

using ActionIndex = std::size_t;
using ParameterIndex = std::size_t;

enum class RewardFamily { kBernoulli, kGaussian };

// Conditional law of a reward given its mean. Gaussian rewards have a known,
// shared standard deviation.
struct RewardModel {
  RewardFamily family = RewardFamily::kBernoulli;
  double sigma = 1.0;

  static RewardModel bernoulli() { return {}; }
  static RewardModel gaussian(double sigma) {
    return {RewardFamily::kGaussian, sigma};
  }

  bool in_support(double reward) const;
  // Probability mass (Bernoulli) or density (Gaussian) of reward.
  double likelihood(double reward, double mean) const;
  double sample(double mean, Rng& rng) const;
  std::string name() const;
};

// The realized parameter of a run.
struct TrueParameter {
  ParameterIndex index = 0;
};

// Index of the first maximum. Ties are resolved by exact equality of the
// stored values, towards the smallest index.
ActionIndex argmax_min_index(std::span<const double> values);

// Finite parameter set with prior weights and the M x K table of means.
// Immutable after construction.
class ParameterGrid {
 public:
  // Throws ErrorKind::kInvalidArgument on structural problems (no
  // parameters, no actions, ragged rows, prior length mismatch). Value-level
  // problems are reported by validate_model instead.
  ParameterGrid(std::vector<double> prior,
                const std::vector<std::vector<double>>& means,
                RewardModel reward = RewardModel::bernoulli());

  std::size_t num_parameters() const { return prior_.size(); }
  std::size_t num_actions() const { return num_actions_; }
  const RewardModel& reward() const { return reward_; }
  std::span<const double> prior() const { return prior_; }

  // Unchecked accessors.
  double mean(ParameterIndex m, ActionIndex a) const {
    return means_[m * num_actions_ + a];
  }
  std::span<const double> row(ParameterIndex m) const {
    return {means_.data() + m * num_actions_, num_actions_};
  }
  ActionIndex optimal_action(ParameterIndex m) const { return optimal_[m]; }

  std::vector<std::vector<double>> means_table() const;

 private:
  std::vector<double> prior_;
  std::vector<double> means_;
  std::size_t num_actions_ = 0;
  RewardModel reward_;
  std::vector<ActionIndex> optimal_;
};

// Checked table lookup f(theta, a).
double mean_reward(const ParameterGrid& grid, ParameterIndex m, ActionIndex a);

// Smallest-index maximizer of row m.
ActionIndex optimal_action(const ParameterGrid& grid, ParameterIndex m);

// partition[i] holds, in increasing order, the parameters whose optimal
// action is a_i. Entries may be empty.
std::vector<std::vector<ParameterIndex>> optimal_partition(
    const ParameterGrid& grid);

double sample_reward(const ParameterGrid& grid, ParameterIndex m, ActionIndex a,
                     Rng& rng);

struct Violation {
  std::string field;
  std::string message;
};

std::vector<Violation> validate_model(const ParameterGrid& grid);
std::vector<Violation> validate_reward_model(const RewardModel& reward);

// Throws ErrorKind::kInvalidArgument listing every violation.
void check_model(const ParameterGrid& grid);

// The environment a simulated agent faces: the true mean vector and the
// reward law. Built from a grid row or given directly (Beta-Bernoulli runs).
class Environment {
 public:
  Environment(std::vector<double> means, RewardModel reward);
  static Environment from_grid(const ParameterGrid& grid, TrueParameter theta);

  std::size_t num_actions() const { return means_.size(); }
  std::span<const double> means() const { return means_; }
  const RewardModel& reward() const { return reward_; }
  ActionIndex optimal_action() const { return optimal_; }
  // f(theta*, A*) - f(theta*, a); always >= 0.
  double gap(ActionIndex a) const { return means_[optimal_] - means_[a]; }
  double sample(ActionIndex a, Rng& rng) const {
    return reward_.sample(means_[a], rng);
  }

 private:
  std::vector<double> means_;
  RewardModel reward_;
  ActionIndex optimal_ = 0;
};

struct TraceRecord {
  std::uint64_t t = 0;
  ActionIndex action = 0;
  double reward = 0.0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// The history H_T. Times are 1..T without gaps; append assigns them.
class ActionTrace {
 public:
  ActionTrace() = default;
  explicit ActionTrace(std::size_t num_actions) : num_actions_(num_actions) {}

  void append(ActionIndex action, double reward);
  void reserve(std::size_t n) { records_.reserve(n); }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t num_actions() const { return num_actions_; }
  const std::vector<TraceRecord>& records() const { return records_; }
  const TraceRecord& operator[](std::size_t i) const { return records_[i]; }

  // The action sequence alone, which is all an external observer sees.
  std::vector<ActionIndex> actions() const;

  friend bool operator==(const ActionTrace&, const ActionTrace&) = default;

 private:
  std::size_t num_actions_ = 0;
  std::vector<TraceRecord> records_;
};

// Checks the trace invariants against a reward law: contiguous times,
// valid actions, rewards in support.
std::vector<Violation> validate_trace(const ActionTrace& trace,
                                      const RewardModel& reward);

}  // namespace tsobs

#endif  // TSOBS_MODEL_HPP_
