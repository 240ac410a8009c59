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
#include "tsobs/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tsobs/error.hpp"

namespace tsobs {

bool RewardModel::in_support(double reward) const {
  if (family == RewardFamily::kBernoulli) return reward == 0.0 || reward == 1.0;
  return std::isfinite(reward);
}

double RewardModel::likelihood(double reward, double mean) const {
  if (family == RewardFamily::kBernoulli) {
    return reward == 1.0 ? mean : 1.0 - mean;
  }
  const double z = (reward - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double RewardModel::sample(double mean, Rng& rng) const {
  if (family == RewardFamily::kBernoulli) {
    return rng.uniform() < mean ? 1.0 : 0.0;
  }
  return mean + sigma * rng.normal();
}

std::string RewardModel::name() const {
  return family == RewardFamily::kBernoulli ? "bernoulli" : "gaussian";
}

ActionIndex argmax_min_index(std::span<const double> values) {
  ActionIndex best = 0;
  for (ActionIndex a = 1; a < values.size(); ++a) {
    if (values[a] > values[best]) best = a;
  }
  return best;
}

ParameterGrid::ParameterGrid(std::vector<double> prior,
                             const std::vector<std::vector<double>>& means,
                             RewardModel reward)
    : prior_(std::move(prior)), reward_(reward) {
  require(!means.empty(), "parameter grid needs at least one parameter");
  require(prior_.size() == means.size(),
          "prior has " + std::to_string(prior_.size()) +
              " entries but the means table has " +
              std::to_string(means.size()) + " rows");
  num_actions_ = means.front().size();
  require(num_actions_ >= 1, "parameter grid needs at least one action");
  means_.reserve(means.size() * num_actions_);
  for (std::size_t m = 0; m < means.size(); ++m) {
    require(means[m].size() == num_actions_,
            "means row " + std::to_string(m + 1) + " has " +
                std::to_string(means[m].size()) + " entries, expected " +
                std::to_string(num_actions_));
    means_.insert(means_.end(), means[m].begin(), means[m].end());
  }
  optimal_.reserve(prior_.size());
  for (ParameterIndex m = 0; m < prior_.size(); ++m) {
    optimal_.push_back(argmax_min_index(row(m)));
  }
}

std::vector<std::vector<double>> ParameterGrid::means_table() const {
  std::vector<std::vector<double>> table;
  for (ParameterIndex m = 0; m < num_parameters(); ++m) {
    table.emplace_back(row(m).begin(), row(m).end());
  }
  return table;
}

namespace {

void check_indices(const ParameterGrid& grid, ParameterIndex m, ActionIndex a) {
  require(m < grid.num_parameters(),
          "parameter index " + std::to_string(m) + " out of range [0, " +
              std::to_string(grid.num_parameters()) + ")");
  require(a < grid.num_actions(), "action index " + std::to_string(a) +
                                      " out of range [0, " +
                                      std::to_string(grid.num_actions()) + ")");
}

}  // namespace

double mean_reward(const ParameterGrid& grid, ParameterIndex m, ActionIndex a) {
  check_indices(grid, m, a);
  return grid.mean(m, a);
}

ActionIndex optimal_action(const ParameterGrid& grid, ParameterIndex m) {
  check_indices(grid, m, 0);
  return grid.optimal_action(m);
}

std::vector<std::vector<ParameterIndex>> optimal_partition(
    const ParameterGrid& grid) {
  std::vector<std::vector<ParameterIndex>> partition(grid.num_actions());
  for (ParameterIndex m = 0; m < grid.num_parameters(); ++m) {
    partition[grid.optimal_action(m)].push_back(m);
  }
  return partition;
}

double sample_reward(const ParameterGrid& grid, ParameterIndex m, ActionIndex a,
                     Rng& rng) {
  check_indices(grid, m, a);
  return grid.reward().sample(grid.mean(m, a), rng);
}

std::vector<Violation> validate_reward_model(const RewardModel& reward) {
  std::vector<Violation> out;
  if (reward.family == RewardFamily::kGaussian &&
      !(std::isfinite(reward.sigma) && reward.sigma > 0.0)) {
    out.push_back({"sigma", "gaussian sigma must be finite and positive"});
  }
  return out;
}

std::vector<Violation> validate_model(const ParameterGrid& grid) {
  std::vector<Violation> out = validate_reward_model(grid.reward());
  double total = 0.0;
  for (ParameterIndex m = 0; m < grid.num_parameters(); ++m) {
    const double w = grid.prior()[m];
    if (!std::isfinite(w) || w < 0.0) {
      out.push_back({"prior", "prior weight " + std::to_string(m + 1) +
                                  " must be finite and nonnegative"});
    }
    total += w;
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "prior weights sum to " << total << ", expected 1";
    out.push_back({"prior", msg.str()});
  }
  const bool bernoulli = grid.reward().family == RewardFamily::kBernoulli;
  for (ParameterIndex m = 0; m < grid.num_parameters(); ++m) {
    for (ActionIndex a = 0; a < grid.num_actions(); ++a) {
      const double f = grid.mean(m, a);
      const std::string where =
          "mean (" + std::to_string(m + 1) + ", " + std::to_string(a + 1) + ")";
      if (!std::isfinite(f)) {
        out.push_back({"means", where + " is not finite"});
      } else if (bernoulli && (f < 0.0 || f > 1.0)) {
        out.push_back({"means", where + " lies outside [0, 1]"});
      }
    }
  }
  return out;
}

void check_model(const ParameterGrid& grid) {
  const auto violations = validate_model(grid);
  if (violations.empty()) return;
  std::string msg = "invalid model:";
  for (const auto& v : violations)
    msg += " [" + v.field + "] " + v.message + ";";
  fail(ErrorKind::kInvalidArgument, msg);
}

Environment::Environment(std::vector<double> means, RewardModel reward)
    : means_(std::move(means)), reward_(reward) {
  require(!means_.empty(), "environment needs at least one action");
  for (double f : means_) {
    require(std::isfinite(f), "environment means must be finite");
    if (reward_.family == RewardFamily::kBernoulli) {
      require(f >= 0.0 && f <= 1.0, "bernoulli means must lie in [0, 1]");
    }
  }
  optimal_ = argmax_min_index(means_);
}

Environment Environment::from_grid(const ParameterGrid& grid,
                                   TrueParameter theta) {
  require(theta.index < grid.num_parameters(),
          "true parameter index out of range");
  const auto row = grid.row(theta.index);
  return Environment({row.begin(), row.end()}, grid.reward());
}

void ActionTrace::append(ActionIndex action, double reward) {
  records_.push_back({records_.size() + 1, action, reward});
}

std::vector<ActionIndex> ActionTrace::actions() const {
  std::vector<ActionIndex> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.action);
  return out;
}

std::vector<Violation> validate_trace(const ActionTrace& trace,
                                      const RewardModel& reward) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& r = trace[i];
    const std::string where = "record " + std::to_string(i + 1);
    if (r.t != i + 1)
      out.push_back({"t", where + " has a non-contiguous time"});
    if (r.action >= trace.num_actions()) {
      out.push_back({"action", where + " has an out-of-range action"});
    }
    if (!reward.in_support(r.reward)) {
      out.push_back({"reward", where + " has a reward outside the support"});
    }
  }
  return out;
}

}  // namespace tsobs
