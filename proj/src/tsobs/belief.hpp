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
#ifndef TSOBS_BELIEF_HPP_
#define TSOBS_BELIEF_HPP_

// Posteriors over the unknown parameter and the optimal-action distribution
// p_t(a) = P(A*(theta*) = a | H_t). Beliefs are immutable values; every
// update returns a fresh belief.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tsobs/model.hpp"
#include "tsobs/rng.hpp"

namespace tsobs {

// Exact posterior over a finite ParameterGrid.
class DiscreteBelief {
 public:
  // weights must be finite, nonnegative and sum to 1 within 1e-12.
  explicit DiscreteBelief(std::vector<double> weights);
  static DiscreteBelief from_prior(const ParameterGrid& grid);

  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t m) const { return weights_[m]; }

  friend bool operator==(const DiscreteBelief&,
                         const DiscreteBelief&) = default;

 private:
  struct Unchecked {};
  DiscreteBelief(std::vector<double> weights, Unchecked)
      : weights_(std::move(weights)) {}
  friend DiscreteBelief update_discrete(const DiscreteBelief&,
                                        const ParameterGrid&, ActionIndex,
                                        double);

  std::vector<double> weights_;
};

// Bayes rule. Throws kInvalidArgument for a reward outside the family's
// support or a misaligned belief, and kDegenerateEvidence when every
// parameter assigns the observation zero likelihood.
DiscreteBelief update_discrete(const DiscreteBelief& belief,
                               const ParameterGrid& grid, ActionIndex a,
                               double reward);

// Prior predictive P(r | belief, a) = sum_m w_m * likelihood(r | f(m, a)).
double predictive_probability(const DiscreteBelief& belief,
                              const ParameterGrid& grid, ActionIndex a,
                              double reward);

// Independent Beta posteriors, one per arm, for Bernoulli rewards.
class BetaBelief {
 public:
  explicit BetaBelief(std::vector<std::pair<double, double>> params);
  static BetaBelief uniform(std::size_t num_actions, double alpha = 1.0,
                            double beta = 1.0);

  std::size_t num_actions() const { return params_.size(); }
  double alpha(ActionIndex a) const { return params_[a].first; }
  double beta(ActionIndex a) const { return params_[a].second; }
  const std::vector<std::pair<double, double>>& params() const {
    return params_;
  }

  friend bool operator==(const BetaBelief&, const BetaBelief&) = default;

 private:
  std::vector<std::pair<double, double>> params_;
};

// (alpha_a, beta_a) += (r, 1 - r). reward must be 0 or 1.
BetaBelief update_beta(const BetaBelief& belief, ActionIndex a, double reward);

// Categorical draw from the weights. Consumes one uniform.
ParameterIndex sample_parameter(const DiscreteBelief& belief, Rng& rng);

// One Beta draw per arm: a sampled mean vector.
std::vector<double> sample_parameter(const BetaBelief& belief, Rng& rng);

struct OptimalActionDistribution {
  enum class Estimation { kExact, kMonteCarlo };

  std::vector<double> probs;
  Estimation estimation = Estimation::kExact;
  std::uint64_t n_draws = 0;  // kMonteCarlo only

  // Probability that the optimal action lies in the subset.
  double mass(std::span<const ActionIndex> subset) const;
};

// probs[i] = sum of the weights over the parameters whose optimal action is
// a_i.
OptimalActionDistribution optimal_action_probability(
    const DiscreteBelief& belief, const ParameterGrid& grid);

// Fraction of n_draws sampled mean vectors whose smallest-index argmax is
// a_i. Each entry has standard error at most 1 / (2 sqrt(n_draws)).
OptimalActionDistribution optimal_action_probability_mc(
    const BetaBelief& belief, std::uint64_t n_draws, Rng& rng);

inline constexpr std::uint64_t kDefaultMonteCarloDraws = 10000;

}  // namespace tsobs

#endif  // TSOBS_BELIEF_HPP_
