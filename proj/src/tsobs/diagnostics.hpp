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
#ifndef TSOBS_DIAGNOSTICS_HPP_
#define TSOBS_DIAGNOSTICS_HPP_

// Empirical checks of the Thompson sampling convergence results.
//
// Limit statements cannot be observed at T = infinity. The exact checks
// (enumeration, tower residuals) hold at every finite horizon; the
// statistical reports are finite-T surrogates and are labelled as such by
// their callers.

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "tsobs/belief.hpp"
#include "tsobs/episode.hpp"
#include "tsobs/model.hpp"
#include "tsobs/policy.hpp"

namespace tsobs {

// ---------------------------------------------------------------------------
// Exact enumeration

inline constexpr std::size_t kNoParent =
    std::numeric_limits<std::size_t>::max();

struct EnumerationNode {
  std::size_t parent = kNoParent;
  std::size_t depth = 0;
  // The step that leads into this node; meaningless at the root.
  ActionIndex action = 0;
  double reward = 0.0;
  // P(action, reward | parent history) and P(history).
  double branch_probability = 1.0;
  double probability = 1.0;
  DiscreteBelief belief;
  std::vector<double> p_vector;
  std::vector<std::size_t> children;
};

class EnumerationTree {
 public:
  EnumerationTree(std::size_t horizon, std::size_t num_actions)
      : horizon_(horizon), num_actions_(num_actions) {}

  std::size_t horizon() const { return horizon_; }
  std::size_t num_actions() const { return num_actions_; }
  const std::vector<EnumerationNode>& nodes() const { return nodes_; }
  const EnumerationNode& root() const { return nodes_.front(); }
  const EnumerationNode& operator[](std::size_t i) const { return nodes_[i]; }

  // (action, reward) pairs from the root down to node i.
  std::vector<std::pair<ActionIndex, double>> history(std::size_t i) const;

  std::size_t add(EnumerationNode node);
  void set_children(std::size_t i, std::vector<std::size_t> children) {
    nodes_[i].children = std::move(children);
  }

 private:
  std::size_t horizon_;
  std::size_t num_actions_;
  std::vector<EnumerationNode> nodes_;
};

struct EnumerationLimits {
  // Cap on (2K)^T. The default admits T = 8 at K = 2.
  std::uint64_t max_leaves = 65536;
};

// Every history of length <= horizon with its exact probability under
// (prior, Thompson sampling, Bernoulli model). A node branches over actions
// with the exact Thompson probabilities and then over rewards with the
// prior predictive. Zero-probability branches are omitted. Throws
// kUnsupportedInstance for non-Bernoulli grids, policies other than
// ThompsonDiscrete, or trees larger than the limit.
EnumerationTree enumerate_exact(const ParameterGrid& grid,
                                const PolicyKind& kind, std::size_t horizon,
                                EnumerationLimits limits = {});

// Probability of every history at a given depth, keyed by the history.
std::vector<std::pair<std::vector<std::pair<ActionIndex, double>>, double>>
history_distribution(const EnumerationTree& tree, std::size_t depth);

// ---------------------------------------------------------------------------
// Martingale (tower) check

struct MartingaleResidualReport {
  // Per node: max over the checked subsets B of
  //   | sum_children P(child | node) p_B(child) - p_B(node) |.
  // Zero for leaves.
  std::vector<double> node_residual;
  double max_residual = 0.0;
  std::size_t worst_node = 0;
  std::size_t internal_nodes = 0;
  std::size_t subsets_checked = 0;  // per node
  // Law of total probability: max over depths of |sum of P(node) - 1|, and
  // max over internal nodes of |sum of child P - P(node)|.
  double max_depth_probability_error = 0.0;
  double max_sibling_error = 0.0;
};

// Checks all 2^K subsets when K <= 4, singletons otherwise.
MartingaleResidualReport martingale_check(const EnumerationTree& tree);

// Random Bernoulli grid with 1..max_parameters parameters, 1..max_actions
// actions and a horizon in 1..max_horizon. About a quarter of the rows
// contain an exact tie for the maximum so the tie-break is exercised.
struct RandomInstance {
  ParameterGrid grid;
  std::size_t horizon;
};
RandomInstance random_small_instance(Rng& rng, std::size_t max_parameters = 3,
                                     std::size_t max_actions = 3,
                                     std::size_t max_horizon = 5);

// ---------------------------------------------------------------------------
// Bayesian regret

struct RegretReport {
  std::uint64_t horizon = 0;
  std::uint64_t replications = 0;
  // Index t - 1. gap = f(theta*, A*) - f(theta*, A_t) averaged over
  // replications; cumulative = running sum, with its standard error taken
  // across per-replication cumulative regrets.
  std::vector<double> gap_mean;
  std::vector<double> gap_se;
  std::vector<double> cumulative_mean;
  std::vector<double> cumulative_se;

  double cumulative(std::uint64_t t) const { return cumulative_mean.at(t - 1); }
  double per_step(std::uint64_t t) const;  // cumulative / t
  double per_sqrt(std::uint64_t t) const;  // cumulative / sqrt(t)
};

// Gaps are averaged rather than reward differences: both have the same
// expectation and the gaps carry no reward noise. Replication i uses seed
// derive_seed(seed, i).
RegretReport bayes_regret_estimate(const ModelSpec& model,
                                   const PolicyKind& kind,
                                   std::uint64_t horizon,
                                   std::uint64_t n_replications,
                                   std::uint64_t seed, unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Posterior convergence

struct PosteriorConvergenceRow {
  std::uint64_t replication = 0;
  ParameterIndex true_parameter = 0;
  ActionIndex optimal_action = 0;
  std::vector<double> p_terminal;
  // max_a | p_T(a) - 1{a = A*(theta*)} |
  double gap = 0.0;
};

struct PosteriorConvergenceReport {
  std::uint64_t horizon = 0;
  std::vector<PosteriorConvergenceRow> rows;
  double median_gap = 0.0;
  double max_gap = 0.0;
};

// Thompson sampling on the grid with theta* drawn from the prior; p_T is the
// optimal-action distribution after all T observations.
PosteriorConvergenceReport posterior_convergence_report(
    const ParameterGrid& grid, std::uint64_t horizon,
    std::uint64_t n_replications, std::uint64_t seed, unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Log-count diagnostic

struct LogCountSeries {
  std::vector<std::uint64_t> checkpoints;
  std::vector<ActionIndex> arms;            // strictly suboptimal arms
  std::vector<std::vector<double>> ratios;  // [arm][checkpoint] N / log T
};

// Checkpoints: at least two, each >= 2, strictly increasing, within the
// action sequence.
LogCountSeries log_count_ratio(std::span<const ActionIndex> actions,
                               std::span<const double> true_means,
                               std::span<const std::uint64_t> checkpoints);
LogCountSeries log_count_ratio(const ActionTrace& trace, TrueParameter theta,
                               const ParameterGrid& grid,
                               std::span<const std::uint64_t> checkpoints);

struct LogCountStudy {
  std::vector<std::uint64_t> checkpoints;
  // Median across replications of N_{a,T} / log T, per arm index, among the
  // replications where the arm is strictly suboptimal. NaN if never.
  std::vector<std::vector<double>> median_ratio;  // [arm][checkpoint]
  // Largest max/min ratio of consecutive medians over all arms.
  double max_consecutive_factor = 0.0;

  bool bounded(double factor_limit) const {
    return max_consecutive_factor < factor_limit;
  }
};

LogCountStudy log_count_study(const ModelSpec& model, const PolicyKind& kind,
                              std::vector<std::uint64_t> checkpoints,
                              std::uint64_t n_replications, std::uint64_t seed,
                              unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Square-step counterexample

struct CounterexampleCheckpoint {
  std::uint64_t t = 0;
  std::uint64_t forced_plays = 0;  // floor(sqrt(t))
  double regret_per_step = 0.0;    // mean cumulative regret / t
  double fixed_count = 0.0;        // mean visits of the fixed action
  double fixed_frequency = 0.0;    // fixed_count / t
};

struct CounterexampleReport {
  ActionIndex fixed_action = 0;
  std::uint64_t horizon = 0;
  std::uint64_t replications = 0;
  // Forced plays counted in the simulation; identical across replications.
  std::uint64_t forced_plays = 0;
  std::vector<CounterexampleCheckpoint> checkpoints;
  bool regret_per_step_decreasing = false;
  // Holds when every replication's fixed-action count strictly increases
  // between consecutive checkpoints.
  bool fixed_count_strictly_increasing = false;
  // Fraction of replications whose fixed action was suboptimal.
  double fixed_suboptimal_fraction = 0.0;
  // Fraction whose observer point estimate equals the realized optimum.
  // Descriptive only: the composite is not a Thompson agent.
  double point_estimate_accuracy = 0.0;
};

// Powers of ten below the horizon, then the horizon itself.
std::vector<std::uint64_t> decade_checkpoints(std::uint64_t horizon,
                                              std::uint64_t first = 10);

// The inner policy is Thompson sampling on the model. The fixed action must
// be suboptimal under some positive-prior parameter (kInvalidArgument
// otherwise).
CounterexampleReport counterexample_report(
    const ModelSpec& model, ActionIndex fixed_action, std::uint64_t horizon,
    std::uint64_t n_replications, std::uint64_t seed,
    std::vector<std::uint64_t> checkpoints = {}, unsigned jobs = 1);

}  // namespace tsobs

#endif  // TSOBS_DIAGNOSTICS_HPP_
