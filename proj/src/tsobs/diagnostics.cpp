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
#include "tsobs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "tsobs/error.hpp"
#include "tsobs/parallel.hpp"
#include "tsobs/replication.hpp"

namespace tsobs {

// ---------------------------------------------------------------------------
// Exact enumeration

std::vector<std::pair<ActionIndex, double>> EnumerationTree::history(
    std::size_t i) const {
  std::vector<std::pair<ActionIndex, double>> steps;
  for (; nodes_[i].parent != kNoParent; i = nodes_[i].parent) {
    steps.emplace_back(nodes_[i].action, nodes_[i].reward);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

std::size_t EnumerationTree::add(EnumerationNode node) {
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

namespace {

void expand(EnumerationTree& tree, const ParameterGrid& grid, std::size_t i) {
  if (tree[i].depth >= tree.horizon()) return;
  // Copies: add() may reallocate the node storage.
  const DiscreteBelief belief = tree[i].belief;
  const std::vector<double> p = tree[i].p_vector;
  const double probability = tree[i].probability;
  const std::size_t depth = tree[i].depth;

  std::vector<std::size_t> children;
  for (ActionIndex a = 0; a < grid.num_actions(); ++a) {
    if (!(p[a] > 0.0)) continue;
    for (double r : {0.0, 1.0}) {
      const double pr = predictive_probability(belief, grid, a, r);
      if (!(pr > 0.0)) continue;
      DiscreteBelief next = update_discrete(belief, grid, a, r);
      auto next_p = optimal_action_probability(next, grid).probs;
      const double branch = p[a] * pr;
      children.push_back(tree.add(EnumerationNode{i,
                                                  depth + 1,
                                                  a,
                                                  r,
                                                  branch,
                                                  probability * branch,
                                                  std::move(next),
                                                  std::move(next_p),
                                                  {}}));
    }
  }
  tree.set_children(i, children);
  for (std::size_t c : children) expand(tree, grid, c);
}

}  // namespace

EnumerationTree enumerate_exact(const ParameterGrid& grid,
                                const PolicyKind& kind, std::size_t horizon,
                                EnumerationLimits limits) {
  if (grid.reward().family != RewardFamily::kBernoulli) {
    fail(ErrorKind::kUnsupportedInstance,
         "exact enumeration needs bernoulli rewards");
  }
  if (!std::holds_alternative<ThompsonDiscrete>(kind)) {
    fail(ErrorKind::kUnsupportedInstance,
         "exact enumeration supports thompson-discrete only, got " +
             describe(kind));
  }
  check_model(grid);
  require(horizon >= 1, "horizon must be at least 1");

  const std::uint64_t fan_out = 2 * grid.num_actions();
  std::uint64_t leaves = 1;
  for (std::size_t t = 0; t < horizon; ++t) {
    if (leaves > limits.max_leaves / fan_out) {
      fail(ErrorKind::kUnsupportedInstance,
           "enumeration of " + std::to_string(fan_out) + "^" +
               std::to_string(horizon) + " histories exceeds the limit of " +
               std::to_string(limits.max_leaves));
    }
    leaves *= fan_out;
  }

  EnumerationTree tree(horizon, grid.num_actions());
  DiscreteBelief prior = DiscreteBelief::from_prior(grid);
  auto p = optimal_action_probability(prior, grid).probs;
  tree.add(EnumerationNode{
      kNoParent, 0, 0, 0.0, 1.0, 1.0, std::move(prior), std::move(p), {}});
  expand(tree, grid, 0);
  return tree;
}

std::vector<std::pair<std::vector<std::pair<ActionIndex, double>>, double>>
history_distribution(const EnumerationTree& tree, std::size_t depth) {
  std::vector<std::pair<std::vector<std::pair<ActionIndex, double>>, double>>
      out;
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    if (tree[i].depth == depth)
      out.emplace_back(tree.history(i), tree[i].probability);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Martingale (tower) check

MartingaleResidualReport martingale_check(const EnumerationTree& tree) {
  const std::size_t k = tree.num_actions();
  std::vector<std::vector<ActionIndex>> subsets;
  if (k <= 4) {
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<ActionIndex> b;
      for (ActionIndex a = 0; a < k; ++a) {
        if (mask & (1u << a)) b.push_back(a);
      }
      subsets.push_back(std::move(b));
    }
  } else {
    for (ActionIndex a = 0; a < k; ++a) subsets.push_back({a});
  }

  auto mass = [](const std::vector<double>& p,
                 const std::vector<ActionIndex>& b) {
    double s = 0.0;
    for (ActionIndex a : b) s += p[a];
    return s;
  };

  MartingaleResidualReport report;
  report.subsets_checked = subsets.size();
  report.node_residual.assign(tree.nodes().size(), 0.0);
  std::vector<double> depth_mass(tree.horizon() + 1, 0.0);

  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const auto& node = tree[i];
    depth_mass[node.depth] += node.probability;
    if (node.depth >= tree.horizon()) continue;
    ++report.internal_nodes;

    double child_total = 0.0;
    for (std::size_t c : node.children) child_total += tree[c].probability;
    report.max_sibling_error = std::max(
        report.max_sibling_error, std::abs(child_total - node.probability));

    double worst = 0.0;
    for (const auto& b : subsets) {
      double expected_next = 0.0;
      for (std::size_t c : node.children) {
        expected_next += tree[c].branch_probability * mass(tree[c].p_vector, b);
      }
      worst = std::max(worst, std::abs(expected_next - mass(node.p_vector, b)));
    }
    report.node_residual[i] = worst;
    if (worst > report.max_residual) {
      report.max_residual = worst;
      report.worst_node = i;
    }
  }
  for (double m : depth_mass) {
    report.max_depth_probability_error =
        std::max(report.max_depth_probability_error, std::abs(m - 1.0));
  }
  return report;
}

RandomInstance random_small_instance(Rng& rng, std::size_t max_parameters,
                                     std::size_t max_actions,
                                     std::size_t max_horizon) {
  require(max_parameters >= 1 && max_actions >= 1 && max_horizon >= 1,
          "random instance bounds must be positive");
  const std::size_t m = 1 + rng.below(max_parameters);
  const std::size_t k = 1 + rng.below(max_actions);
  const std::size_t horizon = 1 + rng.below(max_horizon);

  std::vector<double> prior(m);
  double total = 0.0;
  for (double& w : prior) {
    w = 0.05 + rng.uniform();
    total += w;
  }
  for (double& w : prior) w /= total;
  // Push the rounding residue into the last weight.
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) head += prior[i];
  prior[m - 1] = 1.0 - head;

  std::vector<std::vector<double>> means(m, std::vector<double>(k));
  for (auto& row : means) {
    for (double& f : row) f = rng.uniform();
    if (k >= 2 && rng.uniform() < 0.25) {
      const auto best = argmax_min_index(row);
      row[(best + 1 + rng.below(k - 1)) % k] = row[best];
    }
  }
  return {ParameterGrid(std::move(prior), means), horizon};
}

// ---------------------------------------------------------------------------
// Bayesian regret

namespace {

constexpr std::uint64_t kRegretBlock = 8;

double standard_error(double sum, double sum_sq, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  const double var = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
  return std::sqrt(var / nn);
}

struct RegretSums {
  std::vector<double> gap, gap_sq, cum, cum_sq;
};

}  // namespace

double RegretReport::per_step(std::uint64_t t) const {
  return cumulative(t) / static_cast<double>(t);
}

double RegretReport::per_sqrt(std::uint64_t t) const {
  return cumulative(t) / std::sqrt(static_cast<double>(t));
}

RegretReport bayes_regret_estimate(const ModelSpec& model,
                                   const PolicyKind& kind,
                                   std::uint64_t horizon,
                                   std::uint64_t n_replications,
                                   std::uint64_t seed, unsigned jobs) {
  require(horizon >= 1, "horizon must be at least 1");
  require(n_replications >= 1, "n_replications must be at least 1");
  const std::size_t n = static_cast<std::size_t>(horizon);
  RegretSums total{std::vector<double>(n), std::vector<double>(n),
                   std::vector<double>(n), std::vector<double>(n)};

  const std::uint64_t blocks =
      (n_replications + kRegretBlock - 1) / kRegretBlock;
  ReplicationOptions options;
  options.per_step_gaps = true;

  ordered_parallel_for(
      blocks, jobs,
      [&](std::size_t block) {
        RegretSums sums{std::vector<double>(n), std::vector<double>(n),
                        std::vector<double>(n), std::vector<double>(n)};
        const std::uint64_t begin = block * kRegretBlock;
        const std::uint64_t end =
            std::min(n_replications, begin + kRegretBlock);
        for (std::uint64_t rep = begin; rep < end; ++rep) {
          const auto outcome = run_replication(model, kind, horizon,
                                               derive_seed(seed, rep), options);
          double cum = 0.0;
          for (std::size_t t = 0; t < n; ++t) {
            const double g = outcome.gaps[t];
            cum += g;
            sums.gap[t] += g;
            sums.gap_sq[t] += g * g;
            sums.cum[t] += cum;
            sums.cum_sq[t] += cum * cum;
          }
        }
        return sums;
      },
      [&](std::size_t, RegretSums sums) {
        for (std::size_t t = 0; t < n; ++t) {
          total.gap[t] += sums.gap[t];
          total.gap_sq[t] += sums.gap_sq[t];
          total.cum[t] += sums.cum[t];
          total.cum_sq[t] += sums.cum_sq[t];
        }
      });

  RegretReport report;
  report.horizon = horizon;
  report.replications = n_replications;
  const double reps = static_cast<double>(n_replications);
  report.gap_mean.resize(n);
  report.gap_se.resize(n);
  report.cumulative_mean.resize(n);
  report.cumulative_se.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    report.gap_mean[t] = total.gap[t] / reps;
    report.gap_se[t] =
        standard_error(total.gap[t], total.gap_sq[t], n_replications);
    report.cumulative_mean[t] = total.cum[t] / reps;
    report.cumulative_se[t] =
        standard_error(total.cum[t], total.cum_sq[t], n_replications);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Posterior convergence

namespace {

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

PosteriorConvergenceReport posterior_convergence_report(
    const ParameterGrid& grid, std::uint64_t horizon,
    std::uint64_t n_replications, std::uint64_t seed, unsigned jobs) {
  require(n_replications >= 1, "n_replications must be at least 1");
  check_model(grid);
  const ModelSpec model =
      GridModel{std::make_shared<const ParameterGrid>(grid), std::nullopt};

  PosteriorConvergenceReport report;
  report.horizon = horizon;
  ordered_parallel_for(
      n_replications, jobs,
      [&](std::size_t rep) {
        const auto outcome = run_replication(model, ThompsonDiscrete{}, horizon,
                                             derive_seed(seed, rep), {});
        PosteriorConvergenceRow row;
        row.replication = rep;
        row.true_parameter = *outcome.realization.true_parameter;
        row.optimal_action = outcome.realization.environment.optimal_action();
        row.p_terminal = *outcome.terminal_p;
        for (ActionIndex a = 0; a < row.p_terminal.size(); ++a) {
          const double indicator = a == row.optimal_action ? 1.0 : 0.0;
          row.gap = std::max(row.gap, std::abs(row.p_terminal[a] - indicator));
        }
        return row;
      },
      [&](std::size_t, PosteriorConvergenceRow row) {
        report.rows.push_back(std::move(row));
      });

  std::vector<double> gaps;
  for (const auto& row : report.rows) {
    gaps.push_back(row.gap);
    report.max_gap = std::max(report.max_gap, row.gap);
  }
  report.median_gap = median(std::move(gaps));
  return report;
}

// ---------------------------------------------------------------------------
// Log-count diagnostic

namespace {

void check_log_checkpoints(std::span<const std::uint64_t> checkpoints,
                           std::uint64_t limit) {
  require(checkpoints.size() >= 2, "log-count needs at least two checkpoints");
  std::uint64_t previous = 0;
  for (auto t : checkpoints) {
    require(t >= 2, "log-count checkpoints must be at least 2");
    require(t > previous, "checkpoints must be strictly increasing");
    require(t <= limit,
            "checkpoint " + std::to_string(t) + " is beyond the trace length");
    previous = t;
  }
}

std::vector<ActionIndex> suboptimal_arms(std::span<const double> means) {
  const double best = means[argmax_min_index(means)];
  std::vector<ActionIndex> arms;
  for (ActionIndex a = 0; a < means.size(); ++a) {
    if (means[a] < best) arms.push_back(a);
  }
  return arms;
}

}  // namespace

LogCountSeries log_count_ratio(std::span<const ActionIndex> actions,
                               std::span<const double> true_means,
                               std::span<const std::uint64_t> checkpoints) {
  require(!true_means.empty(), "true means must be non-empty");
  check_log_checkpoints(checkpoints, actions.size());

  LogCountSeries out;
  out.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  out.arms = suboptimal_arms(true_means);
  out.ratios.assign(out.arms.size(), {});

  std::vector<std::uint64_t> counts(true_means.size(), 0);
  std::uint64_t t = 0;
  for (std::uint64_t cp : checkpoints) {
    for (; t < cp; ++t) {
      require(actions[t] < counts.size(), "action index out of range");
      ++counts[actions[t]];
    }
    const double log_t = std::log(static_cast<double>(cp));
    for (std::size_t i = 0; i < out.arms.size(); ++i) {
      out.ratios[i].push_back(static_cast<double>(counts[out.arms[i]]) / log_t);
    }
  }
  return out;
}

LogCountSeries log_count_ratio(const ActionTrace& trace, TrueParameter theta,
                               const ParameterGrid& grid,
                               std::span<const std::uint64_t> checkpoints) {
  require(theta.index < grid.num_parameters(), "true parameter out of range");
  const auto actions = trace.actions();
  return log_count_ratio(actions, grid.row(theta.index), checkpoints);
}

LogCountStudy log_count_study(const ModelSpec& model, const PolicyKind& kind,
                              std::vector<std::uint64_t> checkpoints,
                              std::uint64_t n_replications, std::uint64_t seed,
                              unsigned jobs) {
  require(n_replications >= 1, "n_replications must be at least 1");
  require(!checkpoints.empty(), "log-count needs checkpoints");
  check_log_checkpoints(checkpoints, checkpoints.back());
  const std::uint64_t horizon = checkpoints.back();
  const std::size_t k = num_actions(model);
  const std::size_t nc = checkpoints.size();

  // samples[a][c] collects ratios from replications where a is suboptimal.
  std::vector<std::vector<std::vector<double>>> samples(
      k, std::vector<std::vector<double>>(nc));
  ReplicationOptions options;
  options.checkpoints = checkpoints;

  ordered_parallel_for(
      n_replications, jobs,
      [&](std::size_t rep) {
        return run_replication(model, kind, horizon, derive_seed(seed, rep),
                               options);
      },
      [&](std::size_t, ReplicationOutcome outcome) {
        const auto arms =
            suboptimal_arms(outcome.realization.environment.means());
        for (ActionIndex a : arms) {
          for (std::size_t c = 0; c < nc; ++c) {
            samples[a][c].push_back(
                static_cast<double>(outcome.counts_at[c][a]) /
                std::log(static_cast<double>(checkpoints[c])));
          }
        }
      });

  LogCountStudy study;
  study.checkpoints = checkpoints;
  study.median_ratio.assign(k, std::vector<double>(nc));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = 0; c < nc; ++c) {
      study.median_ratio[a][c] = median(samples[a][c]);
    }
    if (samples[a][0].empty()) continue;
    for (std::size_t c = 0; c + 1 < nc; ++c) {
      const double x = study.median_ratio[a][c];
      const double y = study.median_ratio[a][c + 1];
      const double hi = std::max(x, y);
      const double lo = std::min(x, y);
      double factor = 1.0;
      if (lo > 0.0) {
        factor = hi / lo;
      } else if (hi > 0.0) {
        factor = std::numeric_limits<double>::infinity();
      }
      study.max_consecutive_factor =
          std::max(study.max_consecutive_factor, factor);
    }
  }
  return study;
}

// ---------------------------------------------------------------------------
// Square-step counterexample

std::vector<std::uint64_t> decade_checkpoints(std::uint64_t horizon,
                                              std::uint64_t first) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = std::max<std::uint64_t>(first, 1); t < horizon;
       t *= 10) {
    out.push_back(t);
  }
  out.push_back(horizon);
  return out;
}

namespace {

void check_fixed_action_suboptimal(const ModelSpec& model, ActionIndex fixed) {
  require(fixed < num_actions(model), "fixed action out of range");
  bool ok = false;
  if (const auto* g = std::get_if<GridModel>(&model)) {
    const auto& grid = *g->grid;
    for (ParameterIndex m = 0; m < grid.num_parameters(); ++m) {
      const bool possible =
          g->true_parameter ? *g->true_parameter == m : grid.prior()[m] > 0.0;
      const auto row = grid.row(m);
      if (possible && row[fixed] < row[argmax_min_index(row)]) ok = true;
    }
  } else {
    const auto& b = std::get<BetaBernoulliModel>(model);
    if (b.true_means) {
      const auto& f = *b.true_means;
      ok = f[fixed] < f[argmax_min_index(f)];
    } else {
      ok = b.num_actions >= 2;
    }
  }
  require(ok, "fixed action " + std::to_string(fixed + 1) +
                  " is optimal under every possible parameter");
}

}  // namespace

CounterexampleReport counterexample_report(
    const ModelSpec& model, ActionIndex fixed_action, std::uint64_t horizon,
    std::uint64_t n_replications, std::uint64_t seed,
    std::vector<std::uint64_t> checkpoints, unsigned jobs) {
  require(n_replications >= 1, "n_replications must be at least 1");
  require(horizon >= 1, "horizon must be at least 1");
  check_fixed_action_suboptimal(model, fixed_action);
  if (checkpoints.empty()) checkpoints = decade_checkpoints(horizon);
  check_checkpoints(checkpoints, horizon);

  BasePolicyKind inner = ThompsonDiscrete{};
  if (const auto* b = std::get_if<BetaBernoulliModel>(&model)) {
    inner = ThompsonBeta{b->prior_alpha, b->prior_beta};
  }
  const PolicyKind kind = SquareStepComposite{fixed_action, inner};
  ReplicationOptions options;
  options.checkpoints = checkpoints;

  const std::size_t nc = checkpoints.size();
  std::vector<double> regret_sum(nc, 0.0);
  std::vector<double> count_sum(nc, 0.0);
  bool increasing = true;
  bool forced_consistent = true;
  std::uint64_t forced = 0;
  std::uint64_t suboptimal = 0;
  std::uint64_t correct = 0;

  ordered_parallel_for(
      n_replications, jobs,
      [&](std::size_t rep) {
        return run_replication(model, kind, horizon, derive_seed(seed, rep),
                               options);
      },
      [&](std::size_t rep, ReplicationOutcome outcome) {
        const auto& env = outcome.realization.environment;
        if (rep == 0) forced = outcome.forced_plays;
        if (outcome.forced_plays != forced) forced_consistent = false;
        if (env.gap(fixed_action) > 0.0) ++suboptimal;
        if (outcome.point_estimate == env.optimal_action()) ++correct;
        for (std::size_t c = 0; c < nc; ++c) {
          regret_sum[c] += outcome.cumulative_regret[c];
          count_sum[c] +=
              static_cast<double>(outcome.counts_at[c][fixed_action]);
          if (c > 0 && outcome.counts_at[c][fixed_action] <=
                           outcome.counts_at[c - 1][fixed_action]) {
            increasing = false;
          }
        }
      });
  if (!forced_consistent) {
    fail(ErrorKind::kRuntime, "forced-play counts differ across replications");
  }

  CounterexampleReport report;
  report.fixed_action = fixed_action;
  report.horizon = horizon;
  report.replications = n_replications;
  report.forced_plays = forced;
  report.fixed_count_strictly_increasing = increasing;
  const double reps = static_cast<double>(n_replications);
  report.fixed_suboptimal_fraction = static_cast<double>(suboptimal) / reps;
  report.point_estimate_accuracy = static_cast<double>(correct) / reps;
  report.regret_per_step_decreasing = true;
  for (std::size_t c = 0; c < nc; ++c) {
    const double t = static_cast<double>(checkpoints[c]);
    CounterexampleCheckpoint cp;
    cp.t = checkpoints[c];
    cp.forced_plays = integer_sqrt(checkpoints[c]);
    cp.regret_per_step = regret_sum[c] / reps / t;
    cp.fixed_count = count_sum[c] / reps;
    cp.fixed_frequency = cp.fixed_count / t;
    if (c > 0 &&
        !(cp.regret_per_step < report.checkpoints.back().regret_per_step)) {
      report.regret_per_step_decreasing = false;
    }
    report.checkpoints.push_back(cp);
  }
  return report;
}

}  // namespace tsobs
