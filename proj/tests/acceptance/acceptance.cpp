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
// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Every run uses master seed 0.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "tsobs/belief.hpp"
#include "tsobs/config.hpp"
#include "tsobs/diagnostics.hpp"
#include "tsobs/episode.hpp"
#include "tsobs/experiment.hpp"
#include "tsobs/policy.hpp"
#include "tsobs/rng.hpp"
#include "tsobs/tsobs.h"

namespace {

namespace fs = std::filesystem;
using namespace tsobs;

constexpr std::uint64_t kSeed = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0: no limit stated
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

std::shared_ptr<const ParameterGrid> default_instance() {
  return std::make_shared<const ParameterGrid>(
      std::vector<double>{0.5, 0.5},
      std::vector<std::vector<double>>{{0.9, 0.1}, {0.1, 0.9}});
}

BetaBernoulliModel five_arms(std::optional<std::vector<double>> means) {
  return BetaBernoulliModel{5, 1.0, 1.0, std::move(means)};
}

const std::vector<double> kFiveMeans{0.9, 0.7, 0.5, 0.3, 0.1};

// 1. Exact tower check through the C API, as the CLI runs it.
Outcome martingale() {
  tsobs_config* c = nullptr;
  if (tsobs_config_default(&c) != TSOBS_OK) return {false, tsobs_last_error()};
  double worst = 0.0;
  std::string detail;
  for (std::uint64_t horizon = 1; horizon <= 8; ++horizon) {
    tsobs_report* r = nullptr;
    if (tsobs_martingale_check(c, horizon, &r) != TSOBS_OK) {
      tsobs_config_free(c);
      return {false, tsobs_last_error()};
    }
    double x = 0.0;
    tsobs_report_number(r, "max_residual", &x);
    worst = std::max(worst, x);
    tsobs_report_free(r);
  }
  tsobs_config_free(c);
  tsobs_report* r = nullptr;
  if (tsobs_martingale_check_random(kSeed, 20, &r) != TSOBS_OK) {
    return {false, tsobs_last_error()};
  }
  double random_worst = 0.0, ties = 0.0;
  tsobs_report_number(r, "max_residual", &random_worst);
  tsobs_report_number(r, "instances_with_ties", &ties);
  tsobs_report_free(r);
  const bool pass = worst < 1e-10 && random_worst < 1e-10;
  return {pass, "default instance T<=8 max residual " + fmt(worst) +
                    "; 20 random instances (" + fmt(ties) +
                    " with tied optima) max residual " + fmt(random_worst) +
                    " (< 1e-10)"};
}

// 2. Empirical ts_select law against the exact optimal-action distribution.
Outcome probability_matching() {
  Rng gen(derive_seed(kSeed, 2));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t m = 2 + gen.below(5), k = 2 + gen.below(4);
    std::vector<std::vector<double>> means(m, std::vector<double>(k));
    for (auto& row : means) {
      for (auto& x : row) x = gen.uniform();
    }
    std::vector<double> w(m);
    double total = 0.0;
    for (auto& x : w) total += (x = gen.uniform());
    for (auto& x : w) x /= total;
    auto grid = std::make_shared<const ParameterGrid>(w, means);
    PolicyState state(ThompsonDiscrete{}, k, grid->reward(), grid);
    const auto exact = optimal_action_probability(DiscreteBelief(w), *grid);
    Rng rng(derive_seed(kSeed, 1000 + i));
    const int n = 100000;
    std::vector<double> freq(k, 0.0);
    for (int d = 0; d < n; ++d) freq[ts_select(state, rng)] += 1.0;
    double tv = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      tv += std::abs(freq[a] / n - exact.probs[a]);
    }
    worst = std::max(worst, 0.5 * tv);
  }
  return {worst < 0.01,
          "max total variation over 50 beliefs " + fmt(worst) + " (< 0.01)"};
}

// 3. Depth-2 history frequencies against exact enumeration.
Outcome simulation_enumeration() {
  auto grid = default_instance();
  auto tree = enumerate_exact(*grid, ThompsonDiscrete{}, 2);
  using Key = std::vector<std::pair<ActionIndex, double>>;
  std::map<Key, double> exact;
  for (auto& [h, p] : history_distribution(tree, 2)) exact[h] = p;

  const int n = 100000;
  std::map<Key, int> counts;
  ModelSpec model = GridModel{grid, std::nullopt};
  for (int i = 0; i < n; ++i) {
    auto ep = run_episode(model, ThompsonDiscrete{}, 2, derive_seed(kSeed, i));
    Key h;
    for (const auto& rec : ep.trace.records())
      h.emplace_back(rec.action, rec.reward);
    ++counts[h];
  }
  double worst_z = 0.0;
  bool pass = true;
  for (const auto& [h, c] : counts) {
    if (!exact.count(h)) pass = false;  // simulated an impossible history
  }
  for (const auto& [h, p] : exact) {
    const double emp = counts.count(h) ? counts[h] / double(n) : 0.0;
    const double se = std::sqrt(p * (1.0 - p) / n);
    const double z = se > 0 ? std::abs(emp - p) / se : (emp == p ? 0.0 : 1e9);
    worst_z = std::max(worst_z, z);
  }
  pass = pass && worst_z < 4.0;
  return {pass, std::to_string(exact.size()) +
                    " histories, max |empirical - exact| = " + fmt(worst_z) +
                    " standard errors (< 4)"};
}

// 4. Frequency estimator on five fixed arms.
Outcome strong_consistency() {
  ExperimentConfig c;
  c.model = five_arms(kFiveMeans);
  c.policy = ThompsonBeta{1.0, 1.0};
  c.horizon = 20000;
  c.replications = 100;
  c.master_seed = kSeed;
  auto s = run_experiment(c);
  int correct = 0, concentrated = 0;
  for (const auto& row : s.rows) {
    correct += row.point_estimate == 0;
    concentrated += row.frequencies[0] > 0.9;
  }
  return {correct >= 99 && concentrated >= 95,
          "point estimate = arm 1 in " + std::to_string(correct) +
              "/100 (>= 99); arm 1 frequency > 0.9 in " +
              std::to_string(concentrated) + "/100 (>= 95)"};
}

// 5. Terminal optimal-action probabilities approach the indicator.
Outcome posterior_indicator() {
  auto r = posterior_convergence_report(*default_instance(), 5000, 100, kSeed);
  return {r.median_gap < 0.05, "median max_a |p_T(a) - 1{a = A*}| = " +
                                   fmt(r.median_gap) + " (< 0.05)"};
}

// 6. Square-step composite: exact forced plays, vanishing regret rate,
// unbounded fixed-arm visits.
Outcome counterexample() {
  ModelSpec model = GridModel{default_instance(), std::nullopt};
  std::string detail;
  bool pass = true;
  for (auto [horizon, reps, expected] :
       {std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>{10000, 100,
                                                                100},
        {1000000, 20, 1000}}) {
    auto r = counterexample_report(model, 1, horizon, reps, kSeed);
    const bool ok = r.forced_plays == expected &&
                    r.regret_per_step_decreasing &&
                    r.fixed_count_strictly_increasing;
    pass = pass && ok;
    detail += "T=" + std::to_string(horizon) + ": forced " +
              std::to_string(r.forced_plays) + " (want " +
              std::to_string(expected) + "), regret/T " +
              fmt(r.checkpoints.front().regret_per_step) + " -> " +
              fmt(r.checkpoints.back().regret_per_step) + ", fixed count " +
              fmt(r.checkpoints.front().fixed_count) + " -> " +
              fmt(r.checkpoints.back().fixed_count) +
              (r.fixed_count_strictly_increasing ? " strictly increasing"
                                                 : " NOT strictly increasing") +
              "; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

// 7. Bayes regret on prior-drawn five-arm instances.
Outcome regret_rate() {
  auto r = bayes_regret_estimate(five_arms(std::nullopt),
                                 ThompsonBeta{1.0, 1.0}, 10000, 200, kSeed);
  const double s2 = r.per_step(100), s3 = r.per_step(1000),
               s4 = r.per_step(10000);
  const double ratio = r.per_sqrt(10000) / r.per_sqrt(1000);
  const bool decreasing = s2 > s3 && s3 > s4;
  const bool stable = ratio >= 0.5 && ratio <= 2.0;
  return {decreasing && stable,
          "regret/T " + fmt(s2) + ", " + fmt(s3) + ", " + fmt(s4) +
              (decreasing ? " (decreasing)" : " (NOT decreasing)") +
              "; regret/sqrt(T) at 1e4 vs 1e3: " + fmt(r.per_sqrt(10000)) +
              " / " + fmt(r.per_sqrt(1000)) + " = " + fmt(ratio) +
              " (within a factor of 2)"};
}

// 8. Suboptimal counts relative to log T, with the uniform control.
Outcome log_count() {
  const std::vector<std::uint64_t> cps{10000, 100000};
  auto ts = log_count_study(five_arms(kFiveMeans), ThompsonBeta{1.0, 1.0}, cps,
                            50, kSeed);
  auto uni =
      log_count_study(five_arms(kFiveMeans), UniformRandom{}, cps, 50, kSeed);
  const bool pass = ts.bounded(3.0) && !uni.bounded(3.0);
  return {pass, "Thompson max factor " + fmt(ts.max_consecutive_factor) +
                    " (< 3); uniform control factor " +
                    fmt(uni.max_consecutive_factor) + " (must be >= 3)"};
}

// 9. Every shipped config, rerun with the same seed at different job
// counts, gives byte-identical trace and summary files.
std::map<std::string, std::string> run_files(const fs::path& config,
                                             const fs::path& out, int jobs) {
  fs::remove_all(out);
  tsobs_config* c = nullptr;
  if (tsobs_config_load(config.string().c_str(), &c) != TSOBS_OK) {
    throw std::runtime_error(tsobs_last_error());
  }
  tsobs_config_set_out_dir(c, out.string().c_str());
  tsobs_config_set_jobs(c, jobs);
  tsobs_config_set_traces(c, 1);
  tsobs_report* r = nullptr;
  const tsobs_status st = tsobs_simulate(c, &r);
  tsobs_config_free(c);
  tsobs_report_free(r);
  if (st != TSOBS_OK) throw std::runtime_error(tsobs_last_error());
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(out)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[fs::relative(e.path(), out).string()] = ss.str();
  }
  fs::remove_all(out);
  return files;
}

Outcome determinism() {
  const fs::path scratch = fs::temp_directory_path() / "tsobs_acceptance_9";
  std::vector<fs::path> configs;
  for (const auto& e : fs::directory_iterator(TSOBS_CONFIG_DIR)) {
    configs.push_back(e.path());
  }
  std::sort(configs.begin(), configs.end());
  bool pass = !configs.empty();
  std::size_t files = 0;
  std::string mismatched;
  for (const auto& cfg : configs) {
    const auto a = run_files(cfg, scratch, 1);
    const auto b = run_files(cfg, scratch, 1);
    const auto c = run_files(cfg, scratch, 4);
    const bool same = a == b && a == c && a.count("traces/trace_1.csv") == 1;
    if (!same) mismatched += " " + cfg.filename().string();
    pass = pass && same;
    files += a.size();
  }
  return {pass, std::to_string(configs.size()) + " configs, " +
                    std::to_string(files) +
                    " files compared across jobs = 1, 1, 4" +
                    (mismatched.empty() ? "" : "; mismatch in" + mismatched)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact martingale verification", 10, martingale},
      {2, "probability matching", 30, probability_matching},
      {3, "simulation-enumeration agreement", 60, simulation_enumeration},
      {4, "strong-consistency surrogate", 0, strong_consistency},
      {5, "posterior-to-indicator surrogate", 60, posterior_indicator},
      {6, "counterexample reproduction", 120, counterexample},
      {7, "regret sanity vs sqrt(T)", 0, regret_rate},
      {8, "log-count diagnostic", 0, log_count},
      {9, "determinism across reruns and --jobs", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::string timing = fmt(secs) + " s";
    if (c.budget_seconds > 0) {
      timing += ", budget " + fmt(c.budget_seconds) + " s";
      if (secs >= c.budget_seconds) {
        o.pass = false;
        timing += " EXCEEDED";
      }
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s: %s [%s]\n", o.pass ? "PASS" : "FAIL",
                c.id, c.name.c_str(), o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
