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
// tsobs: command-line front end to the tsobs C API.
//
//   tsobs simulate --config run.cfg --out results/
//   tsobs martingale-check --random 200 --seed 7
//
// Exit status: 0 success, 1 runtime failure, 2 bad config or usage,
// 3 unsupported instance.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tsobs/tsobs.h"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> replications;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::optional<int> jobs;
  bool json = false;
};

int exit_code(tsobs_status status) {
  switch (status) {
    case TSOBS_OK:
      return 0;
    case TSOBS_ERR_CONFIG:
    case TSOBS_ERR_INVALID_ARGUMENT:
      return 2;
    case TSOBS_ERR_UNSUPPORTED:
      return 3;
    default:
      return 1;
  }
}

int report_failure(tsobs_status status) {
  std::cerr << "tsobs: " << tsobs_status_name(status) << ": "
            << tsobs_last_error() << "\n";
  return exit_code(status);
}

// Owns a config handle; the CLI never touches the C++ types.
class Config {
 public:
  ~Config() { tsobs_config_free(handle_); }
  tsobs_status load(const CommonOptions& opts) {
    tsobs_status st =
        opts.config_path.empty()
            ? tsobs_config_default(&handle_)
            : tsobs_config_load(opts.config_path.c_str(), &handle_);
    if (st != TSOBS_OK) return st;
    if (opts.seed) st = tsobs_config_set_seed(handle_, *opts.seed);
    if (st == TSOBS_OK && opts.horizon) {
      st = tsobs_config_set_horizon(handle_, *opts.horizon);
    }
    if (st == TSOBS_OK && opts.replications) {
      st = tsobs_config_set_replications(handle_, *opts.replications);
    }
    if (st == TSOBS_OK && opts.out_dir) {
      st = tsobs_config_set_out_dir(handle_, opts.out_dir->c_str());
    }
    if (st == TSOBS_OK && opts.format) {
      st = tsobs_config_set_format(handle_, opts.format->c_str());
    }
    if (st == TSOBS_OK && opts.jobs)
      st = tsobs_config_set_jobs(handle_, *opts.jobs);
    return st;
  }
  tsobs_config* get() { return handle_; }

 private:
  tsobs_config* handle_ = nullptr;
};

int emit(tsobs_status status, tsobs_report* report, bool json) {
  if (status != TSOBS_OK) {
    if (report != nullptr) std::cout << tsobs_report_text(report);
    tsobs_report_free(report);
    return report_failure(status);
  }
  if (json) {
    std::cout << tsobs_report_json(report) << "\n";
  } else {
    std::cout << tsobs_report_text(report);
  }
  tsobs_report_free(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thompson sampling simulation and verification lab"};
  app.set_version_flag("--version", std::string(tsobs_version()));
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions opts;
  app.add_option("--config,-c", opts.config_path,
                 "Experiment config (key = value text or JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed,-s", opts.seed, "Master seed");
  app.add_option("--horizon,-T", opts.horizon, "Horizon T");
  app.add_option("--replications,-n", opts.replications,
                 "Number of replications");
  app.add_option("--out,-o", opts.out_dir, "Output directory");
  app.add_option("--format", opts.format, "Output file format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs,-j", opts.jobs,
                 "Worker threads (0: TS_OBSERVER_JOBS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--json", opts.json, "Print the JSON report instead of text");

  bool traces = false;
  auto* simulate =
      app.add_subcommand("simulate", "Run the configured experiment");
  simulate->add_flag("--traces", traces,
                     "Write one trace file per replication");

  std::uint64_t enum_horizon = 0;
  auto* enumerate = app.add_subcommand(
      "enumerate", "List every history with its exact probability");
  enumerate->add_option("--depth", enum_horizon,
                        "Enumeration horizon (default: --horizon)");

  std::uint64_t random_count = 0;
  std::uint64_t mart_horizon = 0;
  auto* martingale = app.add_subcommand(
      "martingale-check",
      "Exact tower check of the optimal-action probabilities");
  martingale->add_option("--random", random_count,
                         "Check this many random small instances instead");
  martingale->add_option("--depth", mart_horizon,
                         "Enumeration horizon (default: --horizon)");

  auto* regret = app.add_subcommand("regret", "Estimate Bayesian regret");

  std::uint64_t fixed_action = 0;
  auto* counter = app.add_subcommand("counterexample",
                                     "Square-step composite policy study");
  counter->add_option("--fixed-action", fixed_action,
                      "Fixed action, 1-based (default: from the config)");

  auto* posterior = app.add_subcommand(
      "posterior", "Terminal optimal-action probabilities on a grid");
  auto* log_count = app.add_subcommand(
      "log-count", "Suboptimal play counts relative to log T");
  auto* validate = app.add_subcommand(
      "validate-config", "Check a config and print its canonical form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*martingale && random_count > 0) {
    tsobs_report* report = nullptr;
    const tsobs_status st = tsobs_martingale_check_random(
        opts.seed.value_or(0), random_count, &report);
    return emit(st, report, opts.json);
  }

  Config config;
  if (tsobs_status st = config.load(opts); st != TSOBS_OK) {
    return report_failure(st);
  }
  if (traces) tsobs_config_set_traces(config.get(), 1);

  tsobs_report* report = nullptr;
  tsobs_status st = TSOBS_OK;
  if (*simulate) {
    st = tsobs_simulate(config.get(), &report);
  } else if (*enumerate) {
    st = tsobs_enumerate(config.get(), enum_horizon, &report);
  } else if (*martingale) {
    st = tsobs_martingale_check(config.get(), mart_horizon, &report);
  } else if (*regret) {
    st = tsobs_regret(config.get(), &report);
  } else if (*counter) {
    st = tsobs_counterexample(config.get(), fixed_action, &report);
  } else if (*posterior) {
    st = tsobs_posterior_convergence(config.get(), &report);
  } else if (*log_count) {
    st = tsobs_log_count(config.get(), &report);
  } else if (*validate) {
    st = tsobs_config_validate(config.get(), &report);
    if (st == TSOBS_OK) {
      tsobs_report_free(report);
      report = nullptr;
      st = tsobs_config_describe(config.get(), &report);
    }
  }
  return emit(st, report, opts.json);
}
