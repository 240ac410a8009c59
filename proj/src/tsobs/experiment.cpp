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
#include "tsobs/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tsobs/format.hpp"
#include "tsobs/parallel.hpp"
#include "tsobs/replication.hpp"
#include "tsobs/report.hpp"
#include "tsobs/rng.hpp"
#include "tsobs/trace_io.hpp"

namespace tsobs {

namespace fs = std::filesystem;

std::string describe_model(const ModelSpec& model) {
  std::ostringstream out;
  if (const auto* g = std::get_if<GridModel>(&model)) {
    out << "grid(P=" << g->grid->num_parameters()
        << ", K=" << g->grid->num_actions() << ", " << g->grid->reward().name()
        << ", theta*=";
    if (g->true_parameter) {
      out << "theta_" << *g->true_parameter + 1;
    } else {
      out << "prior";
    }
    out << ")";
  } else {
    const auto& b = std::get<BetaBernoulliModel>(model);
    out << "beta-bernoulli(K=" << b.num_actions << ", Beta("
        << format_double(b.prior_alpha) << ", " << format_double(b.prior_beta)
        << "), means=" << (b.true_means ? "fixed" : "prior") << ")";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// OutputWriter

OutputWriter::OutputWriter(std::string dir) : dir_(std::move(dir)) {}

OutputWriter::~OutputWriter() {
  if (!committed_) rollback();
}

void OutputWriter::write(const std::string& relative_path,
                         const std::string& content) {
  const fs::path path = fs::path(dir_) / relative_path;
  // Record every directory we are about to create, outermost first.
  std::vector<fs::path> missing;
  for (fs::path p = path.parent_path(); !p.empty() && !fs::exists(p);
       p = p.parent_path()) {
    missing.push_back(p);
    if (p == p.parent_path()) break;
  }
  std::error_code ec;
  for (auto it = missing.rbegin(); it != missing.rend(); ++it) {
    if (!fs::create_directory(*it, ec) && ec) {
      fail(ErrorKind::kIo,
           "cannot create directory " + it->string() + ": " + ec.message());
    }
    created_dirs_.push_back(it->string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string());
  files_.push_back(relative_path);
  out << content;
  out.flush();
  if (!out) fail(ErrorKind::kIo, "write failed: " + path.string());
}

void OutputWriter::rollback() noexcept {
  std::error_code ec;
  for (const auto& f : files_) fs::remove(fs::path(dir_) / f, ec);
  for (auto it = created_dirs_.rbegin(); it != created_dirs_.rend(); ++it) {
    fs::remove(*it, ec);  // only succeeds when empty
  }
  files_.clear();
  created_dirs_.clear();
}

// ---------------------------------------------------------------------------
// run_experiment

namespace {

struct Collected {
  ReplicationRow row;
  std::optional<ActionTrace> trace;
  std::vector<std::vector<double>> snapshots;
};

}  // namespace

RunSummary run_experiment(const ExperimentConfig& config) {
  if (auto issues = validate_config(config); !issues.empty()) {
    throw ConfigError(std::move(issues));
  }
  RunSummary summary;
  summary.model = describe_model(config.model);
  summary.policy = describe(config.policy);
  summary.horizon = config.horizon;
  summary.master_seed = config.master_seed;
  summary.checkpoints = config.effective_checkpoints();
  check_checkpoints(summary.checkpoints, config.horizon);

  ReplicationOptions options;
  options.checkpoints = summary.checkpoints;
  options.keep_trace = config.write_traces;
  options.snapshots = config.write_traces && config.snapshots;

  const std::size_t cps = summary.checkpoints.size();
  std::vector<double> sum(cps, 0.0), sum_sq(cps, 0.0);
  std::uint64_t correct = 0;
  std::vector<Collected> collected;
  collected.reserve(config.replications);

  auto make = [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(config.master_seed, i);
    ReplicationOutcome o = run_replication(config.model, config.policy,
                                           config.horizon, seed, options);
    Collected c;
    ReplicationRow& row = c.row;
    row.replication = i;
    row.seed = seed;
    row.true_parameter = o.realization.true_parameter;
    const auto& env = o.realization.environment;
    row.true_means.assign(env.means().begin(), env.means().end());
    row.optimal_action = env.optimal_action();
    row.point_estimate = o.point_estimate;
    row.frequencies.resize(env.num_actions());
    for (ActionIndex a = 0; a < env.num_actions(); ++a) {
      row.frequencies[a] =
          frequency(o.observer, ActionSubset::singleton(a, env.num_actions()));
    }
    row.regret_at = o.cumulative_regret;
    row.curve_subset = config.curve_subset
                           ? *config.curve_subset
                           : std::vector<ActionIndex>{row.optimal_action};
    row.curve.resize(cps);
    for (std::size_t k = 0; k < cps; ++k) {
      std::uint64_t n = 0;
      for (ActionIndex a : row.curve_subset) n += o.counts_at[k][a];
      row.curve[k] =
          static_cast<double>(n) / static_cast<double>(summary.checkpoints[k]);
    }
    row.terminal_p = std::move(o.terminal_p);
    row.forced_plays = o.forced_plays;
    c.trace = std::move(o.trace);
    c.snapshots = std::move(o.snapshots);
    return c;
  };
  auto consume = [&](std::size_t, Collected c) {
    for (std::size_t k = 0; k < cps; ++k) {
      sum[k] += c.row.regret_at[k];
      sum_sq[k] += c.row.regret_at[k] * c.row.regret_at[k];
    }
    if (c.row.point_estimate == c.row.optimal_action) ++correct;
    collected.push_back(std::move(c));
  };
  ordered_parallel_for(config.replications, resolve_jobs(config.jobs), make,
                       consume);

  const double n = static_cast<double>(config.replications);
  summary.accuracy = static_cast<double>(correct) / n;
  for (std::size_t k = 0; k < cps; ++k) {
    RegretCheckpoint r;
    r.t = summary.checkpoints[k];
    r.mean = sum[k] / n;
    if (config.replications > 1) {
      const double var =
          std::max(0.0, (sum_sq[k] - n * r.mean * r.mean) / (n - 1.0));
      r.se = std::sqrt(var / n);
    }
    r.per_step = r.mean / static_cast<double>(r.t);
    r.per_sqrt = r.mean / std::sqrt(static_cast<double>(r.t));
    summary.regret.push_back(r);
  }
  summary.rows.reserve(collected.size());
  for (auto& c : collected) summary.rows.push_back(c.row);

  if (!config.out_dir.empty()) {
    OutputWriter writer(config.out_dir);
    // Where and how fast the run happened is not part of the experiment.
    ExperimentConfig recorded = config;
    recorded.out_dir.clear();
    recorded.jobs = 0;
    writer.write("config.txt", render_config(recorded));
    if (config.format == OutputFormat::kJson) {
      writer.write("summary.json", to_json(summary).dump(2) + "\n");
    } else {
      writer.write("summary.csv", summary_csv(summary));
      writer.write("aggregate.csv", aggregate_csv(summary));
      writer.write("curves.csv", curves_csv(summary));
      writer.write("regret.csv", regret_checkpoints_csv(summary));
    }
    if (config.write_traces) {
      for (const auto& c : collected) {
        std::ostringstream out;
        write_trace_csv(out, *c.trace, c.snapshots);
        writer.write(
            "traces/trace_" + std::to_string(c.row.replication + 1) + ".csv",
            out.str());
      }
    }
    writer.commit();
    summary.files = writer.files();
  }
  return summary;
}

}  // namespace tsobs
