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
#ifndef TSOBS_EXPERIMENT_HPP_
#define TSOBS_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsobs/config.hpp"

namespace tsobs {

struct ReplicationRow {
  std::uint64_t replication = 0;  // 0-based; files print it 1-based
  std::uint64_t seed = 0;
  std::optional<ParameterIndex> true_parameter;
  std::vector<double> true_means;
  ActionIndex optimal_action = 0;
  ActionIndex point_estimate = 0;
  std::vector<double> frequencies;  // N_{a,T} / T
  std::vector<double> regret_at;    // cumulative regret per checkpoint
  std::vector<ActionIndex> curve_subset;
  std::vector<double> curve;  // N_{B,t} / t per checkpoint
  std::optional<std::vector<double>> terminal_p;
  std::uint64_t forced_plays = 0;
};

struct RegretCheckpoint {
  std::uint64_t t = 0;
  double mean = 0.0;
  double se = 0.0;
  double per_step = 0.0;
  double per_sqrt = 0.0;
};

struct RunSummary {
  std::string model;
  std::string policy;
  std::uint64_t horizon = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> checkpoints;
  std::vector<ReplicationRow> rows;
  // Fraction of replications whose point estimate equals the realized
  // optimal action.
  double accuracy = 0.0;
  std::vector<RegretCheckpoint> regret;
  std::vector<std::string> files;  // written, relative to the out dir
};

std::string describe_model(const ModelSpec& model);

// Runs every replication (replication i uses derive_seed(master_seed, i)),
// aggregates in replication order and, when out_dir is set, writes the
// output files. The files depend only on the config, never on the job
// count. On an I/O failure every file already written is removed and
// kIo is thrown.
RunSummary run_experiment(const ExperimentConfig& config);

// Writes a set of files under a directory, removing them again if the
// writer is destroyed before commit().
class OutputWriter {
 public:
  explicit OutputWriter(std::string dir);
  ~OutputWriter();
  OutputWriter(const OutputWriter&) = delete;
  OutputWriter& operator=(const OutputWriter&) = delete;

  void write(const std::string& relative_path, const std::string& content);
  void commit() { committed_ = true; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  void rollback() noexcept;

  std::string dir_;
  std::vector<std::string> files_;
  std::vector<std::string> created_dirs_;
  bool committed_ = false;
};

}  // namespace tsobs

#endif  // TSOBS_EXPERIMENT_HPP_
