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
#ifndef TSOBS_CONFIG_HPP_
#define TSOBS_CONFIG_HPP_

// Experiment configuration. The native format is line oriented:
//
//   # comment
//   key = value [value ...]
//
// A document whose first non-blank character is '{' is read as a JSON
// object with the same keys. The full key list is in docs/config.md.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsobs/episode.hpp"
#include "tsobs/error.hpp"
#include "tsobs/policy.hpp"

namespace tsobs {

enum class OutputFormat { kCsv, kJson };

struct ExperimentConfig {
  ModelSpec model;
  PolicyKind policy = ThompsonDiscrete{};
  std::uint64_t horizon = 1000;
  std::uint64_t replications = 1;
  std::uint64_t master_seed = 0;
  // Empty means "every power of ten below the horizon, then the horizon".
  std::vector<std::uint64_t> checkpoints;
  std::string out_dir;
  OutputFormat format = OutputFormat::kCsv;
  bool write_traces = false;
  bool snapshots = false;
  // Subset B for the convergence curves; unset means {A*(theta*)} of each
  // replication.
  std::optional<std::vector<ActionIndex>> curve_subset;
  int jobs = 0;

  std::vector<std::uint64_t> effective_checkpoints() const;
};

struct ConfigIssue {
  std::size_t line = 0;  // 0 when not tied to a line
  std::string field;
  std::string message;

  std::string to_string() const;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

// The default instance: two Bernoulli arms, two equally likely parameters
// with means (0.9, 0.1) and (0.1, 0.9), Thompson sampling, theta* drawn
// from the prior.
ExperimentConfig default_config();
std::shared_ptr<const ParameterGrid> default_grid();

// Throws ConfigError listing every syntax and validation problem.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Validation on its own, for configs assembled or modified in code.
std::vector<ConfigIssue> validate_config(const ExperimentConfig& config);

// Canonical line-oriented rendering; parse_config(render_config(c)) == c up
// to defaults.
std::string render_config(const ExperimentConfig& config);

}  // namespace tsobs

#endif  // TSOBS_CONFIG_HPP_
