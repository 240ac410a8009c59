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
#include <algorithm>
#include <cstring>
#include <map>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "tsobs/config.hpp"
#include "tsobs/diagnostics.hpp"
#include "tsobs/error.hpp"
#include "tsobs/experiment.hpp"
#include "tsobs/format.hpp"
#include "tsobs/observer.hpp"
#include "tsobs/parallel.hpp"
#include "tsobs/report.hpp"
#include "tsobs/rng.hpp"
#include "tsobs/tsobs.h"

struct tsobs_config {
  tsobs::ExperimentConfig config;
};

struct tsobs_report {
  std::string text;
  std::string json;
  std::map<std::string, double> numbers;
};

struct tsobs_estimator {
  tsobs::FrequencyEstimator estimator;
};

namespace {

using tsobs::ErrorKind;
using tsobs::Json;

thread_local std::string last_error;

tsobs_status to_status(ErrorKind kind) {
  return static_cast<tsobs_status>(static_cast<int>(kind));
}

tsobs_status set_error(tsobs_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
tsobs_status guarded(Body&& body) {
  try {
    body();
    return TSOBS_OK;
  } catch (const tsobs::ConfigError& e) {
    std::string msg;
    for (const auto& issue : e.issues()) {
      if (!msg.empty()) msg += '\n';
      msg += issue.to_string();
    }
    return set_error(TSOBS_ERR_CONFIG, msg.empty() ? e.what() : msg);
  } catch (const tsobs::Error& e) {
    return set_error(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(TSOBS_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return set_error(TSOBS_ERR_RUNTIME, e.what());
  }
}

#define TSOBS_REQUIRE_ARG(cond, what)                                \
  do {                                                               \
    if (!(cond)) return set_error(TSOBS_ERR_INVALID_ARGUMENT, what); \
  } while (0)

std::string at(const char* name, std::uint64_t t) {
  return std::string(name) + "@" + std::to_string(t);
}

// Finalizes a report: numbers are appended to the JSON body.
tsobs_report* make_report(std::string text, Json json,
                          std::map<std::string, double> numbers) {
  auto* r = new tsobs_report;
  r->text = std::move(text);
  Json n = Json::object();
  for (const auto& [k, v] : numbers) n[k] = v;
  json["numbers"] = std::move(n);
  r->json = json.dump(2);
  r->numbers = std::move(numbers);
  return r;
}

void write_outputs(
    const std::string& dir,
    std::initializer_list<std::pair<std::string, std::string>> files) {
  if (dir.empty()) return;
  tsobs::OutputWriter writer(dir);
  for (const auto& [name, content] : files) writer.write(name, content);
  writer.commit();
}

const tsobs::GridModel& grid_model(const tsobs::ExperimentConfig& c) {
  const auto* g = std::get_if<tsobs::GridModel>(&c.model);
  if (g == nullptr) {
    tsobs::fail(ErrorKind::kUnsupportedInstance,
                "this command needs a grid model");
  }
  return *g;
}

}  // namespace

extern "C" {

const char* tsobs_version(void) { return "1.0.0"; }

const char* tsobs_last_error(void) { return last_error.c_str(); }

const char* tsobs_status_name(tsobs_status status) {
  switch (status) {
    case TSOBS_OK:
      return "ok";
    case TSOBS_ERR_RUNTIME:
      return "runtime error";
    case TSOBS_ERR_CONFIG:
      return "config error";
    case TSOBS_ERR_UNSUPPORTED:
      return "unsupported instance";
    case TSOBS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case TSOBS_ERR_DEGENERATE_EVIDENCE:
      return "degenerate evidence";
    case TSOBS_ERR_UNDEFINED_AT_ZERO:
      return "undefined at zero";
    case TSOBS_ERR_IO:
      return "i/o error";
  }
  return "unknown";
}

uint64_t tsobs_derive_seed(uint64_t master_seed, uint64_t index) {
  return tsobs::derive_seed(master_seed, index);
}

// --- config ----------------------------------------------------------------

tsobs_status tsobs_config_default(tsobs_config** out) {
  TSOBS_REQUIRE_ARG(out != nullptr, "out is null");
  return guarded([&] { *out = new tsobs_config{tsobs::default_config()}; });
}

tsobs_status tsobs_config_parse(const char* text, tsobs_config** out) {
  TSOBS_REQUIRE_ARG(text != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new tsobs_config{tsobs::parse_config(text)}; });
}

tsobs_status tsobs_config_load(const char* path, tsobs_config** out) {
  TSOBS_REQUIRE_ARG(path != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new tsobs_config{tsobs::load_config(path)}; });
}

void tsobs_config_free(tsobs_config* config) { delete config; }

tsobs_status tsobs_config_set_seed(tsobs_config* config, uint64_t seed) {
  TSOBS_REQUIRE_ARG(config != nullptr, "config is null");
  config->config.master_seed = seed;
  return TSOBS_OK;
}

tsobs_status tsobs_config_set_horizon(tsobs_config* config, uint64_t horizon) {
  TSOBS_REQUIRE_ARG(config != nullptr, "config is null");
  TSOBS_REQUIRE_ARG(horizon >= 1, "horizon must be at least 1");
  config->config.horizon = horizon;
  return TSOBS_OK;
}

tsobs_status tsobs_config_set_replications(tsobs_config* config,
                                           uint64_t replications) {
  TSOBS_REQUIRE_ARG(config != nullptr, "config is null");
  TSOBS_REQUIRE_ARG(replications >= 1, "replications must be at least 1");
  config->config.replications = replications;
  return TSOBS_OK;
}

tsobs_status tsobs_config_set_out_dir(tsobs_config* config, const char* dir) {
  TSOBS_REQUIRE_ARG(config != nullptr, "config is null");
  config->config.out_dir = dir == nullptr ? "" : dir;
  return TSOBS_OK;
}

tsobs_status tsobs_config_set_format(tsobs_config* config, const char* format) {
  TSOBS_REQUIRE_ARG(config != nullptr && format != nullptr, "null argument");
  if (std::strcmp(format, "csv") == 0) {
    config->config.format = tsobs::OutputFormat::kCsv;
  } else if (std::strcmp(format, "json") == 0) {
    config->config.format = tsobs::OutputFormat::kJson;
  } else {
    return set_error(
        TSOBS_ERR_INVALID_ARGUMENT,
        std::string("unknown format '") + format + "' (expected csv or json)");
  }
  return TSOBS_OK;
}

tsobs_status tsobs_config_set_jobs(tsobs_config* config, int jobs) {
  TSOBS_REQUIRE_ARG(config != nullptr, "config is null");
  TSOBS_REQUIRE_ARG(jobs >= 0, "jobs must be nonnegative");
  config->config.jobs = jobs;
  return TSOBS_OK;
}

tsobs_status tsobs_config_set_traces(tsobs_config* config, int enabled) {
  TSOBS_REQUIRE_ARG(config != nullptr, "config is null");
  config->config.write_traces = enabled != 0;
  return TSOBS_OK;
}

tsobs_status tsobs_config_validate(const tsobs_config* config,
                                   tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  std::vector<tsobs::ConfigIssue> issues;
  tsobs_status st =
      guarded([&] { issues = tsobs::validate_config(config->config); });
  if (st != TSOBS_OK) return st;
  std::string text;
  Json list = Json::array();
  for (const auto& issue : issues) {
    text += issue.to_string() + "\n";
    list.push_back(issue.to_string());
  }
  if (issues.empty()) text = "ok\n";
  *out = make_report(text, Json{{"issues", list}},
                     {{"issues", static_cast<double>(issues.size())}});
  if (!issues.empty()) {
    return set_error(TSOBS_ERR_CONFIG, issues.front().to_string());
  }
  return TSOBS_OK;
}

tsobs_status tsobs_config_describe(const tsobs_config* config,
                                   tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    std::string text = tsobs::render_config(config->config);
    *out =
        make_report(text,
                    Json{{"model", tsobs::describe_model(config->config.model)},
                         {"policy", tsobs::describe(config->config.policy)},
                         {"config", text}},
                    {});
  });
}

// --- commands --------------------------------------------------------------

tsobs_status tsobs_simulate(const tsobs_config* config, tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    tsobs::RunSummary s = tsobs::run_experiment(config->config);
    std::map<std::string, double> numbers{
        {"accuracy", s.accuracy},
        {"replications", static_cast<double>(s.rows.size())},
        {"horizon", static_cast<double>(s.horizon)}};
    for (const auto& r : s.regret) {
      numbers[at("regret", r.t)] = r.mean;
      numbers[at("regret_se", r.t)] = r.se;
    }
    *out =
        make_report(tsobs::to_text(s), tsobs::to_json(s), std::move(numbers));
  });
}

tsobs_status tsobs_enumerate(const tsobs_config* config, uint64_t horizon,
                             tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto& c = config->config;
    const std::uint64_t t = horizon == 0 ? c.horizon : horizon;
    tsobs::EnumerationTree tree =
        tsobs::enumerate_exact(*grid_model(c).grid, c.policy, t);
    std::size_t leaves = 0;
    for (const auto& n : tree.nodes()) leaves += n.depth == t ? 1 : 0;
    Json json = tsobs::to_json(tree);
    write_outputs(c.out_dir, {{"enumeration.json", json.dump(2) + "\n"}});
    *out = make_report(tsobs::to_text(tree), std::move(json),
                       {{"nodes", static_cast<double>(tree.nodes().size())},
                        {"leaves", static_cast<double>(leaves)}});
  });
}

tsobs_status tsobs_martingale_check(const tsobs_config* config,
                                    uint64_t horizon, tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto& c = config->config;
    const std::uint64_t t = horizon == 0 ? c.horizon : horizon;
    tsobs::EnumerationTree tree =
        tsobs::enumerate_exact(*grid_model(c).grid, c.policy, t);
    tsobs::MartingaleResidualReport r = tsobs::martingale_check(tree);
    Json json = tsobs::to_json(r);
    write_outputs(c.out_dir, {{"martingale.json", json.dump(2) + "\n"}});
    *out = make_report(
        tsobs::to_text(r), std::move(json),
        {{"max_residual", r.max_residual},
         {"internal_nodes", static_cast<double>(r.internal_nodes)},
         {"max_depth_probability_error", r.max_depth_probability_error},
         {"max_sibling_error", r.max_sibling_error}});
  });
}

tsobs_status tsobs_martingale_check_random(uint64_t seed, uint64_t count,
                                           tsobs_report** out) {
  TSOBS_REQUIRE_ARG(out != nullptr, "out is null");
  TSOBS_REQUIRE_ARG(count >= 1, "count must be at least 1");
  return guarded([&] {
    double max_residual = 0.0, max_depth = 0.0, max_sibling = 0.0;
    std::uint64_t worst = 0, nodes = 0, ties = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      tsobs::Rng rng(tsobs::derive_seed(seed, i));
      tsobs::RandomInstance inst = tsobs::random_small_instance(rng);
      for (std::size_t m = 0; m < inst.grid.num_parameters(); ++m) {
        auto row = inst.grid.row(m);
        const double best = row[inst.grid.optimal_action(m)];
        if (std::count(row.begin(), row.end(), best) > 1) {
          ++ties;
          break;
        }
      }
      auto tree = tsobs::enumerate_exact(inst.grid, tsobs::ThompsonDiscrete{},
                                         inst.horizon);
      auto r = tsobs::martingale_check(tree);
      nodes += r.internal_nodes;
      if (r.max_residual > max_residual || i == 0) {
        max_residual = r.max_residual;
        worst = i;
      }
      max_depth = std::max(max_depth, r.max_depth_probability_error);
      max_sibling = std::max(max_sibling, r.max_sibling_error);
    }
    std::ostringstream text;
    text << "instances             " << count << "\n"
         << "with tied optimum     " << ties << "\n"
         << "internal nodes        " << nodes << "\n"
         << "max tower residual    " << max_residual << " (instance "
         << worst + 1 << ")\n"
         << "max depth mass error  " << max_depth << "\n"
         << "max sibling error     " << max_sibling << "\n";
    Json json{{"seed", seed},
              {"instances", count},
              {"instances_with_ties", ties},
              {"internal_nodes", nodes},
              {"max_residual", max_residual},
              {"worst_instance", worst + 1},
              {"max_depth_probability_error", max_depth},
              {"max_sibling_error", max_sibling}};
    *out = make_report(text.str(), std::move(json),
                       {{"instances", static_cast<double>(count)},
                        {"instances_with_ties", static_cast<double>(ties)},
                        {"max_residual", max_residual},
                        {"max_depth_probability_error", max_depth},
                        {"max_sibling_error", max_sibling}});
  });
}

tsobs_status tsobs_regret(const tsobs_config* config, tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto& c = config->config;
    if (auto issues = tsobs::validate_config(c); !issues.empty()) {
      throw tsobs::ConfigError(std::move(issues));
    }
    const auto cps = c.effective_checkpoints();
    tsobs::RegretReport r = tsobs::bayes_regret_estimate(
        c.model, c.policy, c.horizon, c.replications, c.master_seed,
        tsobs::resolve_jobs(c.jobs));
    Json json = tsobs::to_json(r, cps);
    write_outputs(c.out_dir,
                  {{"regret.json", json.dump(2) + "\n"},
                   {"regret_series.csv", tsobs::regret_series_csv(r)}});
    std::map<std::string, double> numbers;
    for (auto t : cps) {
      numbers[at("cumulative", t)] = r.cumulative(t);
      numbers[at("cumulative_se", t)] = r.cumulative_se.at(t - 1);
      numbers[at("per_step", t)] = r.per_step(t);
      numbers[at("per_sqrt", t)] = r.per_sqrt(t);
    }
    *out = make_report(tsobs::to_text(r, cps), std::move(json),
                       std::move(numbers));
  });
}

tsobs_status tsobs_counterexample(const tsobs_config* config,
                                  uint64_t fixed_action, tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto& c = config->config;
    if (auto issues = tsobs::validate_config(c); !issues.empty()) {
      throw tsobs::ConfigError(std::move(issues));
    }
    tsobs::ActionIndex fixed = 0;
    if (fixed_action != 0) {
      fixed = fixed_action - 1;
    } else if (const auto* comp =
                   std::get_if<tsobs::SquareStepComposite>(&c.policy)) {
      fixed = comp->fixed_action;
    } else {
      tsobs::fail(ErrorKind::kInvalidArgument,
                  "no fixed action given and the policy is not composite");
    }
    tsobs::CounterexampleReport r = tsobs::counterexample_report(
        c.model, fixed, c.horizon, c.replications, c.master_seed,
        c.effective_checkpoints(), tsobs::resolve_jobs(c.jobs));
    Json json = tsobs::to_json(r);
    write_outputs(c.out_dir, {{"counterexample.json", json.dump(2) + "\n"}});
    std::map<std::string, double> numbers{
        {"forced_plays", static_cast<double>(r.forced_plays)},
        {"regret_per_step_decreasing", r.regret_per_step_decreasing ? 1 : 0},
        {"fixed_count_strictly_increasing",
         r.fixed_count_strictly_increasing ? 1 : 0},
        {"fixed_suboptimal_fraction", r.fixed_suboptimal_fraction},
        {"point_estimate_accuracy", r.point_estimate_accuracy}};
    for (const auto& cp : r.checkpoints) {
      numbers[at("regret_per_step", cp.t)] = cp.regret_per_step;
      numbers[at("fixed_count", cp.t)] = cp.fixed_count;
    }
    *out = make_report(tsobs::to_text(r), std::move(json), std::move(numbers));
  });
}

tsobs_status tsobs_posterior_convergence(const tsobs_config* config,
                                         tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto& c = config->config;
    tsobs::PosteriorConvergenceReport r = tsobs::posterior_convergence_report(
        *grid_model(c).grid, c.horizon, c.replications, c.master_seed,
        tsobs::resolve_jobs(c.jobs));
    Json json = tsobs::to_json(r);
    write_outputs(c.out_dir, {{"posterior.json", json.dump(2) + "\n"}});
    *out = make_report(tsobs::to_text(r), std::move(json),
                       {{"median_gap", r.median_gap}, {"max_gap", r.max_gap}});
  });
}

tsobs_status tsobs_log_count(const tsobs_config* config, tsobs_report** out) {
  TSOBS_REQUIRE_ARG(config != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto& c = config->config;
    if (auto issues = tsobs::validate_config(c); !issues.empty()) {
      throw tsobs::ConfigError(std::move(issues));
    }
    tsobs::LogCountStudy s = tsobs::log_count_study(
        c.model, c.policy, c.effective_checkpoints(), c.replications,
        c.master_seed, tsobs::resolve_jobs(c.jobs));
    Json json = tsobs::to_json(s);
    write_outputs(c.out_dir, {{"log_count.json", json.dump(2) + "\n"}});
    std::map<std::string, double> numbers{
        {"max_consecutive_factor", s.max_consecutive_factor}};
    for (std::size_t a = 0; a < s.median_ratio.size(); ++a) {
      for (std::size_t k = 0; k < s.checkpoints.size(); ++k) {
        numbers[at(("median_a" + std::to_string(a + 1)).c_str(),
                   s.checkpoints[k])] = s.median_ratio[a][k];
      }
    }
    *out = make_report(tsobs::to_text(s), std::move(json), std::move(numbers));
  });
}

// --- reports ---------------------------------------------------------------

const char* tsobs_report_text(const tsobs_report* report) {
  return report == nullptr ? "" : report->text.c_str();
}

const char* tsobs_report_json(const tsobs_report* report) {
  return report == nullptr ? "" : report->json.c_str();
}

tsobs_status tsobs_report_number(const tsobs_report* report, const char* key,
                                 double* out) {
  TSOBS_REQUIRE_ARG(report != nullptr && key != nullptr && out != nullptr,
                    "null argument");
  auto it = report->numbers.find(key);
  if (it == report->numbers.end()) {
    return set_error(TSOBS_ERR_INVALID_ARGUMENT,
                     std::string("report has no number '") + key + "'");
  }
  *out = it->second;
  return TSOBS_OK;
}

void tsobs_report_free(tsobs_report* report) { delete report; }

// --- estimator -------------------------------------------------------------

tsobs_status tsobs_estimator_create(size_t num_actions, tsobs_estimator** out) {
  TSOBS_REQUIRE_ARG(out != nullptr, "out is null");
  return guarded([&] {
    *out = new tsobs_estimator{tsobs::FrequencyEstimator(num_actions)};
  });
}

void tsobs_estimator_free(tsobs_estimator* estimator) { delete estimator; }

tsobs_status tsobs_estimator_record(tsobs_estimator* estimator, size_t action) {
  TSOBS_REQUIRE_ARG(estimator != nullptr, "estimator is null");
  return guarded([&] { estimator->estimator.record(action); });
}

uint64_t tsobs_estimator_total(const tsobs_estimator* estimator) {
  return estimator == nullptr ? 0 : estimator->estimator.total();
}

tsobs_status tsobs_estimator_frequency(const tsobs_estimator* estimator,
                                       const size_t* subset, size_t size,
                                       double* out) {
  TSOBS_REQUIRE_ARG(estimator != nullptr && out != nullptr, "null argument");
  TSOBS_REQUIRE_ARG(subset != nullptr || size == 0, "subset is null");
  return guarded([&] {
    std::vector<tsobs::ActionIndex> actions(subset, subset + size);
    *out = tsobs::frequency(
        estimator->estimator,
        tsobs::ActionSubset(std::move(actions),
                            estimator->estimator.num_actions()));
  });
}

tsobs_status tsobs_estimator_point_estimate(const tsobs_estimator* estimator,
                                            size_t* out) {
  TSOBS_REQUIRE_ARG(estimator != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = tsobs::point_estimate(estimator->estimator); });
}

tsobs_status tsobs_estimator_merge(tsobs_estimator* into,
                                   const tsobs_estimator* from) {
  TSOBS_REQUIRE_ARG(into != nullptr && from != nullptr, "null argument");
  return guarded([&] { into->estimator.merge(from->estimator); });
}

}  // extern "C"
