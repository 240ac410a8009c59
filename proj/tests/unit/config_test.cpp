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
#include "tsobs/config.hpp"

#include <sstream>
#include <string>

#include "doctest.h"
#include "tsobs/format.hpp"
#include "tsobs/trace_io.hpp"

namespace tsobs {
namespace {

std::vector<ConfigIssue> issues_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

TEST_CASE("minimal config gets the documented defaults") {
  auto c = parse_config("means = 0.9 0.1\nmeans = 0.1 0.9\n");
  const auto& g = std::get<GridModel>(c.model);
  CHECK(g.grid->num_parameters() == 2);
  CHECK(g.grid->prior()[0] == 0.5);
  CHECK(!g.true_parameter.has_value());
  CHECK(std::holds_alternative<ThompsonDiscrete>(c.policy));
  CHECK(c.horizon == 1000);
  CHECK(c.replications == 1);
  CHECK(c.master_seed == 0);
  CHECK(c.effective_checkpoints() == std::vector<std::uint64_t>{10, 100, 1000});
  CHECK(c.format == OutputFormat::kCsv);
  CHECK(!c.curve_subset.has_value());
}

TEST_CASE("full text config") {
  auto c = parse_config(R"(# five arms
model = beta-bernoulli
arms = 5
beta_prior = 2, 3
true_means = 0.9 0.7 0.5 0.3 0.1
policy = composite
inner = thompson
fixed_action = 4
horizon = 500
replications = 7
seed = 99
checkpoints = 10 100 500
format = json
traces = yes
subset = 1 2
jobs = 3
)");
  const auto& b = std::get<BetaBernoulliModel>(c.model);
  CHECK(b.num_actions == 5);
  CHECK(b.prior_alpha == 2.0);
  CHECK(b.true_means->at(1) == 0.7);
  const auto& comp = std::get<SquareStepComposite>(c.policy);
  CHECK(comp.fixed_action == 3);
  CHECK(std::get<ThompsonBeta>(comp.inner).prior_beta == 3.0);
  CHECK(c.master_seed == 99);
  CHECK(c.write_traces);
  CHECK(c.curve_subset == std::vector<ActionIndex>{0, 1});
  CHECK(c.jobs == 3);
}

TEST_CASE("checkpoint beyond the horizon names the field and line") {
  auto issues =
      issues_of("means = 0.9 0.1\nhorizon = 50\ncheckpoints = 10 60\n");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].field == "checkpoints");
  CHECK(issues[0].line == 3);
}

TEST_CASE("negative prior weight is reported by model validation") {
  auto issues =
      issues_of("prior = -0.5 1.5\nmeans = 0.9 0.1\nmeans = 0.1 0.9\n");
  REQUIRE(!issues.empty());
  CHECK(issues[0].field == "prior");
  CHECK(issues[0].line == 1);
}

TEST_CASE("syntax and key errors") {
  auto issues = issues_of("means = 0.9 0.1\nhorizn = 5\n");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].message == "unknown key");
  CHECK(issues[0].line == 2);
  CHECK(issues[0].to_string() == "line 2: horizn: unknown key");

  issues = issues_of("means = 0.9 0.1\nhorizon = 5\nhorizon = 6\n");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].message == "duplicate key");

  issues = issues_of("means = 0.9 0.1\nthis line has no equals\n");
  REQUIRE(!issues.empty());
  CHECK(issues[0].line == 2);

  issues = issues_of("means = 0.9 abc\n");
  REQUIRE(!issues.empty());
  CHECK(issues[0].field == "means");

  issues = issues_of("means = 0.9 0.1\npolicy = composite\n");
  REQUIRE(!issues.empty());
  CHECK(issues[0].field == "fixed_action");

  issues = issues_of("means = 0.9 0.1\nhorizon = 0\n");
  REQUIRE(!issues.empty());
  CHECK(issues[0].field == "horizon");
}

TEST_CASE("JSON input") {
  auto c = parse_config(R"({
    "model": "grid",
    "prior": [0.25, 0.75],
    "means": [[0.9, 0.1], [0.1, 0.9]],
    "true_parameter": 2,
    "horizon": 40,
    "seed": 5
  })");
  const auto& g = std::get<GridModel>(c.model);
  CHECK(g.grid->prior()[1] == 0.75);
  CHECK(g.true_parameter == 1);
  CHECK(c.horizon == 40);
  CHECK_THROWS_AS(parse_config(R"({"means": [[0.5]], "bogus": 1})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
}

TEST_CASE("render_config round-trips") {
  auto c = parse_config(
      "prior = 0.2 0.8\nmeans = 0.3 0.6 0.1\nmeans = 0.7 0.2 0.4\n"
      "true_parameter = 2\npolicy = composite\nfixed_action = 3\n"
      "inner = uniform\nhorizon = 77\ncheckpoints = 7 77\nsubset = 2 3\n");
  const std::string text = render_config(c);
  auto again = parse_config(text);
  CHECK(render_config(again) == text);
  CHECK(render_config(default_config()) ==
        render_config(parse_config(render_config(default_config()))));
}

TEST_CASE("missing config file is a config error") {
  try {
    load_config("/nonexistent/tsobs.cfg");
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfig);
  }
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5, 0.0}) {
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(!parse_double("1.5x").has_value());
  CHECK(parse_u64("+12") == 12u);
  CHECK(!parse_u64("-1").has_value());
}

TEST_CASE("trace CSV round-trip") {
  ActionTrace t(3);
  t.append(0, 1.0);
  t.append(2, 0.0);
  t.append(1, 1.0);
  std::vector<std::vector<double>> snaps{
      {0.2, 0.3, 0.5}, {1.0 / 3.0, 0.0, 2.0 / 3.0}, {0.1, 0.7, 0.2}};
  std::stringstream ss;
  write_trace_csv(ss, t, snaps);
  const std::string text = ss.str();
  CHECK(text.rfind("t,action,reward,p_1,p_2,p_3\n1,1,1,", 0) == 0);
  auto back = read_trace_csv(ss, 3);
  CHECK(back.trace == t);
  CHECK(back.snapshots == snaps);

  std::stringstream plain;
  write_trace_csv(plain, t);
  CHECK(plain.str().rfind("t,action,reward\n", 0) == 0);
  CHECK(read_trace_csv(plain, 3).trace == t);

  std::stringstream bad("t,action,reward\n1,1,1\n3,2,0\n");
  try {
    read_trace_csv(bad, 3);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIo);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

}  // namespace
}  // namespace tsobs
