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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tsobs/diagnostics.hpp"
#include "tsobs/format.hpp"

namespace tsobs {

std::string ConfigIssue::to_string() const {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!field.empty()) out += field + ": ";
  return out + message;
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string msg = "invalid config";
  for (const auto& i : issues) msg += "\n  " + i.to_string();
  return msg;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(ErrorKind::kConfig, join_issues(issues)),
      issues_(std::move(issues)) {}

std::vector<std::uint64_t> ExperimentConfig::effective_checkpoints() const {
  if (!checkpoints.empty()) return checkpoints;
  return decade_checkpoints(horizon);
}

std::shared_ptr<const ParameterGrid> default_grid() {
  return std::make_shared<const ParameterGrid>(
      std::vector<double>{0.5, 0.5},
      std::vector<std::vector<double>>{{0.9, 0.1}, {0.1, 0.9}});
}

ExperimentConfig default_config() {
  ExperimentConfig config;
  config.model = GridModel{default_grid(), std::nullopt};
  return config;
}

namespace {

struct Entry {
  std::size_t line = 0;
  std::string key;
  std::vector<std::string> tokens;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<Entry> lex_text(std::string_view text,
                            std::vector<ConfigIssue>& issues) {
  std::vector<Entry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      issues.push_back(
          {line_no, "", "expected 'key = value', got '" + body + "'"});
      continue;
    }
    Entry e{line_no, lower(trim(std::string_view(body).substr(0, eq))),
            split_tokens(std::string_view(body).substr(eq + 1))};
    if (e.key.empty()) {
      issues.push_back({line_no, "", "missing key before '='"});
      continue;
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::vector<Entry> lex_json(std::string_view text,
                            std::vector<ConfigIssue>& issues) {
  std::vector<Entry> entries;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    issues.push_back({0, "", std::string("malformed JSON: ") + e.what()});
    return entries;
  }
  if (!doc.is_object()) {
    issues.push_back({0, "", "JSON config must be an object"});
    return entries;
  }
  for (const auto& [key, value] : doc.items()) {
    const std::string k = lower(key);
    if (value.is_array() && !value.empty() && value.front().is_array()) {
      for (const auto& row : value) {
        Entry e{0, k, {}};
        if (!row.is_array()) {
          issues.push_back({0, k, "mixes rows and scalars"});
          continue;
        }
        for (const auto& x : row) e.tokens.push_back(json_scalar(x));
        entries.push_back(std::move(e));
      }
    } else if (value.is_array()) {
      Entry e{0, k, {}};
      for (const auto& x : value) e.tokens.push_back(json_scalar(x));
      entries.push_back(std::move(e));
    } else if (value.is_string()) {
      entries.push_back({0, k, split_tokens(value.get<std::string>())});
    } else if (value.is_object() || value.is_null()) {
      issues.push_back({0, k, "unsupported value type"});
    } else {
      entries.push_back({0, k, {json_scalar(value)}});
    }
  }
  return entries;
}

// Collects typed values out of the lexed entries, recording issues.
class Reader {
 public:
  Reader(std::vector<Entry> entries, std::vector<ConfigIssue>& issues)
      : issues_(issues) {
    static const std::set<std::string> kRepeatable = {"means"};
    static const std::set<std::string> kKnown = {
        "model",       "reward",       "sigma",
        "prior",       "means",        "arms",
        "beta_prior",  "true_means",   "true_parameter",
        "policy",      "inner",        "fixed_action",
        "horizon",     "replications", "seed",
        "checkpoints", "out",          "format",
        "traces",      "snapshots",    "subset",
        "jobs"};
    for (auto& e : entries) {
      if (!kKnown.count(e.key)) {
        issues_.push_back({e.line, e.key, "unknown key"});
        continue;
      }
      if (!kRepeatable.count(e.key) && by_key_.count(e.key)) {
        issues_.push_back({e.line, e.key, "duplicate key"});
        continue;
      }
      by_key_[e.key].push_back(std::move(e));
    }
  }

  bool has(const std::string& key) const { return by_key_.count(key) > 0; }

  std::size_t line_of(const std::string& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? 0 : it->second.front().line;
  }

  const std::vector<Entry>* all(const std::string& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? nullptr : &it->second;
  }

  void issue(const std::string& key, const std::string& message) {
    issues_.push_back({line_of(key), key, message});
  }

  std::optional<std::string> word(const std::string& key) {
    const auto* e = single(key);
    if (!e) return std::nullopt;
    return lower(e->tokens.front());
  }

  std::optional<std::string> raw_word(const std::string& key) {
    const auto* e = single(key);
    if (!e) return std::nullopt;
    return e->tokens.front();
  }

  std::optional<std::uint64_t> u64(const std::string& key) {
    const auto* e = single(key);
    if (!e) return std::nullopt;
    auto v = parse_u64(e->tokens.front());
    if (!v)
      issue(key,
            "expected a nonnegative integer, got '" + e->tokens.front() + "'");
    return v;
  }

  std::optional<double> real(const std::string& key) {
    const auto* e = single(key);
    if (!e) return std::nullopt;
    auto v = parse_double(e->tokens.front());
    if (!v) issue(key, "expected a number, got '" + e->tokens.front() + "'");
    return v;
  }

  std::optional<bool> flag(const std::string& key) {
    auto w = word(key);
    if (!w) return std::nullopt;
    if (*w == "true" || *w == "yes" || *w == "1" || *w == "on") return true;
    if (*w == "false" || *w == "no" || *w == "0" || *w == "off") return false;
    issue(key, "expected true or false, got '" + *w + "'");
    return std::nullopt;
  }

  std::optional<std::vector<double>> reals(const Entry& e) {
    std::vector<double> out;
    for (const auto& tok : e.tokens) {
      auto v = parse_double(tok);
      if (!v) {
        issues_.push_back(
            {e.line, e.key, "expected a number, got '" + tok + "'"});
        return std::nullopt;
      }
      out.push_back(*v);
    }
    if (out.empty()) {
      issues_.push_back({e.line, e.key, "expected at least one number"});
      return std::nullopt;
    }
    return out;
  }

  std::optional<std::vector<double>> reals(const std::string& key) {
    const auto* es = all(key);
    if (!es) return std::nullopt;
    return reals(es->front());
  }

  std::optional<std::vector<std::uint64_t>> u64s(const std::string& key) {
    const auto* es = all(key);
    if (!es) return std::nullopt;
    std::vector<std::uint64_t> out;
    for (const auto& tok : es->front().tokens) {
      auto v = parse_u64(tok);
      if (!v) {
        issue(key, "expected nonnegative integers, got '" + tok + "'");
        return std::nullopt;
      }
      out.push_back(*v);
    }
    return out;
  }

 private:
  const Entry* single(const std::string& key) {
    const auto* es = all(key);
    if (!es) return nullptr;
    const Entry& e = es->front();
    if (e.tokens.size() != 1) {
      issues_.push_back({e.line, key, "expected exactly one value"});
      return nullptr;
    }
    return &e;
  }

  std::vector<ConfigIssue>& issues_;
  std::map<std::string, std::vector<Entry>> by_key_;
};

std::optional<BasePolicyKind> base_policy(const std::string& name,
                                          bool grid_model,
                                          const BetaBernoulliModel* beta) {
  if (name == "thompson") {
    // With a broken model section either choice is fine; the model issue is
    // what gets reported.
    if (grid_model || beta == nullptr) return ThompsonDiscrete{};
    return ThompsonBeta{beta->prior_alpha, beta->prior_beta};
  }
  if (name == "thompson-discrete") return ThompsonDiscrete{};
  if (name == "thompson-beta") {
    if (beta) return ThompsonBeta{beta->prior_alpha, beta->prior_beta};
    return ThompsonBeta{};
  }
  if (name == "uniform") return UniformRandom{};
  return std::nullopt;
}

PolicyKind widen(const BasePolicyKind& base) {
  return std::visit([](const auto& k) -> PolicyKind { return k; }, base);
}

// Builds the model section. Returns nullopt when it cannot be built at all.
std::optional<ModelSpec> read_model(Reader& r) {
  const std::string kind = r.word("model").value_or("grid");
  if (kind == "grid") {
    for (const char* k : {"arms", "beta_prior", "true_means"}) {
      if (r.has(k)) r.issue(k, "only applies to model = beta-bernoulli");
    }
    RewardModel reward;
    const std::string family = r.word("reward").value_or("bernoulli");
    if (family == "gaussian") {
      reward = RewardModel::gaussian(r.real("sigma").value_or(1.0));
    } else if (family != "bernoulli") {
      r.issue("reward", "expected bernoulli or gaussian, got '" + family + "'");
      return std::nullopt;
    } else if (r.has("sigma")) {
      r.issue("sigma", "only applies to reward = gaussian");
    }
    const auto* rows = r.all("means");
    if (!rows) {
      r.issue("means", "grid model needs at least one 'means' row");
      return std::nullopt;
    }
    std::vector<std::vector<double>> means;
    for (const auto& e : *rows) {
      auto row = r.reals(e);
      if (!row) return std::nullopt;
      means.push_back(std::move(*row));
    }
    std::vector<double> prior;
    if (r.has("prior")) {
      auto p = r.reals("prior");
      if (!p) return std::nullopt;
      prior = std::move(*p);
    } else {
      prior.assign(means.size(), 1.0 / static_cast<double>(means.size()));
    }
    std::shared_ptr<const ParameterGrid> grid;
    try {
      grid = std::make_shared<const ParameterGrid>(std::move(prior), means,
                                                   reward);
    } catch (const Error& e) {
      r.issue(r.has("prior") ? "prior" : "means", e.what());
      return std::nullopt;
    }
    GridModel model{grid, std::nullopt};
    if (auto tp = r.word("true_parameter"); tp && *tp != "prior") {
      auto idx = parse_u64(*tp);
      if (!idx || *idx < 1 || *idx > grid->num_parameters()) {
        r.issue("true_parameter", "expected 'prior' or an index in 1.." +
                                      std::to_string(grid->num_parameters()));
      } else {
        model.true_parameter = *idx - 1;
      }
    }
    return ModelSpec{model};
  }
  if (kind == "beta-bernoulli") {
    for (const char* k : {"means", "prior", "reward", "sigma"}) {
      if (r.has(k)) r.issue(k, "only applies to model = grid");
    }
    BetaBernoulliModel model;
    if (auto bp = r.reals("beta_prior")) {
      if (bp->size() != 2) {
        r.issue("beta_prior", "expected two values: alpha beta");
      } else {
        model.prior_alpha = (*bp)[0];
        model.prior_beta = (*bp)[1];
      }
    }
    if (r.has("true_means")) {
      model.true_means = r.reals("true_means");
      if (!model.true_means) return std::nullopt;
    }
    if (auto arms = r.u64("arms")) {
      model.num_actions = *arms;
    } else if (model.true_means) {
      model.num_actions = model.true_means->size();
    } else {
      r.issue("arms", "beta-bernoulli model needs 'arms' or 'true_means'");
      return std::nullopt;
    }
    const std::string tp =
        r.word("true_parameter").value_or(model.true_means ? "fixed" : "prior");
    if (tp == "prior") {
      model.true_means.reset();
    } else if (tp == "fixed") {
      if (!model.true_means)
        r.issue("true_parameter", "'fixed' needs true_means");
    } else {
      r.issue("true_parameter",
              "expected 'prior' or 'fixed' for beta-bernoulli");
    }
    return ModelSpec{model};
  }
  r.issue("model", "expected grid or beta-bernoulli, got '" + kind + "'");
  return std::nullopt;
}

std::vector<Entry> lex(std::string_view text,
                       std::vector<ConfigIssue>& issues) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return lex_json(text, issues);
  }
  return lex_text(text, issues);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  std::vector<ConfigIssue> issues;
  Reader r(lex(text, issues), issues);

  ExperimentConfig config;
  auto model = read_model(r);
  if (model) config.model = *model;

  const bool grid_model = model && std::holds_alternative<GridModel>(*model);
  const auto* beta = model ? std::get_if<BetaBernoulliModel>(&*model) : nullptr;
  const std::string policy = r.word("policy").value_or("thompson");
  if (policy == "composite") {
    SquareStepComposite c;
    const std::string inner = r.word("inner").value_or("thompson");
    if (auto k = base_policy(inner, grid_model, beta)) {
      c.inner = *k;
    } else {
      r.issue("inner",
              "expected thompson, thompson-discrete, thompson-beta or "
              "uniform, got '" +
                  inner + "'");
    }
    if (auto fixed = r.u64("fixed_action")) {
      if (*fixed < 1) {
        r.issue("fixed_action", "actions are numbered from 1");
      } else {
        c.fixed_action = *fixed - 1;
      }
    } else if (!r.has("fixed_action")) {
      r.issue("fixed_action", "composite policy needs a fixed_action");
    }
    config.policy = c;
  } else if (auto k = base_policy(policy, grid_model, beta)) {
    config.policy = widen(*k);
    for (const char* key : {"inner", "fixed_action"}) {
      if (r.has(key)) r.issue(key, "only applies to policy = composite");
    }
  } else {
    r.issue("policy",
            "expected thompson, thompson-discrete, thompson-beta, "
            "uniform or composite, got '" +
                policy + "'");
  }

  if (auto v = r.u64("horizon")) config.horizon = *v;
  if (auto v = r.u64("replications")) config.replications = *v;
  if (auto v = r.u64("seed")) config.master_seed = *v;
  if (auto v = r.u64s("checkpoints")) config.checkpoints = *v;
  if (auto v = r.raw_word("out")) config.out_dir = *v;
  if (auto v = r.word("format")) {
    if (*v == "csv") {
      config.format = OutputFormat::kCsv;
    } else if (*v == "json") {
      config.format = OutputFormat::kJson;
    } else {
      r.issue("format", "expected csv or json, got '" + *v + "'");
    }
  }
  if (auto v = r.flag("traces")) config.write_traces = *v;
  if (auto v = r.flag("snapshots")) config.snapshots = *v;
  if (auto v = r.u64("jobs")) config.jobs = static_cast<int>(*v);
  if (const auto* es = r.all("subset")) {
    const auto& toks = es->front().tokens;
    if (!(toks.size() == 1 && lower(toks.front()) == "optimal")) {
      std::vector<ActionIndex> subset;
      for (const auto& tok : toks) {
        auto v = parse_u64(tok);
        if (!v || *v < 1) {
          r.issue("subset", "expected 'optimal' or 1-based action indices");
          break;
        }
        subset.push_back(*v - 1);
      }
      config.curve_subset = std::move(subset);
    }
  }

  if (model) {
    for (auto& i : validate_config(config)) {
      if (i.line == 0) i.line = r.line_of(i.field);
      issues.push_back(std::move(i));
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kConfig, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<ConfigIssue> validate_config(const ExperimentConfig& config) {
  std::vector<ConfigIssue> issues;
  auto add = [&](std::string field, std::string message) {
    issues.push_back({0, std::move(field), std::move(message)});
  };

  if (config.horizon < 1) add("horizon", "must be at least 1");
  if (config.replications < 1) add("replications", "must be at least 1");
  std::uint64_t previous = 0;
  for (auto t : config.checkpoints) {
    if (t < 1 || t <= previous) {
      add("checkpoints", "must be positive and strictly increasing");
      break;
    }
    if (t > config.horizon) {
      add("checkpoints", "checkpoint " + std::to_string(t) +
                             " exceeds the horizon " +
                             std::to_string(config.horizon));
      break;
    }
    previous = t;
  }

  std::size_t k = 0;
  if (const auto* g = std::get_if<GridModel>(&config.model)) {
    if (!g->grid) {
      add("means", "grid model has no grid");
      return issues;
    }
    k = g->grid->num_actions();
    for (const auto& v : validate_model(*g->grid)) add(v.field, v.message);
    if (g->true_parameter && *g->true_parameter >= g->grid->num_parameters()) {
      add("true_parameter", "index out of range");
    }
  } else {
    const auto& b = std::get<BetaBernoulliModel>(config.model);
    k = b.num_actions;
    if (k < 1) add("arms", "must be at least 1");
    if (!(b.prior_alpha > 0.0 && b.prior_beta > 0.0 &&
          std::isfinite(b.prior_alpha) && std::isfinite(b.prior_beta))) {
      add("beta_prior", "alpha and beta must be finite and positive");
    }
    if (b.true_means) {
      if (b.true_means->size() != k) {
        add("true_means", "has " + std::to_string(b.true_means->size()) +
                              " entries but arms = " + std::to_string(k));
      }
      for (double f : *b.true_means) {
        if (!(f >= 0.0 && f <= 1.0)) {
          add("true_means", "bernoulli means must lie in [0, 1]");
          break;
        }
      }
    }
  }

  if (const auto* c = std::get_if<SquareStepComposite>(&config.policy)) {
    if (c->fixed_action >= k) {
      add("fixed_action", "action " + std::to_string(c->fixed_action + 1) +
                              " exceeds the action count " + std::to_string(k));
    }
  }
  if (config.curve_subset) {
    for (auto a : *config.curve_subset) {
      if (a >= k) {
        add("subset", "action " + std::to_string(a + 1) +
                          " exceeds the action count " + std::to_string(k));
        break;
      }
    }
  }
  if (issues.empty()) {
    try {
      (void)initial_policy_state(config.model, config.policy);
    } catch (const Error& e) {
      add("policy", e.what());
    }
  }
  return issues;
}

namespace {

std::string join_reals(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += format_double(xs[i]);
  }
  return out;
}

std::string base_name(const BasePolicyKind& k) {
  if (std::holds_alternative<ThompsonDiscrete>(k)) return "thompson-discrete";
  if (std::holds_alternative<ThompsonBeta>(k)) return "thompson-beta";
  return "uniform";
}

}  // namespace

std::string render_config(const ExperimentConfig& config) {
  std::ostringstream out;
  if (const auto* g = std::get_if<GridModel>(&config.model)) {
    out << "model = grid\n";
    out << "reward = " << g->grid->reward().name() << "\n";
    if (g->grid->reward().family == RewardFamily::kGaussian) {
      out << "sigma = " << format_double(g->grid->reward().sigma) << "\n";
    }
    out << "prior = " << join_reals(g->grid->prior()) << "\n";
    for (ParameterIndex m = 0; m < g->grid->num_parameters(); ++m) {
      out << "means = " << join_reals(g->grid->row(m)) << "\n";
    }
    out << "true_parameter = "
        << (g->true_parameter ? std::to_string(*g->true_parameter + 1)
                              : std::string("prior"))
        << "\n";
  } else {
    const auto& b = std::get<BetaBernoulliModel>(config.model);
    out << "model = beta-bernoulli\n";
    out << "arms = " << b.num_actions << "\n";
    out << "beta_prior = " << format_double(b.prior_alpha) << " "
        << format_double(b.prior_beta) << "\n";
    if (b.true_means) {
      out << "true_means = " << join_reals(*b.true_means) << "\n";
      out << "true_parameter = fixed\n";
    } else {
      out << "true_parameter = prior\n";
    }
  }
  if (const auto* c = std::get_if<SquareStepComposite>(&config.policy)) {
    out << "policy = composite\n";
    out << "inner = " << base_name(c->inner) << "\n";
    out << "fixed_action = " << c->fixed_action + 1 << "\n";
  } else {
    const auto base = std::visit(
        [](const auto& k) -> BasePolicyKind {
          if constexpr (std::is_same_v<std::decay_t<decltype(k)>,
                                       SquareStepComposite>) {
            return UniformRandom{};
          } else {
            return k;
          }
        },
        config.policy);
    out << "policy = " << base_name(base) << "\n";
  }
  out << "horizon = " << config.horizon << "\n";
  out << "replications = " << config.replications << "\n";
  out << "seed = " << config.master_seed << "\n";
  if (!config.checkpoints.empty()) {
    out << "checkpoints =";
    for (auto t : config.checkpoints) out << " " << t;
    out << "\n";
  }
  if (!config.out_dir.empty()) out << "out = " << config.out_dir << "\n";
  out << "format = " << (config.format == OutputFormat::kJson ? "json" : "csv")
      << "\n";
  out << "traces = " << (config.write_traces ? "true" : "false") << "\n";
  out << "snapshots = " << (config.snapshots ? "true" : "false") << "\n";
  out << "subset =";
  if (config.curve_subset) {
    for (auto a : *config.curve_subset) out << " " << a + 1;
  } else {
    out << " optimal";
  }
  out << "\n";
  return out.str();
}

}  // namespace tsobs
