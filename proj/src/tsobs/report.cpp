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
#include "tsobs/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "tsobs/format.hpp"

namespace tsobs {

namespace {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json numbers(const std::vector<double>& xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(number(x));
  return arr;
}

Json one_based(const std::vector<ActionIndex>& xs) {
  Json arr = Json::array();
  for (auto x : xs) arr.push_back(x + 1);
  return arr;
}

std::string fmt(double x, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

std::string history_text(
    const std::vector<std::pair<ActionIndex, double>>& steps) {
  if (steps.empty()) return "(root)";
  std::string out;
  for (const auto& [a, r] : steps) {
    if (!out.empty()) out += ' ';
    out += "a" + std::to_string(a + 1) + ":" + format_double(r);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// RunSummary

Json to_json(const RunSummary& s) {
  Json j;
  j["model"] = s.model;
  j["policy"] = s.policy;
  j["horizon"] = s.horizon;
  j["replications"] = s.rows.size();
  j["master_seed"] = s.master_seed;
  j["checkpoints"] = s.checkpoints;
  j["accuracy"] = s.accuracy;
  Json regret = Json::array();
  for (const auto& r : s.regret) {
    regret.push_back({{"t", r.t},
                      {"mean", r.mean},
                      {"se", r.se},
                      {"per_step", r.per_step},
                      {"per_sqrt", r.per_sqrt}});
  }
  j["regret"] = regret;
  Json rows = Json::array();
  for (const auto& row : s.rows) {
    Json jr;
    jr["replication"] = row.replication + 1;
    jr["seed"] = row.seed;
    if (row.true_parameter) {
      jr["true_parameter"] = *row.true_parameter + 1;
    } else {
      jr["true_parameter"] = nullptr;
    }
    jr["true_means"] = numbers(row.true_means);
    jr["optimal_action"] = row.optimal_action + 1;
    jr["point_estimate"] = row.point_estimate + 1;
    jr["frequencies"] = numbers(row.frequencies);
    jr["regret"] = numbers(row.regret_at);
    jr["curve_subset"] = one_based(row.curve_subset);
    jr["curve"] = numbers(row.curve);
    if (row.terminal_p) jr["terminal_p"] = numbers(*row.terminal_p);
    jr["forced_plays"] = row.forced_plays;
    rows.push_back(std::move(jr));
  }
  j["rows"] = rows;
  return j;
}

std::string summary_csv(const RunSummary& s) {
  std::ostringstream out;
  const std::size_t k = s.rows.empty() ? 0 : s.rows.front().frequencies.size();
  out << "replication,seed,true_parameter,optimal_action,point_estimate,"
         "correct";
  for (std::size_t a = 1; a <= k; ++a) out << ",f_" << a;
  for (auto t : s.checkpoints) out << ",regret_" << t;
  out << ",forced_plays\n";
  for (const auto& row : s.rows) {
    out << row.replication + 1 << ',' << row.seed << ',';
    if (row.true_parameter) out << *row.true_parameter + 1;
    out << ',' << row.optimal_action + 1 << ',' << row.point_estimate + 1 << ','
        << (row.point_estimate == row.optimal_action ? 1 : 0);
    for (double f : row.frequencies) out << ',' << format_double(f);
    for (double r : row.regret_at) out << ',' << format_double(r);
    out << ',' << row.forced_plays << '\n';
  }
  return out.str();
}

std::string aggregate_csv(const RunSummary& s) {
  std::ostringstream out;
  out << "key,value\n";
  out << "model," << s.model << '\n';
  out << "policy," << s.policy << '\n';
  out << "horizon," << s.horizon << '\n';
  out << "replications," << s.rows.size() << '\n';
  out << "master_seed," << s.master_seed << '\n';
  out << "accuracy," << format_double(s.accuracy) << '\n';
  return out.str();
}

std::string curves_csv(const RunSummary& s) {
  std::ostringstream out;
  out << "replication,t,value\n";
  for (const auto& row : s.rows) {
    for (std::size_t c = 0; c < row.curve.size(); ++c) {
      out << row.replication + 1 << ',' << s.checkpoints[c] << ','
          << format_double(row.curve[c]) << '\n';
    }
  }
  return out.str();
}

std::string regret_checkpoints_csv(const RunSummary& s) {
  std::ostringstream out;
  out << "t,cumulative_mean,cumulative_se,per_step,per_sqrt\n";
  for (const auto& r : s.regret) {
    out << r.t << ',' << format_double(r.mean) << ',' << format_double(r.se)
        << ',' << format_double(r.per_step) << ',' << format_double(r.per_sqrt)
        << '\n';
  }
  return out.str();
}

std::string to_text(const RunSummary& s) {
  std::ostringstream out;
  out << "model         " << s.model << "\n"
      << "policy        " << s.policy << "\n"
      << "horizon       " << s.horizon << "\n"
      << "replications  " << s.rows.size() << "\n"
      << "master seed   " << s.master_seed << "\n"
      << "accuracy      " << fmt(s.accuracy) << "  (point estimate == A*)\n\n";
  out << std::setw(12) << "t" << std::setw(16) << "regret" << std::setw(14)
      << "se" << std::setw(14) << "regret/t" << std::setw(16)
      << "regret/sqrt(t)" << "\n";
  for (const auto& r : s.regret) {
    out << std::setw(12) << r.t << std::setw(16) << fmt(r.mean) << std::setw(14)
        << fmt(r.se) << std::setw(14) << fmt(r.per_step) << std::setw(16)
        << fmt(r.per_sqrt) << "\n";
  }
  if (!s.files.empty()) {
    out << "\nwrote";
    for (const auto& f : s.files) out << " " << f;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Enumeration

Json to_json(const EnumerationTree& tree) {
  Json j;
  j["horizon"] = tree.horizon();
  j["num_actions"] = tree.num_actions();
  Json nodes = Json::array();
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const auto& n = tree[i];
    Json history = Json::array();
    for (const auto& [a, r] : tree.history(i)) {
      history.push_back({{"action", a + 1}, {"reward", r}});
    }
    nodes.push_back(
        {{"id", i},
         {"depth", n.depth},
         {"history", history},
         {"probability", n.probability},
         {"belief", numbers(std::vector<double>(n.belief.weights().begin(),
                                                n.belief.weights().end()))},
         {"p", numbers(n.p_vector)}});
  }
  j["nodes"] = nodes;
  return j;
}

std::string to_text(const EnumerationTree& tree) {
  std::ostringstream out;
  out << "horizon " << tree.horizon() << ", " << tree.num_actions()
      << " actions, " << tree.nodes().size() << " nodes\n";
  out << std::setw(6) << "depth" << std::setw(14) << "probability" << "  "
      << std::left << std::setw(28) << "p" << std::setw(28) << "belief"
      << "history" << std::right << "\n";
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const auto& n = tree[i];
    std::string p, w;
    for (double x : n.p_vector) p += (p.empty() ? "" : " ") + fmt(x, 5);
    for (double x : n.belief.weights()) w += (w.empty() ? "" : " ") + fmt(x, 5);
    out << std::setw(6) << n.depth << std::setw(14) << fmt(n.probability, 8)
        << "  " << std::left << std::setw(28) << p << std::setw(28) << w
        << history_text(tree.history(i)) << std::right << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Martingale

Json to_json(const MartingaleResidualReport& r) {
  Json j;
  j["max_residual"] = r.max_residual;
  j["worst_node"] = r.worst_node;
  j["internal_nodes"] = r.internal_nodes;
  j["subsets_per_node"] = r.subsets_checked;
  j["max_depth_probability_error"] = r.max_depth_probability_error;
  j["max_sibling_error"] = r.max_sibling_error;
  return j;
}

std::string to_text(const MartingaleResidualReport& r) {
  std::ostringstream out;
  out << "internal nodes        " << r.internal_nodes << "\n"
      << "subsets per node      " << r.subsets_checked << "\n"
      << "max tower residual    " << fmt(r.max_residual, 3) << "\n"
      << "max depth mass error  " << fmt(r.max_depth_probability_error, 3)
      << "\n"
      << "max sibling error     " << fmt(r.max_sibling_error, 3) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Regret

Json to_json(const RegretReport& r,
             const std::vector<std::uint64_t>& checkpoints) {
  Json j;
  j["horizon"] = r.horizon;
  j["replications"] = r.replications;
  Json cps = Json::array();
  for (auto t : checkpoints) {
    cps.push_back({{"t", t},
                   {"cumulative", r.cumulative(t)},
                   {"cumulative_se", r.cumulative_se.at(t - 1)},
                   {"per_step", r.per_step(t)},
                   {"per_sqrt", r.per_sqrt(t)},
                   {"gap", r.gap_mean.at(t - 1)},
                   {"gap_se", r.gap_se.at(t - 1)}});
  }
  j["checkpoints"] = cps;
  return j;
}

std::string to_text(const RegretReport& r,
                    const std::vector<std::uint64_t>& checkpoints) {
  std::ostringstream out;
  out << "horizon " << r.horizon << ", " << r.replications << " replications\n";
  out << std::setw(12) << "t" << std::setw(16) << "regret" << std::setw(14)
      << "se" << std::setw(14) << "regret/t" << std::setw(16)
      << "regret/sqrt(t)" << std::setw(14) << "gap(t)" << "\n";
  for (auto t : checkpoints) {
    out << std::setw(12) << t << std::setw(16) << fmt(r.cumulative(t))
        << std::setw(14) << fmt(r.cumulative_se.at(t - 1)) << std::setw(14)
        << fmt(r.per_step(t)) << std::setw(16) << fmt(r.per_sqrt(t))
        << std::setw(14) << fmt(r.gap_mean.at(t - 1)) << "\n";
  }
  return out.str();
}

std::string regret_series_csv(const RegretReport& r) {
  std::ostringstream out;
  out << "t,gap_mean,gap_se,cumulative_mean,cumulative_se\n";
  for (std::size_t i = 0; i < r.gap_mean.size(); ++i) {
    out << i + 1 << ',' << format_double(r.gap_mean[i]) << ','
        << format_double(r.gap_se[i]) << ','
        << format_double(r.cumulative_mean[i]) << ','
        << format_double(r.cumulative_se[i]) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Counterexample

Json to_json(const CounterexampleReport& r) {
  Json j;
  j["fixed_action"] = r.fixed_action + 1;
  j["horizon"] = r.horizon;
  j["replications"] = r.replications;
  j["forced_plays"] = r.forced_plays;
  j["regret_per_step_decreasing"] = r.regret_per_step_decreasing;
  j["fixed_count_strictly_increasing"] = r.fixed_count_strictly_increasing;
  j["fixed_suboptimal_fraction"] = r.fixed_suboptimal_fraction;
  j["point_estimate_accuracy"] = r.point_estimate_accuracy;
  Json cps = Json::array();
  for (const auto& c : r.checkpoints) {
    cps.push_back({{"t", c.t},
                   {"forced_plays", c.forced_plays},
                   {"regret_per_step", c.regret_per_step},
                   {"fixed_count", c.fixed_count},
                   {"fixed_frequency", c.fixed_frequency}});
  }
  j["checkpoints"] = cps;
  return j;
}

std::string to_text(const CounterexampleReport& r) {
  std::ostringstream out;
  out << "fixed action           a" << r.fixed_action + 1 << "\n"
      << "horizon                " << r.horizon << "\n"
      << "replications           " << r.replications << "\n"
      << "forced plays           " << r.forced_plays << "\n"
      << "fixed arm suboptimal   " << fmt(r.fixed_suboptimal_fraction)
      << " of replications\n"
      << "regret/t decreasing    "
      << (r.regret_per_step_decreasing ? "yes" : "no") << "\n"
      << "fixed count increasing "
      << (r.fixed_count_strictly_increasing ? "yes" : "no") << "\n"
      << "point estimate == A*   " << fmt(r.point_estimate_accuracy) << "\n\n";
  out << std::setw(12) << "t" << std::setw(10) << "forced" << std::setw(14)
      << "regret/t" << std::setw(16) << "fixed count" << std::setw(16)
      << "fixed freq" << "\n";
  for (const auto& c : r.checkpoints) {
    out << std::setw(12) << c.t << std::setw(10) << c.forced_plays
        << std::setw(14) << fmt(c.regret_per_step) << std::setw(16)
        << fmt(c.fixed_count) << std::setw(16) << fmt(c.fixed_frequency)
        << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Log-count study

Json to_json(const LogCountStudy& s) {
  Json j;
  j["checkpoints"] = s.checkpoints;
  Json arms = Json::array();
  for (std::size_t a = 0; a < s.median_ratio.size(); ++a) {
    arms.push_back(
        {{"action", a + 1}, {"median_ratio", numbers(s.median_ratio[a])}});
  }
  j["arms"] = arms;
  j["max_consecutive_factor"] = number(s.max_consecutive_factor);
  return j;
}

std::string to_text(const LogCountStudy& s) {
  std::ostringstream out;
  out << "median N_a(T) / log T over replications where a is suboptimal\n";
  out << std::setw(8) << "action";
  for (auto t : s.checkpoints) out << std::setw(14) << t;
  out << "\n";
  for (std::size_t a = 0; a < s.median_ratio.size(); ++a) {
    out << std::setw(8) << ("a" + std::to_string(a + 1));
    for (double x : s.median_ratio[a]) out << std::setw(14) << fmt(x, 5);
    out << "\n";
  }
  out << "max consecutive factor " << fmt(s.max_consecutive_factor, 4) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Posterior convergence

Json to_json(const PosteriorConvergenceReport& r) {
  Json j;
  j["horizon"] = r.horizon;
  j["median_gap"] = r.median_gap;
  j["max_gap"] = r.max_gap;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"replication", row.replication + 1},
                    {"true_parameter", row.true_parameter + 1},
                    {"optimal_action", row.optimal_action + 1},
                    {"p", numbers(row.p_terminal)},
                    {"gap", row.gap}});
  }
  j["rows"] = rows;
  return j;
}

std::string to_text(const PosteriorConvergenceReport& r) {
  std::ostringstream out;
  out << "horizon " << r.horizon << ", " << r.rows.size() << " replications\n"
      << "median max_a |p_T(a) - 1{a = A*}|  " << fmt(r.median_gap, 4) << "\n"
      << "max                                " << fmt(r.max_gap, 4) << "\n";
  return out.str();
}

}  // namespace tsobs
