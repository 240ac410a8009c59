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
#include "tsobs/trace_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "tsobs/error.hpp"
#include "tsobs/format.hpp"

namespace tsobs {

void write_trace_csv(std::ostream& out, const ActionTrace& trace,
                     const std::vector<std::vector<double>>& snapshots) {
  const bool with_p = !snapshots.empty();
  require(!with_p || snapshots.size() == trace.size(),
          "snapshot count does not match the trace length");
  out << "t,action,reward";
  if (with_p) {
    for (std::size_t a = 1; a <= trace.num_actions(); ++a) out << ",p_" << a;
  }
  out << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& r = trace[i];
    out << r.t << ',' << r.action + 1 << ',' << format_double(r.reward);
    if (with_p) {
      for (double p : snapshots[i]) out << ',' << format_double(p);
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  fail(ErrorKind::kIo,
       "malformed trace at line " + std::to_string(line) + ": " + what);
}

}  // namespace

TraceFile read_trace_csv(std::istream& in, std::size_t num_actions) {
  std::string line;
  if (!std::getline(in, line)) malformed(1, "missing header");
  const auto header = split_csv(line);
  if (header.size() < 3 || header[0] != "t" || header[1] != "action" ||
      header[2] != "reward") {
    malformed(1, "header must start with t,action,reward");
  }
  const bool with_p = header.size() > 3;
  if (with_p) {
    if (header.size() != 3 + num_actions) {
      malformed(1, "expected p_1..p_" + std::to_string(num_actions));
    }
    for (std::size_t a = 0; a < num_actions; ++a) {
      if (header[3 + a] != "p_" + std::to_string(a + 1)) {
        malformed(1, "unexpected column '" + header[3 + a] + "'");
      }
    }
  }

  TraceFile file{ActionTrace(num_actions), {}};
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) malformed(line_no, "wrong column count");
    const auto t = parse_u64(cells[0]);
    if (!t || *t != file.trace.size() + 1) {
      malformed(line_no, "times must run 1, 2, 3, ...");
    }
    const auto action = parse_u64(cells[1]);
    if (!action || *action < 1 || *action > num_actions) {
      malformed(line_no, "action out of range");
    }
    const auto reward = parse_double(cells[2]);
    if (!reward) malformed(line_no, "reward is not a number");
    file.trace.append(*action - 1, *reward);
    if (with_p) {
      std::vector<double> p;
      for (std::size_t a = 0; a < num_actions; ++a) {
        const auto v = parse_double(cells[3 + a]);
        if (!v) malformed(line_no, "p value is not a number");
        p.push_back(*v);
      }
      file.snapshots.push_back(std::move(p));
    }
  }
  return file;
}

}  // namespace tsobs
