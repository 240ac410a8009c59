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
#ifndef TSOBS_TRACE_IO_HPP_
#define TSOBS_TRACE_IO_HPP_

// Trace files: CSV with header t,action,reward and, when p-vectors were
// snapshotted, p_1..p_K. Actions are written 1-based. Reals use the
// shortest round-trip representation, so reading a file back yields the
// identical trace.

#include <iosfwd>
#include <vector>

#include "tsobs/model.hpp"

namespace tsobs {

struct TraceFile {
  ActionTrace trace;
  std::vector<std::vector<double>> snapshots;  // empty without p columns
};

// snapshots, when non-empty, must hold one K-vector per record.
void write_trace_csv(std::ostream& out, const ActionTrace& trace,
                     const std::vector<std::vector<double>>& snapshots = {});

// Throws kIo on malformed input (with the offending line number).
TraceFile read_trace_csv(std::istream& in, std::size_t num_actions);

}  // namespace tsobs

#endif  // TSOBS_TRACE_IO_HPP_
