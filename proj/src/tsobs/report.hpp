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
#ifndef TSOBS_REPORT_HPP_
#define TSOBS_REPORT_HPP_

// Machine (JSON, CSV) and human (aligned text) renderings of the reports.
// Actions and parameters are printed 1-based.

#include <string>

#include "json.hpp"
#include "tsobs/diagnostics.hpp"
#include "tsobs/experiment.hpp"

namespace tsobs {

using Json = nlohmann::ordered_json;

Json to_json(const RunSummary& summary);
std::string to_text(const RunSummary& summary);
std::string summary_csv(const RunSummary& summary);
std::string aggregate_csv(const RunSummary& summary);
std::string curves_csv(const RunSummary& summary);
std::string regret_checkpoints_csv(const RunSummary& summary);

Json to_json(const EnumerationTree& tree);
std::string to_text(const EnumerationTree& tree);

Json to_json(const MartingaleResidualReport& report);
std::string to_text(const MartingaleResidualReport& report);

// The JSON and text forms summarize the report at the checkpoints; the CSV
// carries the full per-step series.
Json to_json(const RegretReport& report,
             const std::vector<std::uint64_t>& checkpoints);
std::string to_text(const RegretReport& report,
                    const std::vector<std::uint64_t>& checkpoints);
std::string regret_series_csv(const RegretReport& report);

Json to_json(const CounterexampleReport& report);
std::string to_text(const CounterexampleReport& report);

Json to_json(const LogCountStudy& study);
std::string to_text(const LogCountStudy& study);

Json to_json(const PosteriorConvergenceReport& report);
std::string to_text(const PosteriorConvergenceReport& report);

}  // namespace tsobs

#endif  // TSOBS_REPORT_HPP_
