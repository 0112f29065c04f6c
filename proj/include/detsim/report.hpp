// Copyright 2026 The detsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic report bodies: identical inputs render identical bytes.
// Timing never enters a report body; the CLI prints it to stderr.

#ifndef DETSIM_REPORT_HPP
#define DETSIM_REPORT_HPP

#include <string>
#include <vector>

#include "detsim/assembly.hpp"

namespace detsim {

struct InputRecord {
    std::string role;    // "scenario", "table", ...
    std::string path;    // as given on the command line
    std::string digest;  // content digest of the file
};

struct SweepParams {
    long volume;
    std::string sample_letters;
    double threshold;
    ChainMatch match;
};

std::string render_sweep_report(const std::vector<InputRecord>& inputs, const SweepParams& params,
                                const ScenarioReport& report, const Alphabet& alphabet);

std::string render_compare_report(const std::vector<InputRecord>& inputs, const SweepParams& params,
                                  const std::vector<RankedScenario>& ranking);

}  // namespace detsim

#endif
