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

#include "detsim/report.hpp"

#include <sstream>

#include "detsim/digest.hpp"
#include "detsim/version.hpp"

namespace detsim {

namespace {

void render_common_head(std::ostream& out, const char* command,
                        const std::vector<InputRecord>& inputs, const SweepParams& params) {
    out << "detsim-report v1\n";
    out << "tool " << kToolName << ' ' << kToolVersion << '\n';
    out << "command " << command << '\n';
    for (const auto& input : inputs) {
        out << "input " << input.role << ' ' << input.path << " digest " << input.digest << '\n';
    }
    out << "param volume " << params.volume << '\n';
    out << "param sample " << params.sample_letters << '\n';
    out << "param threshold " << format_full(params.threshold) << '\n';
    out << "param match "
        << (params.match == ChainMatch::letters ? "letters" : "letters-and-coordinates") << '\n';
}

void render_histogram(std::ostream& out, const std::string& prefix, const ScenarioReport& report) {
    for (const auto& [letters, fraction] : report.histogram) {
        out << prefix << "histogram " << format_full(fraction) << " chain " << letters << '\n';
    }
    if (report.impossible_fraction > 0.0) {
        out << prefix << "histogram " << format_full(report.impossible_fraction) << " impossible\n";
    }
}

}  // namespace

std::string render_sweep_report(const std::vector<InputRecord>& inputs, const SweepParams& params,
                                const ScenarioReport& report, const Alphabet& alphabet) {
    std::ostringstream out;
    render_common_head(out, "sweep", inputs, params);
    out << "options " << report.per_option.size() << '\n';
    for (std::size_t i = 0; i < report.per_option.size(); ++i) {
        const AssemblyResult& result = report.per_option[i];
        out << "option " << (i + 1) << ' ';
        if (result.success()) {
            out << "chain " << chain_letters(alphabet, *result.chain) << '\n';
        } else {
            out << "impossible step " << result.failed_step << '\n';
        }
    }
    render_histogram(out, "", report);
    out << "lucky-fraction " << format_full(report.lucky_fraction) << '\n';
    out << "impossible-fraction " << format_full(report.impossible_fraction) << '\n';
    out << "successful " << (report.lucky_fraction > params.threshold ? "yes" : "no") << '\n';
    return out.str();
}

std::string render_compare_report(const std::vector<InputRecord>& inputs, const SweepParams& params,
                                  const std::vector<RankedScenario>& ranking) {
    std::ostringstream out;
    render_common_head(out, "compare", inputs, params);
    out << "scenarios " << ranking.size() << '\n';
    for (std::size_t rank = 0; rank < ranking.size(); ++rank) {
        const RankedScenario& entry = ranking[rank];
        out << "rank " << (rank + 1) << " scenario " << (entry.input_index + 1) << " lucky "
            << format_full(entry.report.lucky_fraction) << " impossible "
            << format_full(entry.report.impossible_fraction) << " successful "
            << (entry.successful ? "yes" : "no") << '\n';
    }
    for (std::size_t rank = 0; rank < ranking.size(); ++rank) {
        render_histogram(out, "rank-" + std::to_string(rank + 1) + " ", ranking[rank].report);
    }
    return out.str();
}

}  // namespace detsim
