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

// Batch front door. Every command is a pure function of its input files
// and flags; wall-clock timing goes to stderr so written artifacts stay
// byte-reproducible.

#ifndef DETSIM_CLI_HPP
#define DETSIM_CLI_HPP

#include <string>
#include <vector>

namespace detsim::cli {

// Stable exit codes, also listed in the tool help.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitUnknownReaction = 3;
inline constexpr int kExitCap = 4;
inline constexpr int kExitMissingEntry = 5;
inline constexpr int kExitDivergence = 6;
inline constexpr int kExitInvalidInput = 7;
inline constexpr int kExitIo = 8;

// Documented caps for command parameters.
inline constexpr long kMaxVolume = 1000000;
inline constexpr long kMaxSteps = 1000000;
inline constexpr unsigned kMaxEvolveQubits = 20;
inline constexpr unsigned kMaxJobs = 64;

struct SweepConfig {
    std::string scenario_path;
    std::string table_path;
    std::string sample;
    long volume = 100;
    double threshold = 0.5;
    bool match_coordinates = false;
    unsigned jobs = 1;
    std::string report_path;  // empty = stdout
};

struct CompareConfig {
    std::vector<std::string> scenario_paths;
    std::string table_path;
    std::string sample;
    long volume = 100;
    double threshold = 0.5;
    bool match_coordinates = false;
    unsigned jobs = 1;
    std::string report_path;
};

struct EvolveConfig {
    std::string state_path;
    std::string potential_path;
    std::string potential_expr;
    double dt = 0.01;
    long steps = 1;
    double mass = 1.0;
    std::string out_path;
    std::string trace_path;
};

struct DbConfig {
    std::string directory;  // empty = $DETSIM_CACHE_DIR or ./detsim-db
    unsigned qubits = 6;
    double dt = 0.01;
    long steps = 1;
    double mass = 1.0;
    std::string potential_path;
    std::string potential_expr;
    std::string state_path;
    std::string out_path;
    bool no_build = false;
};

struct PhotonConfig {
    std::string template_path;
    std::string pulses;
    double bias = 2.0;
    std::string state_label = "ground";
    std::string out_path;  // empty = stdout
};

struct LsSolveConfig {
    std::string hamiltonian_path;
    std::string coupling_path;
    std::string incident_path;
    double energy = 0.0;
    double eta = 0.01;
    double tol = 1e-10;
    long max_iter = 10000;
    std::string out_path;  // empty = stdout
};

struct GoldenRuleConfig {
    std::vector<std::string> channels;  // "re,im,rho"
    double hbar = 1.0;
};

int cmd_sweep(const SweepConfig& config);
int cmd_compare(const CompareConfig& config);
int cmd_evolve(const EvolveConfig& config);
int cmd_db_build(const DbConfig& config);
int cmd_db_inspect(const DbConfig& config);
int cmd_db_apply(const DbConfig& config);
int cmd_photon_gen(const PhotonConfig& config);
int cmd_ls_solve(const LsSolveConfig& config);
int cmd_golden_rule(const GoldenRuleConfig& config);

}  // namespace detsim::cli

#endif
