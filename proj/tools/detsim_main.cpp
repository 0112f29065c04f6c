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

#include <CLI11.hpp>

#include "detsim/cli.hpp"
#include "detsim/version.hpp"

namespace cli = detsim::cli;

int main(int argc, char** argv) {
    CLI::App app{"detsim - deterministic quantum scenario simulator"};
    app.set_version_flag("--version", std::string(detsim::kToolVersion));
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 failure, 2 parse error, 3 unknown reaction, 4 cap violation,\n"
        "5 missing database entry, 6 divergence, 7 invalid input data, 8 I/O error.\n"
        "DETSIM_CACHE_DIR overrides the default propagator database directory.");

    cli::SweepConfig sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Score one scenario by an exhaustive option sweep");
    sweep_cmd->add_option("--scenario", sweep.scenario_path, "Scenario file")->required();
    sweep_cmd->add_option("--table", sweep.table_path, "Scattering table file")->required();
    sweep_cmd->add_option("--sample", sweep.sample, "Sample chain letters, space separated")
        ->required();
    sweep_cmd->add_option("--volume,-L", sweep.volume, "Option volume L");
    sweep_cmd->add_option("--threshold", sweep.threshold, "Lucky-fraction success threshold");
    sweep_cmd->add_flag("--match-coordinates", sweep.match_coordinates,
                        "Compare coordinates as well as letters");
    sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads across option values");
    sweep_cmd->add_option("--out", sweep.report_path, "Report path (default: stdout)");

    cli::CompareConfig compare;
    auto* compare_cmd = app.add_subcommand("compare", "Rank alternative scenarios");
    compare_cmd->add_option("--scenario", compare.scenario_paths, "Scenario files (repeatable)")
        ->required();
    compare_cmd->add_option("--table", compare.table_path, "Scattering table file")->required();
    compare_cmd->add_option("--sample", compare.sample, "Sample chain letters")->required();
    compare_cmd->add_option("--volume,-L", compare.volume, "Option volume L");
    compare_cmd->add_option("--threshold", compare.threshold, "Lucky-fraction success threshold");
    compare_cmd->add_flag("--match-coordinates", compare.match_coordinates,
                          "Compare coordinates as well as letters");
    compare_cmd->add_option("--jobs", compare.jobs, "Worker threads across option values");
    compare_cmd->add_option("--out", compare.report_path, "Report path (default: stdout)");

    cli::EvolveConfig evolve;
    auto* evolve_cmd = app.add_subcommand("evolve", "Split-operator propagation of a wave function");
    evolve_cmd->add_option("--state", evolve.state_path, "Initial wave-function file")->required();
    evolve_cmd->add_option("--potential", evolve.potential_path, "Potential file");
    evolve_cmd->add_option("--potential-expr", evolve.potential_expr,
                           "zero | linear:g=<v> | harmonic:omega=<v>");
    evolve_cmd->add_option("--dt", evolve.dt, "Time step");
    evolve_cmd->add_option("--steps", evolve.steps, "Step count");
    evolve_cmd->add_option("--mass", evolve.mass, "Mass (with --potential-expr)");
    evolve_cmd->add_option("--out", evolve.out_path, "Final state dump (default: stdout)");
    evolve_cmd->add_option("--trace", evolve.trace_path, "Per-step norm/<X>/<P> trace file");

    cli::DbConfig db_build;
    auto* db_build_cmd = app.add_subcommand("db-build", "Build and persist a propagator matrix");
    cli::DbConfig db_inspect;
    auto* db_inspect_cmd = app.add_subcommand("db-inspect", "Show key metadata and unitarity");
    cli::DbConfig db_apply;
    auto* db_apply_cmd = app.add_subcommand("db-apply", "Apply a cached propagator to a state");
    const auto add_db_options = [](CLI::App* cmd, cli::DbConfig& config) {
        cmd->add_option("--db", config.directory, "Database directory");
        cmd->add_option("--qubits,-l", config.qubits, "Grid qubits l (N = 2^l)")->required();
        cmd->add_option("--dt", config.dt, "Time step");
        cmd->add_option("--steps", config.steps, "Step count");
        cmd->add_option("--mass", config.mass, "Mass (with --potential-expr)");
        cmd->add_option("--potential", config.potential_path, "Potential file");
        cmd->add_option("--potential-expr", config.potential_expr,
                        "zero | linear:g=<v> | harmonic:omega=<v>");
    };
    add_db_options(db_build_cmd, db_build);
    add_db_options(db_inspect_cmd, db_inspect);
    add_db_options(db_apply_cmd, db_apply);
    db_apply_cmd->add_option("--state", db_apply.state_path, "Initial wave-function file")
        ->required();
    db_apply_cmd->add_option("--out", db_apply.out_path, "Result dump (default: stdout)");
    db_apply_cmd->add_flag("--no-build", db_apply.no_build, "Fail instead of building on a miss");

    cli::PhotonConfig photon;
    auto* photon_cmd = app.add_subcommand("photon-gen", "Generate a photon-pulse-biased scenario");
    photon_cmd->add_option("--template", photon.template_path, "Template scenario file")->required();
    photon_cmd->add_option("--pulses", photon.pulses, "Pulse letters, space or comma separated")
        ->required();
    photon_cmd->add_option("--bias", photon.bias, "Per-step probability ratio l");
    photon_cmd->add_option("--state", photon.state_label, "Reservoir state label");
    photon_cmd->add_option("--out", photon.out_path, "Output scenario file (default: stdout)");

    cli::LsSolveConfig ls;
    auto* ls_cmd = app.add_subcommand("ls-solve", "Iterative scattering-state solve");
    ls_cmd->add_option("--hamiltonian", ls.hamiltonian_path, "Hermitian matrix file")->required();
    ls_cmd->add_option("--coupling", ls.coupling_path, "Interaction matrix file")->required();
    ls_cmd->add_option("--incident", ls.incident_path, "Incident state vector file")->required();
    ls_cmd->add_option("--energy", ls.energy, "Energy E");
    ls_cmd->add_option("--eta", ls.eta, "Regularization eta > 0");
    ls_cmd->add_option("--tol", ls.tol, "Convergence tolerance");
    ls_cmd->add_option("--max-iter", ls.max_iter, "Iteration cap");
    ls_cmd->add_option("--out", ls.out_path, "Scattering state output (default: stdout)");

    cli::GoldenRuleConfig golden;
    auto* golden_cmd = app.add_subcommand("golden-rule", "Golden-rule channel weights");
    golden_cmd->add_option("--channel", golden.channels, "re,im,rho (repeatable)")->required();
    golden_cmd->add_option("--hbar", golden.hbar, "Planck constant (default 1)");

    CLI11_PARSE(app, argc, argv);

    if (sweep_cmd->parsed()) {
        return cli::cmd_sweep(sweep);
    }
    if (compare_cmd->parsed()) {
        return cli::cmd_compare(compare);
    }
    if (evolve_cmd->parsed()) {
        return cli::cmd_evolve(evolve);
    }
    if (db_build_cmd->parsed()) {
        return cli::cmd_db_build(db_build);
    }
    if (db_inspect_cmd->parsed()) {
        return cli::cmd_db_inspect(db_inspect);
    }
    if (db_apply_cmd->parsed()) {
        return cli::cmd_db_apply(db_apply);
    }
    if (photon_cmd->parsed()) {
        return cli::cmd_photon_gen(photon);
    }
    if (ls_cmd->parsed()) {
        return cli::cmd_ls_solve(ls);
    }
    if (golden_cmd->parsed()) {
        return cli::cmd_golden_rule(golden);
    }
    return cli::kExitFailure;
}
