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

#include "detsim/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "detsim/digest.hpp"
#include "detsim/formats.hpp"
#include "detsim/propagator_db.hpp"
#include "detsim/report.hpp"
#include "detsim/scattering.hpp"

namespace detsim::cli {

namespace {

class Stopwatch {
  public:
    ~Stopwatch() {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        std::cerr << "timing-ms "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
                  << '\n';
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <typename Command>
int run_guarded(Command&& command) {
    try {
        Stopwatch timer;
        return command();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const UnknownReactionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnknownReaction;
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCap;
    } catch (const MissingEntryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMissingEntry;
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const NormalizationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const GridRangeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

void check_volume(long volume) {
    if (volume < 1 || volume > kMaxVolume) {
        throw CapError("volume must be in 1.." + std::to_string(kMaxVolume));
    }
}

void check_steps(long steps) {
    if (steps < 0 || steps > kMaxSteps) {
        throw CapError("steps must be in 0.." + std::to_string(kMaxSteps));
    }
}

unsigned clamp_jobs(unsigned jobs) {
    if (jobs < 1 || jobs > kMaxJobs) {
        throw CapError("jobs must be in 1.." + std::to_string(kMaxJobs));
    }
    return jobs;
}

// Sample tokens are letter names, optionally "<letter>:<x>,<y>,<z>",
// separated by spaces or ';'.
Chain parse_sample(const Alphabet& alphabet, const std::string& sample) {
    std::string normalized = sample;
    for (char& c : normalized) {
        if (c == ';') {
            c = ' ';
        }
    }
    std::istringstream stream(normalized);
    Chain chain;
    std::string token;
    while (stream >> token) {
        std::string name = token;
        Vec3 offset{};
        if (const auto colon = token.find(':'); colon != std::string::npos) {
            name = token.substr(0, colon);
            std::istringstream coords(token.substr(colon + 1));
            char comma = 0;
            if (!(coords >> offset.x >> comma >> offset.y >> comma >> offset.z)) {
                throw ParseError("bad sample coordinates in '" + token + "'");
            }
        }
        if (!alphabet.has(name)) {
            throw ParseError("sample letter '" + name + "' is not in the alphabet");
        }
        chain.push_back(ChainUnit{alphabet.id_of(name), offset});
    }
    if (chain.empty()) {
        throw ParseError("sample chain is empty");
    }
    return chain;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
    } else {
        write_file(path, content);
    }
}

std::filesystem::path database_directory(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("DETSIM_CACHE_DIR"); env && *env) {
        return env;
    }
    return "detsim-db";
}

PotentialField load_field(const std::string& path, const std::string& expr, const Grid& grid,
                          double mass) {
    if (!path.empty() && !expr.empty()) {
        throw ParseError("give either a potential file or an expression, not both");
    }
    if (!path.empty()) {
        std::istringstream in(read_file(path));
        return parse_potential(in);
    }
    if (!expr.empty()) {
        return potential_from_expression(expr, grid, mass);
    }
    throw ParseError("a potential file or expression is required");
}

GridWaveFunction load_state(const std::string& path) {
    std::istringstream in(read_file(path));
    const WaveFunctionFile file = parse_wavefunction(in);
    return GridWaveFunction(Grid(file.qubits), file.amplitudes);
}

struct SweepInputs {
    ScenarioBundle bundle;
    ScatteringTable table;
    std::vector<InputRecord> records;
};

SweepInputs load_sweep_inputs(const std::string& scenario_path, const std::string& table_path) {
    const std::string scenario_text = read_file(scenario_path);
    const std::string table_text = read_file(table_path);
    std::istringstream scenario_in(scenario_text);
    ScenarioBundle bundle = parse_scenario(scenario_in);
    std::istringstream table_in(table_text);
    ScatteringTable table = parse_table(table_in, bundle.alphabet);
    std::vector<InputRecord> records{
        InputRecord{"scenario", scenario_path, fnv1a64_hex(scenario_text)},
        InputRecord{"table", table_path, fnv1a64_hex(table_text)},
    };
    return SweepInputs{std::move(bundle), std::move(table), std::move(records)};
}

std::string initial_system_token(const ScenarioBundle& bundle) {
    std::ostringstream out;
    for (std::size_t id = 0; id < bundle.alphabet.size(); ++id) {
        const Letter& letter = bundle.alphabet.letter(id);
        out << letter.name << (letter.assembly_element ? "*" : "") << ';';
    }
    const auto chain = [&](const Chain& units) {
        for (const auto& unit : units) {
            out << unit.element << ':' << format_full(unit.offset.x) << ','
                << format_full(unit.offset.y) << ',' << format_full(unit.offset.z) << ';';
        }
        out << '|';
    };
    chain(bundle.initial.coding());
    chain(bundle.initial.growing());
    out << bundle.initial.alignment() << '|';
    for (const auto& bond : bundle.initial.bonds()) {
        out << bond_name(bond.kind) << ';';
    }
    return out.str();
}

bool same_initial_system(const ScenarioBundle& a, const ScenarioBundle& b) {
    return initial_system_token(a) == initial_system_token(b);
}

}  // namespace

int cmd_sweep(const SweepConfig& config) {
    return run_guarded([&] {
        check_volume(config.volume);
        const unsigned jobs = clamp_jobs(config.jobs);
        SweepInputs inputs = load_sweep_inputs(config.scenario_path, config.table_path);
        const Chain sample = parse_sample(inputs.bundle.alphabet, config.sample);
        const ChainMatch match =
            config.match_coordinates ? ChainMatch::letters_and_coordinates : ChainMatch::letters;

        const ScenarioReport report =
            evaluate_scenario(inputs.bundle.scenario, sample, inputs.bundle.initial, inputs.table,
                              inputs.bundle.alphabet, config.volume, match, jobs);

        const SweepParams params{config.volume, chain_letters(inputs.bundle.alphabet, sample),
                                 config.threshold, match};
        emit(config.report_path, render_sweep_report(inputs.records, params, report,
                                                     inputs.bundle.alphabet));
        if (!config.report_path.empty()) {
            std::cout << "lucky-fraction " << format_full(report.lucky_fraction) << '\n'
                      << "successful "
                      << (report.lucky_fraction > config.threshold ? "yes" : "no") << '\n';
        }
        return kExitOk;
    });
}

int cmd_compare(const CompareConfig& config) {
    return run_guarded([&] {
        check_volume(config.volume);
        const unsigned jobs = clamp_jobs(config.jobs);
        if (config.scenario_paths.empty()) {
            throw ParseError("compare needs at least one scenario file");
        }

        const std::string table_text = read_file(config.table_path);
        std::vector<InputRecord> records;
        std::vector<ScenarioBundle> bundles;
        for (const auto& path : config.scenario_paths) {
            const std::string text = read_file(path);
            std::istringstream in(text);
            bundles.push_back(parse_scenario(in));
            records.push_back(InputRecord{"scenario", path, fnv1a64_hex(text)});
        }
        records.push_back(InputRecord{"table", config.table_path, fnv1a64_hex(table_text)});
        for (std::size_t i = 1; i < bundles.size(); ++i) {
            if (!same_initial_system(bundles.front(), bundles[i])) {
                throw ParseError("scenario files must share the alphabet and initial system");
            }
        }

        std::istringstream table_in(table_text);
        const ScatteringTable table = parse_table(table_in, bundles.front().alphabet);
        const Chain sample = parse_sample(bundles.front().alphabet, config.sample);
        const ChainMatch match =
            config.match_coordinates ? ChainMatch::letters_and_coordinates : ChainMatch::letters;

        std::vector<Scenario> scenarios;
        scenarios.reserve(bundles.size());
        for (const auto& bundle : bundles) {
            scenarios.push_back(bundle.scenario);
        }
        const auto ranking =
            compare_scenarios(scenarios, sample, bundles.front().initial, table,
                              bundles.front().alphabet, config.volume, config.threshold, match, jobs);

        const SweepParams params{config.volume, chain_letters(bundles.front().alphabet, sample),
                                 config.threshold, match};
        emit(config.report_path, render_compare_report(records, params, ranking));
        if (!config.report_path.empty()) {
            std::cout << "best scenario " << (ranking.front().input_index + 1) << " lucky-fraction "
                      << format_full(ranking.front().report.lucky_fraction) << '\n';
        }
        return kExitOk;
    });
}

int cmd_evolve(const EvolveConfig& config) {
    return run_guarded([&] {
        check_steps(config.steps);
        GridWaveFunction psi = load_state(config.state_path);
        if (psi.grid().qubits() > kMaxEvolveQubits) {
            throw CapError("evolve grids are capped at " + std::to_string(kMaxEvolveQubits) +
                           " qubits");
        }
        const PotentialField field =
            load_field(config.potential_path, config.potential_expr, psi.grid(), config.mass);
        if (field.points() != psi.grid().points()) {
            throw DimensionError("potential sample count does not match the grid");
        }

        std::ostringstream trace;
        trace << "detsim-trace v1\n";
        const auto record = [&](std::size_t step_index, const GridWaveFunction& state) {
            trace << "step " << step_index << " norm " << format_full(state.norm()) << " position "
                  << format_full(expectation(state, Observable::position)) << " momentum "
                  << format_full(expectation(state, Observable::momentum)) << '\n';
        };

        record(0, psi);
        for (long i = 0; i < config.steps; ++i) {
            psi = step(psi, field, config.dt, static_cast<std::size_t>(i));
            record(static_cast<std::size_t>(i) + 1, psi);
        }

        std::ostringstream dump;
        write_wavefunction(dump, psi, static_cast<std::size_t>(config.steps),
                           config.dt * static_cast<double>(config.steps));
        emit(config.out_path, dump.str());
        if (!config.trace_path.empty()) {
            write_file(config.trace_path, trace.str());
        }
        std::cout << "final norm " << format_full(psi.norm()) << " position "
                  << format_full(expectation(psi, Observable::position)) << " momentum "
                  << format_full(expectation(psi, Observable::momentum)) << '\n';
        return kExitOk;
    });
}

namespace {

struct DbContext {
    Grid grid;
    PotentialField field;
    PropagatorKey key;
};

DbContext make_db_context(const DbConfig& config) {
    check_steps(config.steps);
    const Grid grid(config.qubits);
    PotentialField field =
        load_field(config.potential_path, config.potential_expr, grid, config.mass);
    PropagatorKey key(grid, field, config.dt, static_cast<std::size_t>(config.steps));
    return DbContext{grid, std::move(field), std::move(key)};
}

}  // namespace

int cmd_db_build(const DbConfig& config) {
    return run_guarded([&] {
        const DbContext context = make_db_context(config);
        PropagatorDatabase db(database_directory(config.directory));
        const auto matrix = db.lookup_or_build(context.key, context.field, context.grid);
        std::cout << "entry " << context.key.digest() << " qubits " << config.qubits << " steps "
                  << config.steps << " dt " << format_full(config.dt) << " dimension "
                  << matrix->dimension() << '\n';
        return kExitOk;
    });
}

int cmd_db_inspect(const DbConfig& config) {
    return run_guarded([&] {
        const DbContext context = make_db_context(config);
        PropagatorDatabase db(database_directory(config.directory));
        const auto matrix = db.lookup(context.key);
        if (!matrix) {
            throw MissingEntryError("no database entry for key " + context.key.digest());
        }
        std::cout << "entry " << context.key.digest() << " qubits " << config.qubits << " steps "
                  << config.steps << " dt " << format_full(config.dt) << " mass "
                  << format_full(config.mass) << " dimension " << matrix->dimension()
                  << " unitarity-residual " << format_full(matrix->unitarity_residual()) << '\n';
        return kExitOk;
    });
}

int cmd_db_apply(const DbConfig& config) {
    return run_guarded([&] {
        const DbContext context = make_db_context(config);
        GridWaveFunction psi = load_state(config.state_path);
        if (psi.grid().qubits() != config.qubits) {
            throw DimensionError("state qubits do not match the database key");
        }
        PropagatorDatabase db(database_directory(config.directory));
        std::shared_ptr<const PropagatorMatrix> matrix;
        if (config.no_build) {
            matrix = db.lookup(context.key);
            if (!matrix) {
                throw MissingEntryError("no database entry for key " + context.key.digest() +
                                        " and --no-build was given");
            }
        } else {
            matrix = db.lookup_or_build(context.key, context.field, context.grid);
        }
        const GridWaveFunction result = apply(*matrix, psi);
        std::ostringstream dump;
        write_wavefunction(dump, result, static_cast<std::size_t>(config.steps),
                           config.dt * static_cast<double>(config.steps));
        emit(config.out_path, dump.str());
        if (!config.out_path.empty()) {
            std::cout << "applied " << context.key.digest() << " norm "
                      << format_full(result.norm()) << '\n';
        }
        return kExitOk;
    });
}

int cmd_photon_gen(const PhotonConfig& config) {
    return run_guarded([&] {
        ScenarioBundle bundle = load_scenario(config.template_path);

        std::vector<std::size_t> assembly_elements;
        for (std::size_t id = 0; id < bundle.alphabet.size(); ++id) {
            if (bundle.alphabet.letter(id).assembly_element) {
                assembly_elements.push_back(id);
            }
        }
        if (assembly_elements.size() != 2) {
            throw ParseError("photon scenarios need a template with exactly two assembly elements");
        }

        std::string normalized = config.pulses;
        for (char& c : normalized) {
            if (c == ',') {
                c = ' ';
            }
        }
        std::istringstream stream(normalized);
        std::vector<std::size_t> pulses;
        std::string token;
        while (stream >> token) {
            if (!bundle.alphabet.has(token)) {
                throw ParseError("pulse letter '" + token + "' is not in the alphabet");
            }
            pulses.push_back(bundle.alphabet.id_of(token));
        }

        bundle.scenario = photon_scenario(pulses, {assembly_elements[0], assembly_elements[1]},
                                          config.bias, config.state_label);
        std::ostringstream out;
        write_scenario(out, bundle);
        emit(config.out_path, out.str());
        return kExitOk;
    });
}

int cmd_ls_solve(const LsSolveConfig& config) {
    return run_guarded([&] {
        if (config.max_iter < 1 || config.max_iter > kMaxSteps) {
            throw CapError("max-iter must be in 1.." + std::to_string(kMaxSteps));
        }
        std::istringstream h_in(read_file(config.hamiltonian_path));
        std::istringstream v_in(read_file(config.coupling_path));
        std::istringstream f_in(read_file(config.incident_path));
        const Eigen::MatrixXcd hamiltonian = parse_matrix(h_in);
        const Eigen::MatrixXcd coupling = parse_matrix(v_in);
        const auto incident_values = parse_vector(f_in);
        Eigen::VectorXcd incident(static_cast<Eigen::Index>(incident_values.size()));
        for (std::size_t i = 0; i < incident_values.size(); ++i) {
            incident(static_cast<Eigen::Index>(i)) = incident_values[i];
        }

        const ScatteringSolve solve =
            lippmann_schwinger_solve(hamiltonian, coupling, incident, config.energy, config.eta,
                                     config.tol, static_cast<std::size_t>(config.max_iter));

        std::ostringstream out;
        std::vector<std::complex<double>> state(solve.state.data(),
                                                solve.state.data() + solve.state.size());
        write_vector(out, state);
        emit(config.out_path, out.str());
        std::cout << "iterations " << solve.iterations << '\n';
        return kExitOk;
    });
}

int cmd_golden_rule(const GoldenRuleConfig& config) {
    return run_guarded([&] {
        if (config.channels.empty()) {
            throw ParseError("at least one --channel re,im,rho is required");
        }
        std::vector<double> weights;
        for (const auto& channel : config.channels) {
            std::istringstream stream(channel);
            double re = 0.0, im = 0.0, rho = 0.0;
            char comma = 0;
            if (!(stream >> re >> comma >> im >> comma >> rho) || !stream.eof()) {
                throw ParseError("bad channel '" + channel + "', expected re,im,rho");
            }
            weights.push_back(golden_rule_prob({re, im}, rho, config.hbar));
        }
        double total = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            std::cout << "channel " << (i + 1) << " probability " << format_full(weights[i]) << '\n';
            total += weights[i];
        }
        if (weights.size() > 1 && total > 0.0) {
            for (std::size_t i = 0; i < weights.size(); ++i) {
                std::cout << "weight " << (i + 1) << ' ' << format_full(weights[i] / total) << '\n';
            }
        }
        return kExitOk;
    });
}

}  // namespace detsim::cli
