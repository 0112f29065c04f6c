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

// Line-oriented text formats, each with a one-line versioned header and
// full-precision decimal serialization. '#' lines and blank lines are
// ignored on input.

#ifndef DETSIM_FORMATS_HPP
#define DETSIM_FORMATS_HPP

#include <Eigen/Dense>
#include <complex>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "detsim/assembly.hpp"
#include "detsim/grid_propagator.hpp"

namespace detsim {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// Alphabet + initial active system + per-step reservoir program.
struct ScenarioBundle {
    Alphabet alphabet;
    ActiveSystem initial;
    Scenario scenario;
};

// detsim-scenario v1
//   alphabet <name>[*] ...        '*' marks assembly elements
//   coding <name>:<x>,<y>,<z> ...
//   growing <name>:<x>,<y>,<z> ...
//   align <s>
//   bond <covalent|hydrogen>      descriptors l_1..l_k, one per line
//   step (<element> <state> <weight>)+
ScenarioBundle parse_scenario(std::istream& in);
ScenarioBundle load_scenario(const std::filesystem::path& path);
void write_scenario(std::ostream& out, const ScenarioBundle& bundle);

// detsim-table v1
//   reaction <bond> <coding> <growing> <incoming> <state>
//   outcome admitted <covalent|hydrogen> <x>,<y>,<z> <weight>
//   outcome rejected <weight>
ScatteringTable parse_table(std::istream& in, const Alphabet& alphabet);
ScatteringTable load_table(const std::filesystem::path& path, const Alphabet& alphabet);

// detsim-vector v1 n=<N>  followed by N lines "re im"
std::vector<std::complex<double>> parse_vector(std::istream& in);
void write_vector(std::ostream& out, const std::vector<std::complex<double>>& values);

struct WaveFunctionFile {
    unsigned qubits;
    std::size_t step;
    double time;
    std::vector<std::complex<double>> amplitudes;
};

// detsim-wavefunction v1 l=<l> step=<s> time=<t> dq=<dq>  + N lines "re im"
WaveFunctionFile parse_wavefunction(std::istream& in);
void write_wavefunction(std::ostream& out, const GridWaveFunction& psi, std::size_t step,
                        double time);

// detsim-potential v1 n=<N> mass=<m> frames=<F>  + F*N sample lines
PotentialField parse_potential(std::istream& in);
void write_potential(std::ostream& out, const PotentialField& field);

/// Named potential families for the CLI: "zero", "linear:g=<v>",
/// "harmonic:omega=<v>" (V = m*omega^2*q^2/2), sampled on the grid.
PotentialField potential_from_expression(const std::string& expression, const Grid& grid,
                                         double mass);

// detsim-matrix v1 n=<N>  + N rows of N "re im" pairs
Eigen::MatrixXcd parse_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Eigen::MatrixXcd& matrix);

}  // namespace detsim

#endif
