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

#include "detsim/formats.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "detsim/digest.hpp"

namespace detsim {

namespace {

// Sequential reader that skips blank and '#' lines and tracks line numbers
// for error messages.
class LineReader {
  public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++number_;
            const auto start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#') {
                continue;
            }
            if (line.back() == '\r') {
                line.pop_back();
            }
            return line;
        }
        return std::nullopt;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("line " + std::to_string(number_) + ": " + message);
    }

  private:
    std::istream& in_;
    std::size_t number_ = 0;
};

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream stream(line);
    std::vector<std::string> tokens;
    std::string token;
    while (stream >> token) {
        tokens.push_back(token);
    }
    return tokens;
}

double parse_double(const LineReader& reader, const std::string& token) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) {
            reader.fail("trailing characters in number '" + token + "'");
        }
        return value;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        reader.fail("expected a number, got '" + token + "'");
    }
}

long parse_long(const LineReader& reader, const std::string& token) {
    try {
        std::size_t used = 0;
        const long value = std::stol(token, &used);
        if (used != token.size()) {
            reader.fail("trailing characters in integer '" + token + "'");
        }
        return value;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        reader.fail("expected an integer, got '" + token + "'");
    }
}

// "key=value" headers: returns value for the key or fails.
std::string header_value(const LineReader& reader, const std::vector<std::string>& tokens,
                         const std::string& key) {
    const std::string prefix = key + "=";
    for (const auto& token : tokens) {
        if (token.starts_with(prefix)) {
            return token.substr(prefix.size());
        }
    }
    reader.fail("missing header field '" + key + "'");
}

void expect_header(LineReader& reader, const std::string& tag,
                   std::vector<std::string>* tokens_out = nullptr) {
    const auto line = reader.next();
    if (!line) {
        reader.fail("empty input, expected '" + tag + " v1' header");
    }
    const auto tokens = tokenize(*line);
    if (tokens.size() < 2 || tokens[0] != tag || tokens[1] != "v1") {
        reader.fail("expected '" + tag + " v1' header");
    }
    if (tokens_out) {
        *tokens_out = tokens;
    }
}

std::complex<double> parse_complex_line(LineReader& reader) {
    const auto line = reader.next();
    if (!line) {
        reader.fail("unexpected end of file in amplitude list");
    }
    const auto tokens = tokenize(*line);
    if (tokens.size() != 2) {
        reader.fail("expected 're im' pair");
    }
    return {parse_double(reader, tokens[0]), parse_double(reader, tokens[1])};
}

Vec3 parse_vec3(const LineReader& reader, const std::string& token) {
    std::array<double, 3> parts{};
    std::size_t begin = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? token.find(',', begin) : token.size();
        if (end == std::string::npos) {
            reader.fail("expected 'x,y,z' coordinates, got '" + token + "'");
        }
        parts[i] = parse_double(reader, token.substr(begin, end - begin));
        begin = end + 1;
    }
    return Vec3{parts[0], parts[1], parts[2]};
}

std::string format_vec3(const Vec3& v) {
    return format_full(v.x) + "," + format_full(v.y) + "," + format_full(v.z);
}

BondKind parse_bond(const LineReader& reader, const std::string& token) {
    if (token == "covalent") {
        return BondKind::covalent;
    }
    if (token == "hydrogen") {
        return BondKind::hydrogen;
    }
    reader.fail("unknown bond kind '" + token + "'");
}

ChainUnit parse_chain_unit(const LineReader& reader, const Alphabet& alphabet,
                           const std::string& token) {
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos) {
        reader.fail("expected '<letter>:<x>,<y>,<z>', got '" + token + "'");
    }
    const std::string name = token.substr(0, colon);
    if (!alphabet.has(name)) {
        reader.fail("letter '" + name + "' is not in the alphabet");
    }
    return ChainUnit{alphabet.id_of(name), parse_vec3(reader, token.substr(colon + 1))};
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) {
        throw IoError("read failure on " + path.string());
    }
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

ScenarioBundle parse_scenario(std::istream& in) {
    LineReader reader(in);
    expect_header(reader, "detsim-scenario");

    Alphabet alphabet;
    std::optional<Chain> coding;
    std::optional<Chain> growing;
    std::optional<std::size_t> alignment;
    std::vector<BondDescriptor> bonds;
    std::vector<ReservoirSpec> steps;

    while (auto line = reader.next()) {
        const auto tokens = tokenize(*line);
        const std::string& keyword = tokens.front();
        if (keyword == "alphabet") {
            if (tokens.size() < 2) {
                reader.fail("alphabet needs at least one letter");
            }
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                std::string name = tokens[i];
                const bool assembly = name.ends_with('*');
                if (assembly) {
                    name.pop_back();
                }
                if (name.empty()) {
                    reader.fail("empty letter name");
                }
                alphabet.add(name, assembly);
            }
        } else if (keyword == "coding" || keyword == "growing") {
            Chain chain;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                chain.push_back(parse_chain_unit(reader, alphabet, tokens[i]));
            }
            if (chain.empty()) {
                reader.fail(keyword + " chain must be nonempty");
            }
            (keyword == "coding" ? coding : growing) = std::move(chain);
        } else if (keyword == "align") {
            if (tokens.size() != 2) {
                reader.fail("align needs exactly one index");
            }
            const long value = parse_long(reader, tokens[1]);
            if (value < 1) {
                reader.fail("alignment index must be >= 1");
            }
            alignment = static_cast<std::size_t>(value);
        } else if (keyword == "bond") {
            if (tokens.size() != 2) {
                reader.fail("bond needs exactly one kind");
            }
            bonds.push_back(BondDescriptor{parse_bond(reader, tokens[1])});
        } else if (keyword == "step") {
            if (tokens.size() < 4 || (tokens.size() - 1) % 3 != 0) {
                reader.fail("step needs (element state weight) triples");
            }
            std::vector<ReservoirEntry> entries;
            for (std::size_t i = 1; i < tokens.size(); i += 3) {
                if (!alphabet.has(tokens[i])) {
                    reader.fail("letter '" + tokens[i] + "' is not in the alphabet");
                }
                const std::size_t element = alphabet.id_of(tokens[i]);
                if (!alphabet.letter(element).assembly_element) {
                    reader.fail("letter '" + tokens[i] + "' is not an assembly element");
                }
                entries.push_back(
                    ReservoirEntry{element, tokens[i + 1], parse_double(reader, tokens[i + 2])});
            }
            try {
                steps.emplace_back(std::move(entries));
            } catch (const Error& e) {
                reader.fail(e.what());
            }
        } else {
            reader.fail("unknown keyword '" + keyword + "'");
        }
    }

    if (!coding || !growing || !alignment || bonds.empty() || steps.empty()) {
        throw ParseError("scenario file must define alphabet, coding, growing, align, "
                         "at least one bond and at least one step");
    }
    try {
        return ScenarioBundle{std::move(alphabet),
                              ActiveSystem(std::move(*coding), std::move(*growing), *alignment,
                                           std::move(bonds)),
                              Scenario(std::move(steps))};
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

ScenarioBundle load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return parse_scenario(in);
}

void write_scenario(std::ostream& out, const ScenarioBundle& bundle) {
    out << "detsim-scenario v1\n";
    out << "alphabet";
    for (std::size_t id = 0; id < bundle.alphabet.size(); ++id) {
        const Letter& letter = bundle.alphabet.letter(id);
        out << ' ' << letter.name << (letter.assembly_element ? "*" : "");
    }
    out << '\n';
    const auto write_chain = [&](const char* keyword, const Chain& chain) {
        out << keyword;
        for (const auto& unit : chain) {
            out << ' ' << bundle.alphabet.letter(unit.element).name << ':'
                << format_vec3(unit.offset);
        }
        out << '\n';
    };
    write_chain("coding", bundle.initial.coding());
    write_chain("growing", bundle.initial.growing());
    out << "align " << bundle.initial.alignment() << '\n';
    for (const auto& bond : bundle.initial.bonds()) {
        out << "bond " << bond_name(bond.kind) << '\n';
    }
    for (const auto& step : bundle.scenario.steps()) {
        out << "step";
        for (const auto& entry : step.entries()) {
            out << ' ' << bundle.alphabet.letter(entry.element).name << ' ' << entry.state << ' '
                << format_full(entry.weight);
        }
        out << '\n';
    }
}

ScatteringTable parse_table(std::istream& in, const Alphabet& alphabet) {
    LineReader reader(in);
    expect_header(reader, "detsim-table");

    ScatteringTable table;
    std::optional<ReactionKey> key;
    std::vector<WeightedOutcome> outcomes;

    const auto flush = [&] {
        if (!key) {
            return;
        }
        if (outcomes.empty()) {
            reader.fail("reaction has no outcomes");
        }
        try {
            table.add(*key, OutcomeDistribution(std::move(outcomes)));
        } catch (const Error& e) {
            reader.fail(e.what());
        }
        outcomes.clear();
        key.reset();
    };

    while (auto line = reader.next()) {
        const auto tokens = tokenize(*line);
        if (tokens.front() == "reaction") {
            flush();
            if (tokens.size() != 6) {
                reader.fail("reaction needs: bond coding growing incoming state");
            }
            for (std::size_t i : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
                if (!alphabet.has(tokens[i])) {
                    reader.fail("letter '" + tokens[i] + "' is not in the alphabet");
                }
            }
            key = ReactionKey{ReactionContext{parse_bond(reader, tokens[1]),
                                              alphabet.id_of(tokens[2]), alphabet.id_of(tokens[3])},
                              alphabet.id_of(tokens[4]), tokens[5]};
        } else if (tokens.front() == "outcome") {
            if (!key) {
                reader.fail("outcome before any reaction");
            }
            if (tokens.size() >= 2 && tokens[1] == "admitted") {
                if (tokens.size() != 5) {
                    reader.fail("admitted outcome needs: bond coordinates weight");
                }
                outcomes.push_back(WeightedOutcome{
                    Outcome{Attachment{key->incoming_element, parse_bond(reader, tokens[2]),
                                       parse_vec3(reader, tokens[3])}},
                    parse_double(reader, tokens[4])});
            } else if (tokens.size() >= 2 && tokens[1] == "rejected") {
                if (tokens.size() != 3) {
                    reader.fail("rejected outcome needs a weight");
                }
                outcomes.push_back(WeightedOutcome{Outcome{std::nullopt},
                                                   parse_double(reader, tokens[2])});
            } else {
                reader.fail("outcome must be 'admitted' or 'rejected'");
            }
        } else {
            reader.fail("unknown keyword '" + tokens.front() + "'");
        }
    }
    flush();
    if (table.reactions().empty()) {
        throw ParseError("table file defines no reactions");
    }
    return table;
}

ScatteringTable load_table(const std::filesystem::path& path, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return parse_table(in, alphabet);
}

std::vector<std::complex<double>> parse_vector(std::istream& in) {
    LineReader reader(in);
    std::vector<std::string> header;
    expect_header(reader, "detsim-vector", &header);
    const long n = parse_long(reader, header_value(reader, header, "n"));
    if (n < 1) {
        reader.fail("vector length must be >= 1");
    }
    std::vector<std::complex<double>> values(static_cast<std::size_t>(n));
    for (auto& value : values) {
        value = parse_complex_line(reader);
    }
    return values;
}

void write_vector(std::ostream& out, const std::vector<std::complex<double>>& values) {
    out << "detsim-vector v1 n=" << values.size() << '\n';
    for (const auto& value : values) {
        out << format_full(value.real()) << ' ' << format_full(value.imag()) << '\n';
    }
}

WaveFunctionFile parse_wavefunction(std::istream& in) {
    LineReader reader(in);
    std::vector<std::string> header;
    expect_header(reader, "detsim-wavefunction", &header);
    const long qubits = parse_long(reader, header_value(reader, header, "l"));
    const long step = parse_long(reader, header_value(reader, header, "step"));
    const double time = parse_double(reader, header_value(reader, header, "time"));
    if (qubits < 1 || qubits > 24 || step < 0) {
        reader.fail("invalid wavefunction header");
    }
    WaveFunctionFile file{static_cast<unsigned>(qubits), static_cast<std::size_t>(step), time, {}};
    const std::size_t n = std::size_t{1} << file.qubits;
    file.amplitudes.resize(n);
    for (auto& amp : file.amplitudes) {
        amp = parse_complex_line(reader);
    }
    return file;
}

void write_wavefunction(std::ostream& out, const GridWaveFunction& psi, std::size_t step,
                        double time) {
    out << "detsim-wavefunction v1 l=" << psi.grid().qubits() << " step=" << step
        << " time=" << format_full(time) << " dq=" << format_full(psi.grid().spacing()) << '\n';
    for (const auto& amp : psi.amplitudes()) {
        out << format_full(amp.real()) << ' ' << format_full(amp.imag()) << '\n';
    }
}

PotentialField parse_potential(std::istream& in) {
    LineReader reader(in);
    std::vector<std::string> header;
    expect_header(reader, "detsim-potential", &header);
    const long n = parse_long(reader, header_value(reader, header, "n"));
    const double mass = parse_double(reader, header_value(reader, header, "mass"));
    const long frames = parse_long(reader, header_value(reader, header, "frames"));
    if (n < 1 || frames < 1) {
        reader.fail("invalid potential header");
    }
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(frames));
    for (auto& frame : samples) {
        frame.resize(static_cast<std::size_t>(n));
        for (auto& value : frame) {
            const auto line = reader.next();
            if (!line) {
                reader.fail("unexpected end of file in potential samples");
            }
            const auto tokens = tokenize(*line);
            if (tokens.size() != 1) {
                reader.fail("expected one sample per line");
            }
            value = parse_double(reader, tokens[0]);
        }
    }
    try {
        return PotentialField(std::move(samples), mass);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

void write_potential(std::ostream& out, const PotentialField& field) {
    out << "detsim-potential v1 n=" << field.points() << " mass=" << format_full(field.mass())
        << " frames=" << field.frame_count() << '\n';
    for (const auto& frame : field.frames()) {
        for (double value : frame) {
            out << format_full(value) << '\n';
        }
    }
}

PotentialField potential_from_expression(const std::string& expression, const Grid& grid,
                                         double mass) {
    std::string name = expression;
    std::string argument;
    if (const std::size_t colon = expression.find(':'); colon != std::string::npos) {
        name = expression.substr(0, colon);
        argument = expression.substr(colon + 1);
    }
    const auto argument_value = [&](const std::string& key) {
        const std::string prefix = key + "=";
        if (!argument.starts_with(prefix)) {
            throw ParseError("potential expression '" + expression + "' needs " + key + "=<value>");
        }
        try {
            return std::stod(argument.substr(prefix.size()));
        } catch (const std::exception&) {
            throw ParseError("bad numeric argument in potential expression '" + expression + "'");
        }
    };

    std::vector<double> samples(grid.points());
    if (name == "zero") {
        // all zeros
    } else if (name == "linear") {
        const double g = argument_value("g");
        for (std::size_t a = 0; a < samples.size(); ++a) {
            samples[a] = g * grid.position(a);
        }
    } else if (name == "harmonic") {
        const double omega = argument_value("omega");
        for (std::size_t a = 0; a < samples.size(); ++a) {
            const double q = grid.position(a);
            samples[a] = 0.5 * mass * omega * omega * q * q;
        }
    } else {
        throw ParseError("unknown potential expression '" + expression + "'");
    }
    return PotentialField(std::move(samples), mass);
}

Eigen::MatrixXcd parse_matrix(std::istream& in) {
    LineReader reader(in);
    std::vector<std::string> header;
    expect_header(reader, "detsim-matrix", &header);
    const long n = parse_long(reader, header_value(reader, header, "n"));
    if (n < 1) {
        reader.fail("matrix dimension must be >= 1");
    }
    Eigen::MatrixXcd matrix(n, n);
    for (long row = 0; row < n; ++row) {
        const auto line = reader.next();
        if (!line) {
            reader.fail("unexpected end of file in matrix rows");
        }
        const auto tokens = tokenize(*line);
        if (tokens.size() != static_cast<std::size_t>(2 * n)) {
            reader.fail("matrix row needs " + std::to_string(2 * n) + " numbers");
        }
        for (long col = 0; col < n; ++col) {
            matrix(row, col) = {parse_double(reader, tokens[static_cast<std::size_t>(2 * col)]),
                                parse_double(reader, tokens[static_cast<std::size_t>(2 * col + 1)])};
        }
    }
    return matrix;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& matrix) {
    if (matrix.rows() != matrix.cols()) {
        throw DimensionError("matrix files hold square matrices");
    }
    out << "detsim-matrix v1 n=" << matrix.rows() << '\n';
    for (Eigen::Index row = 0; row < matrix.rows(); ++row) {
        for (Eigen::Index col = 0; col < matrix.cols(); ++col) {
            if (col > 0) {
                out << ' ';
            }
            out << format_full(matrix(row, col).real()) << ' ' << format_full(matrix(row, col).imag());
        }
        out << '\n';
    }
}

}  // namespace detsim
