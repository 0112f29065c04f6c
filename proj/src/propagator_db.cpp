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

#include "detsim/propagator_db.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "detsim/digest.hpp"

namespace detsim {

namespace {

bool bitwise_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

std::string canonical_serialization(unsigned qubits, double dt, std::size_t steps, double mass,
                                    const std::vector<std::vector<double>>& frames) {
    std::ostringstream out;
    out << "propagator l=" << qubits << " dt=" << format_full(dt) << " steps=" << steps
        << " mass=" << format_full(mass) << " frames=" << frames.size();
    for (const auto& frame : frames) {
        out << " |";
        for (double v : frame) {
            out << ' ' << format_full(v);
        }
    }
    return out.str();
}

}  // namespace

PropagatorKey::PropagatorKey(const Grid& grid, const PotentialField& field, double dt,
                             std::size_t steps)
    : qubits_(grid.qubits()),
      dt_(dt),
      steps_(steps),
      mass_(field.mass()),
      frames_(field.frames()) {
    if (field.points() != grid.points()) {
        throw DimensionError("potential/grid size mismatch in propagator key");
    }
    digest_ = fnv1a64_hex(canonical_serialization(qubits_, dt_, steps_, mass_, frames_));
}

bool PropagatorKey::operator==(const PropagatorKey& other) const {
    if (qubits_ != other.qubits_ || steps_ != other.steps_ || !bitwise_equal(dt_, other.dt_) ||
        !bitwise_equal(mass_, other.mass_) || frames_.size() != other.frames_.size()) {
        return false;
    }
    for (std::size_t f = 0; f < frames_.size(); ++f) {
        if (frames_[f].size() != other.frames_[f].size()) {
            return false;
        }
        for (std::size_t i = 0; i < frames_[f].size(); ++i) {
            if (!bitwise_equal(frames_[f][i], other.frames_[f][i])) {
                return false;
            }
        }
    }
    return true;
}

PropagatorMatrix::PropagatorMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
        throw DimensionError("propagator matrix must be square and nonempty");
    }
}

double PropagatorMatrix::unitarity_residual() const {
    const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
    const Eigen::MatrixXcd identity =
        Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
    return (gram - identity).cwiseAbs().maxCoeff();
}

PropagatorMatrix build_propagator(const PropagatorKey& key, const PotentialField& field,
                                  const Grid& grid, unsigned max_qubits) {
    if (grid.qubits() > max_qubits) {
        throw CapError("propagator build refused: grid has " + std::to_string(grid.qubits()) +
                       " qubits, cap is " + std::to_string(max_qubits));
    }
    if (!(PropagatorKey(grid, field, key.dt(), key.steps()) == key)) {
        throw DimensionError("propagator key does not match the supplied field/grid");
    }
    const std::size_t n = grid.points();
    Eigen::MatrixXcd matrix(n, n);
    std::vector<std::complex<double>> basis(n);
    for (std::size_t column = 0; column < n; ++column) {
        std::fill(basis.begin(), basis.end(), std::complex<double>{0.0, 0.0});
        basis[column] = {1.0, 0.0};
        const GridWaveFunction evolved =
            evolve(GridWaveFunction::raw(grid, basis), field, key.dt(), key.steps());
        for (std::size_t row = 0; row < n; ++row) {
            matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(column)) = evolved[row];
        }
    }
    return PropagatorMatrix(std::move(matrix));
}

GridWaveFunction apply(const PropagatorMatrix& matrix, const GridWaveFunction& psi) {
    if (matrix.dimension() != psi.grid().points()) {
        throw DimensionError("propagator dimension does not match the wave function");
    }
    const std::size_t n = matrix.dimension();
    const Eigen::Map<const Eigen::VectorXcd> in(psi.amplitudes().data(),
                                                static_cast<Eigen::Index>(n));
    const Eigen::VectorXcd out = matrix.matrix() * in;
    return GridWaveFunction::raw(psi.grid(),
                                 std::vector<std::complex<double>>(out.data(), out.data() + n));
}

PropagatorDatabase::PropagatorDatabase(std::filesystem::path directory, unsigned max_qubits)
    : directory_(std::move(directory)), max_qubits_(max_qubits) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec) {
        throw IoError("cannot create database directory " + directory_.string() + ": " +
                      ec.message());
    }
}

std::filesystem::path PropagatorDatabase::entry_path(const PropagatorKey& key) const {
    return directory_ / (key.digest() + ".prop");
}

std::shared_ptr<const PropagatorMatrix> PropagatorDatabase::lookup_or_build(
    const PropagatorKey& key, const PotentialField& field, const Grid& grid) {
    std::shared_future<std::shared_ptr<const PropagatorMatrix>> entry;
    bool builder = false;
    std::promise<std::shared_ptr<const PropagatorMatrix>> promise;
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key.digest());
        if (it == entries_.end()) {
            entry = promise.get_future().share();
            entries_.emplace(key.digest(), entry);
            builder = true;
        } else {
            entry = it->second;
        }
    }
    if (!builder) {
        return entry.get();
    }
    try {
        std::shared_ptr<const PropagatorMatrix> matrix = load_from_disk(key);
        if (!matrix) {
            matrix = std::make_shared<const PropagatorMatrix>(
                build_propagator(key, field, grid, max_qubits_));
            persist(key, *matrix);
            std::lock_guard lock(mutex_);
            ++builds_;
        }
        promise.set_value(matrix);
        return matrix;
    } catch (...) {
        {
            std::lock_guard lock(mutex_);
            entries_.erase(key.digest());
        }
        promise.set_exception(std::current_exception());
        throw;
    }
}

std::shared_ptr<const PropagatorMatrix> PropagatorDatabase::lookup(const PropagatorKey& key) {
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key.digest());
        if (it != entries_.end()) {
            return it->second.get();
        }
    }
    std::shared_ptr<const PropagatorMatrix> matrix = load_from_disk(key);
    if (matrix) {
        std::promise<std::shared_ptr<const PropagatorMatrix>> promise;
        promise.set_value(matrix);
        std::lock_guard lock(mutex_);
        entries_.emplace(key.digest(), promise.get_future().share());
    }
    return matrix;
}

bool PropagatorDatabase::contains(const PropagatorKey& key) {
    {
        std::lock_guard lock(mutex_);
        if (entries_.contains(key.digest())) {
            return true;
        }
    }
    return std::filesystem::exists(entry_path(key));
}

std::size_t PropagatorDatabase::build_count() const {
    std::lock_guard lock(mutex_);
    return builds_;
}

std::shared_ptr<const PropagatorMatrix> PropagatorDatabase::load_from_disk(
    const PropagatorKey& key) {
    const std::filesystem::path path = entry_path(key);
    if (!std::filesystem::exists(path)) {
        return nullptr;
    }
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open database entry " + path.string());
    }
    std::string tag, version;
    unsigned qubits = 0;
    double dt = 0.0, mass = 0.0;
    std::size_t steps = 0, frames = 0, n = 0;
    in >> tag >> version >> qubits >> dt >> steps >> mass >> frames >> n;
    if (!in || tag != "detsim-propagator" || version != "v1") {
        throw IoError("malformed database entry header in " + path.string());
    }
    if (qubits != key.qubits() || steps != key.steps() || frames != key.potential_frames().size() ||
        n != (std::size_t{1} << key.qubits()) || !bitwise_equal(dt, key.dt()) ||
        !bitwise_equal(mass, key.mass())) {
        throw IoError("database entry " + path.string() + " does not match its key");
    }
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t i = 0; i < n; ++i) {
            double v = 0.0;
            in >> v;
            if (!in || !bitwise_equal(v, key.potential_frames()[f][i])) {
                throw IoError("database entry " + path.string() + " does not match its key");
            }
        }
    }
    Eigen::MatrixXcd matrix(n, n);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            double re = 0.0, im = 0.0;
            in >> re >> im;
            if (!in) {
                throw IoError("truncated database entry " + path.string());
            }
            matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = {re, im};
        }
    }
    return std::make_shared<const PropagatorMatrix>(std::move(matrix));
}

void PropagatorDatabase::persist(const PropagatorKey& key, const PropagatorMatrix& matrix) const {
    const std::filesystem::path path = entry_path(key);
    const std::filesystem::path temp = path.string() + ".tmp";
    {
        std::ofstream out(temp);
        if (!out) {
            throw IoError("cannot write database entry " + temp.string());
        }
        const std::size_t n = matrix.dimension();
        out << "detsim-propagator v1 " << key.qubits() << ' ' << format_full(key.dt()) << ' '
            << key.steps() << ' ' << format_full(key.mass()) << ' '
            << key.potential_frames().size() << ' ' << n << '\n';
        for (const auto& frame : key.potential_frames()) {
            for (double v : frame) {
                out << format_full(v) << '\n';
            }
        }
        for (std::size_t row = 0; row < n; ++row) {
            for (std::size_t col = 0; col < n; ++col) {
                const std::complex<double> value =
                    matrix.matrix()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
                out << format_full(value.real()) << ' ' << format_full(value.imag()) << '\n';
            }
        }
        if (!out) {
            throw IoError("write failure on database entry " + temp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        throw IoError("cannot publish database entry " + path.string() + ": " + ec.message());
    }
}

}  // namespace detsim
