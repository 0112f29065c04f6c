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

// Caches the full linear evolution operator for a fixed (potential, dt,
// step count) so that repeated Cauchy problems with new initial conditions
// cost one matrix application instead of a full propagation. Dense N^2
// storage is the honest price; a qubit cap keeps it at desk scale.

#ifndef DETSIM_PROPAGATOR_DB_HPP
#define DETSIM_PROPAGATOR_DB_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "detsim/grid_propagator.hpp"

namespace detsim {

inline constexpr unsigned kDefaultMaxDbQubits = 10;

/// Identifies a propagator: grid size, potential content, mass, dt, steps.
/// Equal keys mean bitwise-equal inputs.
class PropagatorKey {
  public:
    PropagatorKey(const Grid& grid, const PotentialField& field, double dt, std::size_t steps);

    unsigned qubits() const { return qubits_; }
    double dt() const { return dt_; }
    std::size_t steps() const { return steps_; }
    double mass() const { return mass_; }
    const std::vector<std::vector<double>>& potential_frames() const { return frames_; }

    /// Hex digest of the canonical full-precision serialization.
    const std::string& digest() const { return digest_; }

    bool operator==(const PropagatorKey& other) const;

  private:
    unsigned qubits_;
    double dt_;
    std::size_t steps_;
    double mass_;
    std::vector<std::vector<double>> frames_;
    std::string digest_;
};

class PropagatorMatrix {
  public:
    explicit PropagatorMatrix(Eigen::MatrixXcd matrix);

    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    /// max |(M^dagger M - I)_{ij}|.
    double unitarity_residual() const;

  private:
    Eigen::MatrixXcd matrix_;
};

/// Assembles the propagator by evolving each basis vector (the columns).
PropagatorMatrix build_propagator(const PropagatorKey& key, const PotentialField& field,
                                  const Grid& grid, unsigned max_qubits = kDefaultMaxDbQubits);

/// Matrix application; linear in the initial data.
GridWaveFunction apply(const PropagatorMatrix& matrix, const GridWaveFunction& psi);

/// Directory-backed store, one file per key digest. Lookups are concurrent;
/// builds for the same key are serialized so exactly one build happens, and
/// published matrices are immutable.
class PropagatorDatabase {
  public:
    explicit PropagatorDatabase(std::filesystem::path directory,
                                unsigned max_qubits = kDefaultMaxDbQubits);

    std::shared_ptr<const PropagatorMatrix> lookup_or_build(const PropagatorKey& key,
                                                            const PotentialField& field,
                                                            const Grid& grid);

    /// Memory or disk lookup; nullptr when absent.
    std::shared_ptr<const PropagatorMatrix> lookup(const PropagatorKey& key);

    bool contains(const PropagatorKey& key);

    const std::filesystem::path& directory() const { return directory_; }
    std::size_t build_count() const;

  private:
    std::shared_ptr<const PropagatorMatrix> load_from_disk(const PropagatorKey& key);
    void persist(const PropagatorKey& key, const PropagatorMatrix& matrix) const;
    std::filesystem::path entry_path(const PropagatorKey& key) const;

    std::filesystem::path directory_;
    unsigned max_qubits_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_future<std::shared_ptr<const PropagatorMatrix>>> entries_;
    std::size_t builds_ = 0;
};

}  // namespace detsim

#endif
