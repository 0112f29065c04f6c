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

// Shared fixtures and independent oracles for the test suites. Tests use
// seeded generators only; the library itself has no random source.

#ifndef DETSIM_TEST_HELPERS_HPP
#define DETSIM_TEST_HELPERS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "detsim/assembly.hpp"
#include "detsim/grid_propagator.hpp"
#include "detsim/option_model.hpp"

namespace detsim::test {

inline std::mt19937_64 seeded_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

inline StateVector random_state(std::mt19937_64& rng, std::size_t dimension) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> amps(dimension);
    double sum = 0.0;
    for (auto& a : amps) {
        a = {gauss(rng), gauss(rng)};
        sum += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(sum);
    for (auto& a : amps) {
        a *= scale;
    }
    return StateVector(std::move(amps));
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, std::size_t dimension) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(dimension, dimension);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) = std::complex<double>(gauss(rng), gauss(rng));
        }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd q = qr.householderQ();
    // Fix the phase so Q is uniquely determined by the seed.
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const std::complex<double> d = r(i, i);
        if (std::abs(d) > 0.0) {
            q.col(i) *= d / std::abs(d);
        }
    }
    return q;
}

inline StateVector apply_unitary(const Eigen::MatrixXcd& u, const StateVector& state) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(state.dimension()));
    for (std::size_t j = 0; j < state.dimension(); ++j) {
        v(static_cast<Eigen::Index>(j)) = state.amplitude(j);
    }
    const Eigen::VectorXcd w = u * v;
    return StateVector(std::vector<std::complex<double>>(w.data(), w.data() + w.size()));
}

/// Real state whose squared amplitudes sit at or slightly above the target
/// probabilities, so floor thresholds land exactly where the real-number
/// formula puts them.
inline StateVector state_with_probs(const std::vector<double>& probs) {
    std::vector<std::complex<double>> amps(probs.size());
    for (std::size_t j = 0; j < probs.size(); ++j) {
        double r = std::sqrt(probs[j]);
        for (int nudge = 0; nudge < 8 && r * r < probs[j]; ++nudge) {
            r = std::nextafter(r, 2.0);
        }
        r = std::nextafter(std::nextafter(r, 2.0), 2.0);
        amps[j] = {probs[j] > 0.0 ? r : 0.0, 0.0};
    }
    return StateVector(std::move(amps));
}

/// Naive O(N^2) discrete Fourier transform with the forward kernel
/// exp(-2*pi*i*a*b/N)/sqrt(N); the independent oracle for the fast path.
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& in) {
    const std::size_t n = in.size();
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a = 0; a < n; ++a) {
            const double angle = -2.0 * M_PI * static_cast<double>(a * b % n) / static_cast<double>(n);
            out[b] += in[a] * std::polar(1.0, angle);
        }
        out[b] /= std::sqrt(static_cast<double>(n));
    }
    return out;
}

/// Dense discretized Hamiltonian H = diag(V) + F^dagger diag(p^2/2m) F,
/// built independently of the split-step path.
inline Eigen::MatrixXcd dense_hamiltonian(const Grid& grid, const std::vector<double>& potential,
                                          double mass) {
    const std::size_t n = grid.points();
    Eigen::MatrixXcd fourier(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a = 0; a < n; ++a) {
            const double angle = -2.0 * M_PI * static_cast<double>(a * b % n) / static_cast<double>(n);
            fourier(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) =
                std::polar(scale, angle);
        }
    }
    Eigen::VectorXd kinetic(n);
    for (std::size_t b = 0; b < n; ++b) {
        const double p = grid.momentum(b);
        kinetic(static_cast<Eigen::Index>(b)) = p * p / (2.0 * mass);
    }
    Eigen::MatrixXcd h = fourier.adjoint() * kinetic.asDiagonal() * fourier;
    for (std::size_t a = 0; a < n; ++a) {
        h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) += potential[a];
    }
    return h;
}

/// exp(-i H t) psi via eigendecomposition of the Hermitian H.
inline std::vector<std::complex<double>> dense_evolution(const Eigen::MatrixXcd& hamiltonian,
                                                         const std::vector<std::complex<double>>& psi,
                                                         double time) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigen(
        (hamiltonian + hamiltonian.adjoint()) / 2.0);
    const Eigen::VectorXcd coefficients =
        eigen.eigenvectors().adjoint() *
        Eigen::Map<const Eigen::VectorXcd>(psi.data(), static_cast<Eigen::Index>(psi.size()));
    Eigen::VectorXcd rotated(coefficients.size());
    for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
        rotated(i) = coefficients(i) * std::polar(1.0, -eigen.eigenvalues()(i) * time);
    }
    const Eigen::VectorXcd out = eigen.eigenvectors() * rotated;
    return std::vector<std::complex<double>>(out.data(), out.data() + out.size());
}

/// Exhaustive product-distribution enumeration of an assembly fixture: walks
/// every outcome sequence with its exact probability, tracking contexts the
/// same way the chains grow but never touching options or thresholds.
/// Returns chain-letter classes plus an "impossible" mass.
inline std::map<std::string, double> enumerate_assembly(const ScatteringTable& table,
                                                        const Scenario& scenario,
                                                        const ActiveSystem& initial,
                                                        const Alphabet& alphabet) {
    std::map<std::string, double> classes;
    struct Walker {
        const ScatteringTable& table;
        const Scenario& scenario;
        const Alphabet& alphabet;
        std::map<std::string, double>& classes;

        void walk(const ActiveSystem& active, std::size_t step_index, double mass) {
            if (step_index == scenario.size()) {
                classes[chain_letters(alphabet, active.growing())] += mass;
                return;
            }
            const OutcomeDistribution mixture =
                scatter(table, active, scenario.step(step_index));
            for (std::size_t i = 0; i < mixture.size(); ++i) {
                const double branch = mass * mixture.weight(i);
                if (branch == 0.0) {
                    continue;
                }
                if (!mixture.outcome(i).admitted()) {
                    classes["impossible"] += branch;
                    continue;
                }
                walk(assembly_step(active, mixture.outcome(i)), step_index + 1, branch);
            }
        }
    };
    Walker{table, scenario, alphabet, classes}.walk(initial, 0, 1.0);
    return classes;
}

}  // namespace detsim::test

#endif
