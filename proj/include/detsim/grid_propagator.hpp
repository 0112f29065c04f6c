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

// Split-operator propagation of a one-dimensional wave function on a
// 2^l point grid. Units are chosen so that dq = dp = sqrt(2*pi/N) and the
// grid covers (-A, A) with A = B = sqrt(pi*N/2); then the coordinate ->
// impulse change of basis is the discrete Fourier transform with kernel
// exp(-2*pi*i*a*b/N)/sqrt(N) and the kinetic phase at impulse index b is
// exp(-i*pi*b^2*dt/(m*N)) with b taken in the signed (centered) convention.

#ifndef DETSIM_GRID_PROPAGATOR_HPP
#define DETSIM_GRID_PROPAGATOR_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "detsim/common.hpp"
#include "detsim/errors.hpp"

namespace detsim {

class Grid {
  public:
    explicit Grid(unsigned qubits);

    unsigned qubits() const { return qubits_; }
    std::size_t points() const { return points_; }
    /// dq = dp = sqrt(2*pi/N); dq * dp * N = 2*pi exactly in these units.
    double spacing() const { return spacing_; }
    /// A = B = sqrt(pi*N/2).
    double half_range() const { return half_range_; }
    double position(std::size_t a) const { return -half_range_ + static_cast<double>(a) * spacing_; }
    /// Indices above N/2 are negative momenta (centered convention).
    long signed_index(std::size_t b) const {
        return b <= points_ / 2 ? static_cast<long>(b) : static_cast<long>(b) - static_cast<long>(points_);
    }
    double momentum(std::size_t b) const { return static_cast<double>(signed_index(b)) * spacing_; }

    friend bool operator==(const Grid& a, const Grid& b) { return a.qubits_ == b.qubits_; }

  private:
    unsigned qubits_;
    std::size_t points_;
    double spacing_;
    double half_range_;
};

/// Wave function sampled on the grid. The public constructor renormalizes
/// within kNormTolerance and rejects beyond it; transforms produced by the
/// propagator itself use `raw` so that norm drift stays observable.
class GridWaveFunction {
  public:
    GridWaveFunction(Grid grid, std::vector<std::complex<double>> amplitudes);

    static GridWaveFunction raw(Grid grid, std::vector<std::complex<double>> amplitudes);

    const Grid& grid() const { return grid_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
    std::complex<double>& operator[](std::size_t a) { return amplitudes_[a]; }
    const std::complex<double>& operator[](std::size_t a) const { return amplitudes_[a]; }
    double norm() const;

  private:
    struct RawTag {};
    GridWaveFunction(RawTag, Grid grid, std::vector<std::complex<double>> amplitudes);

    Grid grid_;
    std::vector<std::complex<double>> amplitudes_;
};

/// Potential samples V(q_a) with particle mass; either one frame (constant
/// in time) or one frame per evolution step.
class PotentialField {
  public:
    PotentialField(std::vector<double> samples, double mass);
    PotentialField(std::vector<std::vector<double>> frames, double mass);

    double mass() const { return mass_; }
    std::size_t points() const { return frames_.front().size(); }
    bool time_dependent() const { return frames_.size() > 1; }
    std::size_t frame_count() const { return frames_.size(); }
    std::span<const double> frame(std::size_t step) const;
    const std::vector<std::vector<double>>& frames() const { return frames_; }

  private:
    void validate() const;

    std::vector<std::vector<double>> frames_;
    double mass_;
};

/// Coordinate -> impulse representation, kernel exp(-2*pi*i*a*b/N)/sqrt(N).
GridWaveFunction dft(const GridWaveFunction& psi);
/// Inverse transform; idft(dft(psi)) = psi within 1e-12.
GridWaveFunction idft(const GridWaveFunction& phi);

/// Pointwise phase exp(-i*V(q_a)*dt); exactly norm preserving.
GridWaveFunction potential_phase(const GridWaveFunction& psi, const PotentialField& field, double dt,
                                 std::size_t step_index = 0);

/// Phase exp(-i*pi*b^2*dt/(m*N)) on the impulse representation, b signed.
GridWaveFunction kinetic_phase(const GridWaveFunction& phi, double dt, double mass);

/// One split step: potential phase first, then the Fourier-conjugated
/// kinetic phase.
GridWaveFunction step(const GridWaveFunction& psi, const PotentialField& field, double dt,
                      std::size_t step_index = 0);

/// Repeated split steps; step-indexed potentials must supply one frame per
/// step.
GridWaveFunction evolve(const GridWaveFunction& psi, const PotentialField& field, double dt,
                        std::size_t steps);

enum class Observable { position, momentum };

double expectation(const GridWaveFunction& psi, Observable which);

struct PhasePoint {
    double x;
    double p;
};

/// Symplectic-Euler integration of X' = P/m, P' = -dV/dX with a
/// central-difference gradient on the grid samples. Returns steps+1 points
/// including the initial one; leaving (-A, A) raises GridRangeError.
std::vector<PhasePoint> classical_trajectory(double x0, double p0, const PotentialField& field,
                                             const Grid& grid, double dt, std::size_t steps);

}  // namespace detsim

#endif
