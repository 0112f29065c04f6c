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

#include "detsim/grid_propagator.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace detsim {

namespace {

constexpr double kPi = std::numbers::pi;

// Radix-2 decimation-in-time FFT, in place. sign = -1 gives the forward
// kernel exp(-2*pi*i*a*b/N); amplitudes are not scaled here.
void fft_radix2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = static_cast<double>(sign) * 2.0 * kPi / static_cast<double>(len);
        const std::complex<double> root = std::polar(1.0, angle);
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= root;
            }
        }
    }
}

GridWaveFunction transform(const GridWaveFunction& psi, int sign) {
    std::vector<std::complex<double>> amps = psi.amplitudes();
    fft_radix2(amps, sign);
    const double scale = 1.0 / std::sqrt(static_cast<double>(amps.size()));
    for (auto& a : amps) {
        a *= scale;
    }
    return GridWaveFunction::raw(psi.grid(), std::move(amps));
}

void check_field_size(const GridWaveFunction& psi, const PotentialField& field) {
    if (field.points() != psi.grid().points()) {
        throw DimensionError("potential has " + std::to_string(field.points()) +
                             " samples for a grid of " + std::to_string(psi.grid().points()) +
                             " points");
    }
}

}  // namespace

Grid::Grid(unsigned qubits) : qubits_(qubits) {
    if (qubits_ < 1 || qubits_ > 24) {
        throw CapError("grid qubits must be in 1..24");
    }
    points_ = std::size_t{1} << qubits_;
    spacing_ = std::sqrt(2.0 * kPi / static_cast<double>(points_));
    half_range_ = std::sqrt(kPi * static_cast<double>(points_) / 2.0);
}

GridWaveFunction::GridWaveFunction(Grid grid, std::vector<std::complex<double>> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != grid_.points()) {
        throw DimensionError("wave function needs " + std::to_string(grid_.points()) +
                             " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    double sum = 0.0;
    for (const auto& a : amplitudes_) {
        sum += std::norm(a);
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        throw NormalizationError("wave function norm^2 = " + std::to_string(sum) +
                                 " is outside the normalization tolerance");
    }
    const double scale = 1.0 / std::sqrt(sum);
    for (auto& a : amplitudes_) {
        a *= scale;
    }
}

GridWaveFunction::GridWaveFunction(RawTag, Grid grid, std::vector<std::complex<double>> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {}

GridWaveFunction GridWaveFunction::raw(Grid grid, std::vector<std::complex<double>> amplitudes) {
    if (amplitudes.size() != grid.points()) {
        throw DimensionError("wave function needs " + std::to_string(grid.points()) +
                             " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    return GridWaveFunction(RawTag{}, grid, std::move(amplitudes));
}

double GridWaveFunction::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

PotentialField::PotentialField(std::vector<double> samples, double mass) : mass_(mass) {
    frames_.push_back(std::move(samples));
    validate();
}

PotentialField::PotentialField(std::vector<std::vector<double>> frames, double mass)
    : frames_(std::move(frames)), mass_(mass) {
    validate();
}

void PotentialField::validate() const {
    if (!(mass_ > 0.0)) {
        throw CapError("mass must be positive");
    }
    if (frames_.empty() || frames_.front().empty()) {
        throw DimensionError("potential needs at least one nonempty frame");
    }
    const std::size_t n = frames_.front().size();
    for (const auto& frame : frames_) {
        if (frame.size() != n) {
            throw DimensionError("all potential frames must have equal size");
        }
        for (double v : frame) {
            if (!std::isfinite(v)) {
                throw NormalizationError("potential samples must be finite");
            }
        }
    }
}

std::span<const double> PotentialField::frame(std::size_t step) const {
    if (frames_.size() == 1) {
        return frames_.front();
    }
    if (step >= frames_.size()) {
        throw DimensionError("step-indexed potential has " + std::to_string(frames_.size()) +
                             " frames, step " + std::to_string(step) + " requested");
    }
    return frames_[step];
}

GridWaveFunction dft(const GridWaveFunction& psi) {
    return transform(psi, -1);
}

GridWaveFunction idft(const GridWaveFunction& phi) {
    return transform(phi, +1);
}

GridWaveFunction potential_phase(const GridWaveFunction& psi, const PotentialField& field, double dt,
                                 std::size_t step_index) {
    check_field_size(psi, field);
    const auto v = field.frame(step_index);
    std::vector<std::complex<double>> amps = psi.amplitudes();
    for (std::size_t a = 0; a < amps.size(); ++a) {
        amps[a] *= std::polar(1.0, -v[a] * dt);
    }
    return GridWaveFunction::raw(psi.grid(), std::move(amps));
}

GridWaveFunction kinetic_phase(const GridWaveFunction& phi, double dt, double mass) {
    if (!(mass > 0.0)) {
        throw CapError("mass must be positive");
    }
    const Grid& grid = phi.grid();
    const double n = static_cast<double>(grid.points());
    std::vector<std::complex<double>> amps = phi.amplitudes();
    for (std::size_t b = 0; b < amps.size(); ++b) {
        const double sb = static_cast<double>(grid.signed_index(b));
        amps[b] *= std::polar(1.0, -kPi * sb * sb * dt / (mass * n));
    }
    return GridWaveFunction::raw(grid, std::move(amps));
}

GridWaveFunction step(const GridWaveFunction& psi, const PotentialField& field, double dt,
                      std::size_t step_index) {
    return idft(kinetic_phase(dft(potential_phase(psi, field, dt, step_index)), dt, field.mass()));
}

GridWaveFunction evolve(const GridWaveFunction& psi, const PotentialField& field, double dt,
                        std::size_t steps) {
    check_field_size(psi, field);
    if (field.time_dependent() && field.frame_count() < steps) {
        throw DimensionError("time-dependent potential needs one frame per step");
    }
    GridWaveFunction current = psi;
    for (std::size_t i = 0; i < steps; ++i) {
        current = step(current, field, dt, i);
    }
    return current;
}

double expectation(const GridWaveFunction& psi, Observable which) {
    if (which == Observable::position) {
        const Grid& grid = psi.grid();
        double sum = 0.0;
        for (std::size_t a = 0; a < grid.points(); ++a) {
            sum += grid.position(a) * std::norm(psi[a]);
        }
        return sum;
    }
    const GridWaveFunction phi = dft(psi);
    const Grid& grid = phi.grid();
    double sum = 0.0;
    for (std::size_t b = 0; b < grid.points(); ++b) {
        sum += grid.momentum(b) * std::norm(phi[b]);
    }
    return sum;
}

std::vector<PhasePoint> classical_trajectory(double x0, double p0, const PotentialField& field,
                                             const Grid& grid, double dt, std::size_t steps) {
    if (field.points() != grid.points()) {
        throw DimensionError("potential/grid size mismatch");
    }
    if (field.time_dependent() && field.frame_count() < steps) {
        throw DimensionError("time-dependent potential needs one frame per step");
    }
    const double a = grid.half_range();
    const double dq = grid.spacing();
    const auto gradient = [&](std::span<const double> v, double x) {
        if (!(x > -a && x < a)) {
            throw GridRangeError("trajectory left the grid range at x = " + std::to_string(x));
        }
        const auto index = static_cast<long>(std::lround((x + a) / dq));
        if (index < 1 || index + 1 >= static_cast<long>(grid.points())) {
            throw GridRangeError("trajectory reached the grid boundary at x = " + std::to_string(x));
        }
        const std::size_t i = static_cast<std::size_t>(index);
        return (v[i + 1] - v[i - 1]) / (2.0 * dq);
    };

    std::vector<PhasePoint> trajectory;
    trajectory.reserve(steps + 1);
    double x = x0;
    double p = p0;
    trajectory.push_back(PhasePoint{x, p});
    for (std::size_t i = 0; i < steps; ++i) {
        p -= dt * gradient(field.frame(i), x);
        x += dt * p / field.mass();
        trajectory.push_back(PhasePoint{x, p});
    }
    return trajectory;
}

}  // namespace detsim
