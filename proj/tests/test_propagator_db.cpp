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

#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <thread>

#include "detsim/propagator_db.hpp"
#include "test_helpers.hpp"

using namespace detsim;

namespace {

std::filesystem::path fresh_dir(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

GridWaveFunction random_wave(std::mt19937_64& rng, const Grid& grid) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> amps(grid.points());
    double sum = 0.0;
    for (auto& amp : amps) {
        amp = {gauss(rng), gauss(rng)};
        sum += std::norm(amp);
    }
    for (auto& amp : amps) {
        amp /= std::sqrt(sum);
    }
    return GridWaveFunction(grid, std::move(amps));
}

PotentialField harmonic_field(const Grid& grid, double omega) {
    std::vector<double> v(grid.points());
    for (std::size_t a = 0; a < grid.points(); ++a) {
        const double q = grid.position(a);
        v[a] = 0.5 * omega * omega * q * q;
    }
    return PotentialField(std::move(v), 1.0);
}

}  // namespace

TEST_CASE("zero steps builds the identity") {
    const Grid grid(3);
    const PotentialField field = harmonic_field(grid, 1.0);
    const PropagatorKey key(grid, field, 0.05, 0);
    const PropagatorMatrix matrix = build_propagator(key, field, grid);
    CHECK((matrix.matrix() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("free single step equals the Fourier-conjugated kinetic diagonal") {
    const Grid grid(3);
    const std::size_t n = grid.points();
    const PotentialField zero(std::vector<double>(n, 0.0), 1.0);
    const double dt = 0.2;
    const PropagatorKey key(grid, zero, dt, 1);
    const PropagatorMatrix matrix = build_propagator(key, zero, grid);
    for (std::size_t column = 0; column < n; ++column) {
        std::vector<std::complex<double>> basis(n, {0.0, 0.0});
        basis[column] = {1.0, 0.0};
        const GridWaveFunction expected =
            idft(kinetic_phase(dft(GridWaveFunction::raw(grid, basis)), dt, 1.0));
        for (std::size_t row = 0; row < n; ++row) {
            CHECK(std::abs(matrix.matrix()(static_cast<Eigen::Index>(row),
                                           static_cast<Eigen::Index>(column)) -
                           expected[row]) < 1e-14);
        }
    }
}

TEST_CASE("stored matrices are unitary and reproduce evolve") {
    const Grid grid(5);
    const PotentialField field = harmonic_field(grid, 1.2);
    const PropagatorKey key(grid, field, 0.04, 12);
    const PropagatorMatrix matrix = build_propagator(key, field, grid);
    CHECK(matrix.unitarity_residual() < 1e-9);

    auto rng = test::seeded_rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const GridWaveFunction psi = random_wave(rng, grid);
        const GridWaveFunction direct = evolve(psi, field, 0.04, 12);
        const GridWaveFunction cached = apply(matrix, psi);
        double err = 0.0;
        for (std::size_t a = 0; a < grid.points(); ++a) {
            err = std::max(err, std::abs(direct[a] - cached[a]));
        }
        CHECK(err < 1e-12);
        CHECK(std::abs(cached.norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("apply is linear") {
    const Grid grid(4);
    const PotentialField field = harmonic_field(grid, 0.7);
    const PropagatorKey key(grid, field, 0.05, 5);
    const PropagatorMatrix matrix = build_propagator(key, field, grid);
    auto rng = test::seeded_rng(67);
    const GridWaveFunction psi1 = random_wave(rng, grid);
    const GridWaveFunction psi2 = random_wave(rng, grid);
    const std::complex<double> alpha{0.6, 0.0}, beta{0.0, 0.8};
    std::vector<std::complex<double>> combo(grid.points());
    for (std::size_t a = 0; a < grid.points(); ++a) {
        combo[a] = alpha * psi1[a] + beta * psi2[a];
    }
    const GridWaveFunction mixed = apply(matrix, GridWaveFunction::raw(grid, combo));
    const GridWaveFunction lhs1 = apply(matrix, psi1);
    const GridWaveFunction lhs2 = apply(matrix, psi2);
    for (std::size_t a = 0; a < grid.points(); ++a) {
        CHECK(std::abs(mixed[a] - (alpha * lhs1[a] + beta * lhs2[a])) < 1e-12);
    }
}

TEST_CASE("apply rejects dimension mismatches") {
    const Grid small(3), big(4);
    const PotentialField field = harmonic_field(small, 1.0);
    const PropagatorKey key(small, field, 0.05, 1);
    const PropagatorMatrix matrix = build_propagator(key, field, small);
    auto rng = test::seeded_rng(71);
    CHECK_THROWS_AS(apply(matrix, random_wave(rng, big)), DimensionError);
}

TEST_CASE("build refuses grids above the cap") {
    const Grid grid(5);
    const PotentialField field = harmonic_field(grid, 1.0);
    const PropagatorKey key(grid, field, 0.05, 1);
    CHECK_THROWS_AS(build_propagator(key, field, grid, 4), CapError);
}

TEST_CASE("database: one build for repeated lookups, bit-identical results") {
    const Grid grid(4);
    const PotentialField field = harmonic_field(grid, 1.0);
    const PropagatorKey key(grid, field, 0.03, 7);
    PropagatorDatabase db(fresh_dir("detsim-test-db-contract"));
    const auto first = db.lookup_or_build(key, field, grid);
    const auto second = db.lookup_or_build(key, field, grid);
    CHECK(db.build_count() == 1);
    CHECK(first.get() == second.get());

    // keys differing only in dt are distinct entries
    const PropagatorKey other(grid, field, 0.06, 7);
    CHECK(other.digest() != key.digest());
    db.lookup_or_build(other, field, grid);
    CHECK(db.build_count() == 2);
}

TEST_CASE("database: cold reload returns the persisted bits") {
    const auto dir = fresh_dir("detsim-test-db-persist");
    const Grid grid(4);
    const PotentialField field = harmonic_field(grid, 0.9);
    const PropagatorKey key(grid, field, 0.05, 9);

    Eigen::MatrixXcd built;
    {
        PropagatorDatabase db(dir);
        built = db.lookup_or_build(key, field, grid)->matrix();
    }
    {
        PropagatorDatabase cold(dir);
        const auto loaded = cold.lookup(key);
        REQUIRE(loaded != nullptr);
        CHECK(cold.build_count() == 0);
        CHECK((loaded->matrix() - built).cwiseAbs().maxCoeff() == 0.0);

        // rebuild from scratch agrees entrywise with the persisted matrix
        const PropagatorMatrix rebuilt = build_propagator(key, field, grid);
        CHECK((rebuilt.matrix() - loaded->matrix()).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("database: missing key lookup returns null") {
    PropagatorDatabase db(fresh_dir("detsim-test-db-missing"));
    const Grid grid(3);
    const PotentialField field = harmonic_field(grid, 1.0);
    const PropagatorKey key(grid, field, 0.01, 3);
    CHECK(db.lookup(key) == nullptr);
    CHECK_FALSE(db.contains(key));
}

TEST_CASE("database: concurrent lookups build exactly once") {
    PropagatorDatabase db(fresh_dir("detsim-test-db-threads"));
    const Grid grid(5);
    const PotentialField field = harmonic_field(grid, 1.1);
    const PropagatorKey key(grid, field, 0.02, 20);
    std::vector<std::shared_ptr<const PropagatorMatrix>> results(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] { results[t] = db.lookup_or_build(key, field, grid); });
    }
    for (auto& worker : pool) {
        worker.join();
    }
    CHECK(db.build_count() == 1);
    for (int t = 1; t < 4; ++t) {
        CHECK(results[t].get() == results[0].get());
    }
}

TEST_CASE("amortized apply beats repeated evolve once the matrix exists") {
    // informational speedup check: steps = N, measured over N states
    const Grid grid(6);
    const std::size_t n = grid.points();
    const PotentialField field = harmonic_field(grid, 1.0);
    const std::size_t steps = n;
    const PropagatorKey key(grid, field, 0.01, steps);
    const PropagatorMatrix matrix = build_propagator(key, field, grid);

    auto rng = test::seeded_rng(83);
    std::vector<GridWaveFunction> states;
    states.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        states.push_back(random_wave(rng, grid));
    }

    const auto t0 = std::chrono::steady_clock::now();
    double sink = 0.0;
    for (const auto& psi : states) {
        sink += apply(matrix, psi).norm();
    }
    const auto t1 = std::chrono::steady_clock::now();
    for (const auto& psi : states) {
        sink += evolve(psi, field, 0.01, steps).norm();
    }
    const auto t2 = std::chrono::steady_clock::now();
    CHECK(sink > 0.0);

    const auto apply_time = std::chrono::duration<double>(t1 - t0).count();
    const auto evolve_time = std::chrono::duration<double>(t2 - t1).count();
    MESSAGE("apply ", apply_time, "s vs evolve ", evolve_time, "s, ratio ",
            evolve_time / apply_time);
    CHECK(evolve_time / apply_time > 1.0);
}
