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

#include <cmath>
#include <set>

#include "detsim/option_model.hpp"
#include "test_helpers.hpp"

using namespace detsim;
using test::random_state;
using test::state_with_probs;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector equal_pair() {
    return StateVector({{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}});
}

}  // namespace

TEST_CASE("state vector normalizes within tolerance and rejects beyond") {
    const StateVector s({{0.6, 0.0}, {0.0, 0.8}});
    CHECK(s.probability(0) == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(s.probability(1) == doctest::Approx(0.64).epsilon(1e-12));
    CHECK_THROWS_AS(StateVector({{0.6, 0.0}, {0.0, 0.9}}), NormalizationError);
    CHECK_THROWS_AS(StateVector(std::vector<std::complex<double>>{}), DimensionError);
}

TEST_CASE("model accuracy and volume") {
    const DeterministicModel model(4, 1000);
    CHECK(model.accuracy() == doctest::Approx(1e-3));
    CHECK(model.total_options() == 4000);
    CHECK_THROWS_AS(DeterministicModel(0, 10), DimensionError);
    CHECK_THROWS_AS(DeterministicModel(2, 0), CapError);
    CHECK_THROWS_AS(OptionValue(0), CapError);
}

TEST_CASE("partition thresholds: certainty case") {
    const DeterministicModel model(2, 10);
    const StateVector sure({{1.0, 0.0}, {0.0, 0.0}});
    const OptionAssignment bins = partition_options(model, sure);
    CHECK(bins.threshold(0) == 10);
    CHECK(bins.threshold(1) == 10);
    for (long k = 1; k <= 10; ++k) {
        CHECK(bins.outcome_for(OptionValue(k)) == 0);
    }
}

TEST_CASE("partition thresholds: equal superposition splits 5/5") {
    const DeterministicModel model(2, 10);
    const OptionAssignment bins = partition_options(model, equal_pair());
    CHECK(bins.threshold(0) == 5);
    CHECK(bins.threshold(1) == 10);
}

TEST_CASE("partition thresholds from weights (0.2, 0.3, 0.5)") {
    const std::vector<double> weights{0.2, 0.3, 0.5};
    const OptionAssignment bins(10, weights);
    CHECK(bins.threshold(0) == 2);
    CHECK(bins.threshold(1) == 5);
    CHECK(bins.threshold(2) == 10);
    // bins {1,2}, {3,4,5}, {6..10}
    CHECK(bins.outcome_for(OptionValue(2)) == 0);
    CHECK(bins.outcome_for(OptionValue(3)) == 1);
    CHECK(bins.outcome_for(OptionValue(5)) == 1);
    CHECK(bins.outcome_for(OptionValue(6)) == 2);
}

TEST_CASE("partition thresholds from a three-outcome state") {
    const DeterministicModel model(3, 10);
    const OptionAssignment bins = partition_options(model, state_with_probs({0.2, 0.3, 0.5}));
    CHECK(bins.threshold(0) == 2);
    CHECK(bins.threshold(1) == 5);
    CHECK(bins.threshold(2) == 10);
}

TEST_CASE("measure: threshold arithmetic") {
    const DeterministicModel model(2, 10);
    const StateVector s = state_with_probs({0.2, 0.8});
    CHECK(measure(model, s, OptionValue(3)) == 1);
    CHECK(measure(model, s, OptionValue(2)) == 0);

    const StateVector sure({{1.0, 0.0}, {0.0, 0.0}});
    for (long k : {1L, 4L, 10L}) {
        CHECK(measure(model, sure, OptionValue(k)) == 0);
    }

    CHECK(measure(model, equal_pair(), OptionValue(5)) == 0);
    CHECK(measure(model, equal_pair(), OptionValue(6)) == 1);
}

TEST_CASE("measure rejects mismatched dimensions and oversized options") {
    const DeterministicModel model(3, 10);
    CHECK_THROWS_AS(measure(model, equal_pair(), OptionValue(1)), DimensionError);
    const DeterministicModel pair_model(2, 10);
    CHECK_THROWS_AS(measure(pair_model, equal_pair(), OptionValue(11)), CapError);
}

TEST_CASE("measure is deterministic over repeated calls") {
    const DeterministicModel model(4, 1000);
    auto rng = test::seeded_rng(11);
    const StateVector state = random_state(rng, 4);
    const OptionValue option(737);
    const std::size_t first = measure(model, state, option);
    for (int repeat = 0; repeat < 10000; ++repeat) {
        CHECK(measure(model, state, option) == first);
    }
}

TEST_CASE("permutation: bit flip moves every option, identity fixes them") {
    const DeterministicModel model(2, 10);
    const StateVector zero({{1.0, 0.0}, {0.0, 0.0}});
    const StateVector one({{0.0, 0.0}, {1.0, 0.0}});
    const OptionPermutation flip = outcome_permutation(model, one, zero);
    const OptionPermutation same = outcome_permutation(model, zero, zero);
    for (long k = 1; k <= 10; ++k) {
        CHECK(flip.source_outcome(OptionValue(k)) == 0);
        CHECK(flip.target_outcome(OptionValue(k)) == 1);
        CHECK(same.source_outcome(OptionValue(k)) == same.target_outcome(OptionValue(k)));
    }
}

TEST_CASE("permutation: computed example, options 3..5 move from 0 to 1") {
    // Independent oracle: enumerate all 10 options against both partitions.
    const DeterministicModel model(2, 10);
    const StateVector source = equal_pair();
    const StateVector evolved = state_with_probs({0.2, 0.8});
    const OptionAssignment before = partition_options(model, source);
    const OptionAssignment after = partition_options(model, evolved);
    std::set<long> moved_oracle;
    for (long k = 1; k <= 10; ++k) {
        if (before.outcome_for(OptionValue(k)) != after.outcome_for(OptionValue(k))) {
            moved_oracle.insert(k);
        }
    }
    CHECK(moved_oracle == std::set<long>{3, 4, 5});

    const OptionPermutation perm = outcome_permutation(model, evolved, source);
    for (long k = 1; k <= 10; ++k) {
        const bool moves = perm.source_outcome(OptionValue(k)) != perm.target_outcome(OptionValue(k));
        CHECK(moves == moved_oracle.contains(k));
        if (moves) {
            CHECK(perm.source_outcome(OptionValue(k)) == 0);
            CHECK(perm.target_outcome(OptionValue(k)) == 1);
        }
    }
}

TEST_CASE("permutation correctness for random states and unitaries") {
    auto rng = test::seeded_rng(42);
    for (std::size_t n : {2, 4}) {
        const DeterministicModel model(n, 100);
        for (int trial = 0; trial < 25; ++trial) {
            const StateVector source = random_state(rng, n);
            const StateVector evolved = test::apply_unitary(test::random_unitary(rng, n), source);
            const OptionPermutation perm = outcome_permutation(model, evolved, source);
            const OptionAssignment before = partition_options(model, source);
            const OptionAssignment after = partition_options(model, evolved);
            std::set<std::pair<std::size_t, long>> mapped, target;
            for (long k = 1; k <= 100; ++k) {
                CHECK(perm.source_outcome(OptionValue(k)) == before.outcome_for(OptionValue(k)));
                mapped.insert({perm.target_outcome(OptionValue(k)), k});
                target.insert({after.outcome_for(OptionValue(k)), k});
            }
            CHECK(mapped == target);
        }
    }
}

TEST_CASE("sweep statistics match stated fractions") {
    const DeterministicModel model2(2, 10);
    const auto equal_freq = sweep_statistics(model2, equal_pair());
    CHECK(equal_freq[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(equal_freq[1] == doctest::Approx(0.5).epsilon(1e-15));

    const DeterministicModel model3(3, 10);
    const auto three = sweep_statistics(model3, state_with_probs({0.2, 0.3, 0.5}));
    CHECK(three[0] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(three[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(three[2] == doctest::Approx(0.5).epsilon(1e-15));

    const auto thirds = sweep_statistics(model2, state_with_probs({1.0 / 3.0, 2.0 / 3.0}));
    CHECK(thirds[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(thirds[1] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(std::abs(thirds[0] - 1.0 / 3.0) <= 2.0 / 10.0);
}

TEST_CASE("born statistics bound over random states") {
    auto rng = test::seeded_rng(7);
    const long volume = 1000;
    const DeterministicModel model(4, volume);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector state = random_state(rng, 4);
        const auto freq = sweep_statistics(model, state);
        double cumulative_freq = 0.0;
        double cumulative_prob = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(std::abs(freq[j] - state.probability(j)) <= 2.0 / volume);
            cumulative_freq += freq[j];
            cumulative_prob += state.probability(j);
            CHECK(std::abs(cumulative_freq - cumulative_prob) <= 1.0 / volume + 1e-12);
        }
    }
}

TEST_CASE("every option belongs to exactly one outcome") {
    auto rng = test::seeded_rng(3);
    const DeterministicModel model(5, 97);
    for (int trial = 0; trial < 20; ++trial) {
        const OptionAssignment bins = partition_options(model, random_state(rng, 5));
        long total = 0;
        for (std::size_t j = 0; j < bins.outcome_count(); ++j) {
            CHECK(bins.bin_width(j) >= 0);
            total += bins.bin_width(j);
        }
        CHECK(total == 97);
        for (long k = 1; k <= 97; ++k) {
            const std::size_t j = bins.outcome_for(OptionValue(k));
            CHECK(bins.bin_begin(j) < k);
            CHECK(k <= bins.threshold(j));
        }
    }
}

TEST_CASE("zero-probability outcomes have empty bins and never fire") {
    const DeterministicModel model(3, 10);
    const StateVector state({{kInvSqrt2, 0.0}, {0.0, 0.0}, {0.0, kInvSqrt2}});
    const OptionAssignment bins = partition_options(model, state);
    CHECK(bins.bin_width(1) == 0);
    for (long k = 1; k <= 10; ++k) {
        CHECK(bins.outcome_for(OptionValue(k)) != 1);
    }
}

TEST_CASE("partial measurement: uniform two-qubit state") {
    const DeterministicModel model(4, 1000);
    const StateVector uniform({{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}});
    const PartialMeasurement pm = partial_measure(model, uniform, 1, OptionValue(200));
    CHECK(pm.prefix == 0);
    CHECK(pm.block_norm == doctest::Approx(kInvSqrt2).epsilon(1e-12));
    CHECK(pm.collapsed.probability(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pm.collapsed.probability(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial measurement: single nonzero block is certain") {
    const DeterministicModel model(4, 1000);
    const StateVector state({{0.0, 0.0}, {0.0, 0.0}, {0.6, 0.0}, {0.0, 0.8}});
    for (long k : {1L, 500L, 1000L}) {
        const PartialMeasurement pm = partial_measure(model, state, 1, OptionValue(k));
        CHECK(pm.prefix == 1);
        CHECK(pm.collapsed.probability(0) == doctest::Approx(0.36).epsilon(1e-12));
        CHECK(pm.collapsed.probability(1) == doctest::Approx(0.64).epsilon(1e-12));
    }
}

TEST_CASE("partial measurement: collapse of the x=1 block") {
    // Direct formula: block probabilities (0.3, 0.7); the x = 1 collapse has
    // |amp|^2 = (3/7, 4/7). Cross-checked against the full-measurement
    // marginal below.
    const DeterministicModel model(4, 1000);
    const StateVector state = state_with_probs({0.1, 0.2, 0.3, 0.4});
    const PartialMeasurement pm = partial_measure(model, state, 1, OptionValue(1000));
    CHECK(pm.prefix == 1);
    CHECK(pm.collapsed.probability(0) == doctest::Approx(3.0 / 7.0).epsilon(1e-9));
    CHECK(pm.collapsed.probability(1) == doctest::Approx(4.0 / 7.0).epsilon(1e-9));

    // Marginal oracle: sweep the full measurement and bucket by prefix bit.
    long direct_block1 = 0;
    long partial_block1 = 0;
    for (long k = 1; k <= 1000; ++k) {
        direct_block1 += measure(model, state, OptionValue(k)) >= 2 ? 1 : 0;
        partial_block1 += partial_measure(model, state, 1, OptionValue(k)).prefix == 1 ? 1 : 0;
    }
    CHECK(direct_block1 == partial_block1);
}

TEST_CASE("partial measurement composes to full-measurement statistics") {
    const long volume = 1000;
    const DeterministicModel full(8, volume);
    auto rng = test::seeded_rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const StateVector state = random_state(rng, 8);
        for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
            const DeterministicModel collapsed_model(8 >> m, volume);
            std::vector<long> direct(8, 0), composed(8, 0);
            for (long k = 1; k <= volume; ++k) {
                direct[measure(full, state, OptionValue(k))]++;
                const PartialMeasurement pm = partial_measure(full, state, m, OptionValue(k));
                const std::size_t suffix = measure(collapsed_model, pm.collapsed, pm.residual);
                composed[pm.prefix * (8 >> m) + suffix]++;
            }
            for (std::size_t j = 0; j < 8; ++j) {
                CHECK(std::abs(direct[j] - composed[j]) <= 4);
            }
        }
    }
}

TEST_CASE("partial measurement validates its inputs") {
    const DeterministicModel model(4, 100);
    const StateVector state({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
    CHECK_THROWS_AS(partial_measure(model, state, 0, OptionValue(1)), DimensionError);
    CHECK_THROWS_AS(partial_measure(model, state, 2, OptionValue(1)), DimensionError);
    const DeterministicModel model3(3, 100);
    const StateVector state3({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
    CHECK_THROWS_AS(partial_measure(model3, state3, 1, OptionValue(1)), DimensionError);
}

TEST_CASE("residual options stay uniform under refinement") {
    // Sweeping k over a bin must spread the residuals evenly over 1..L.
    const OptionAssignment bins(10, std::vector<double>{0.5, 0.5});
    std::set<long> residuals;
    for (long k = 1; k <= 5; ++k) {
        const OptionValue r = bins.residual_for(OptionValue(k));
        CHECK(r.value() >= 1);
        CHECK(r.value() <= 10);
        residuals.insert(r.value());
    }
    CHECK(residuals == std::set<long>{2, 4, 6, 8, 10});
}

TEST_CASE("uncertainty product is 2^-n for every split") {
    for (std::size_t n : {3, 8, 16}) {
        for (std::size_t m = 0; m <= n; ++m) {
            const ResolutionSplit split = measurement_resolution(n, m);
            CHECK(split.coordinate_width * split.impulse_width ==
                  doctest::Approx(std::exp2(-static_cast<double>(n))).epsilon(1e-15));
        }
    }
    CHECK(measurement_resolution(8, 3).coordinate_width == doctest::Approx(0.125));
    CHECK_THROWS_AS(measurement_resolution(4, 5), DimensionError);
}
