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

#include "detsim/option_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace detsim {

namespace {

void check_same_dimension(const DeterministicModel& model, const StateVector& state) {
    if (state.dimension() != model.dimension()) {
        throw DimensionError("state dimension " + std::to_string(state.dimension()) +
                             " does not match model dimension " + std::to_string(model.dimension()));
    }
}

}  // namespace

StateVector::StateVector(std::vector<std::complex<double>> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw DimensionError("state vector must have at least one amplitude");
    }
    double sum = 0.0;
    for (const auto& a : amplitudes_) {
        sum += std::norm(a);
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        throw NormalizationError("state norm^2 = " + std::to_string(sum) +
                                 " is outside the normalization tolerance");
    }
    const double scale = 1.0 / std::sqrt(sum);
    for (auto& a : amplitudes_) {
        a *= scale;
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amplitudes_.size());
    for (std::size_t j = 0; j < amplitudes_.size(); ++j) {
        probs[j] = std::norm(amplitudes_[j]);
    }
    return probs;
}

DeterministicModel::DeterministicModel(std::size_t dimension, long volume)
    : dimension_(dimension), volume_(volume) {
    if (dimension_ < 1) {
        throw DimensionError("model dimension must be >= 1");
    }
    if (volume_ < 1) {
        throw CapError("option volume must be >= 1");
    }
}

OptionValue::OptionValue(long k) : k_(k) {
    if (k_ < 1) {
        throw CapError("option values are 1-based; got " + std::to_string(k_));
    }
}

OptionAssignment::OptionAssignment(long volume, std::span<const double> weights)
    : volume_(volume), thresholds_(weights.size()) {
    if (volume_ < 1) {
        throw CapError("option volume must be >= 1");
    }
    if (weights.empty()) {
        throw DimensionError("weight list must be nonempty");
    }
    double cumulative = 0.0;
    for (std::size_t j = 0; j + 1 < weights.size(); ++j) {
        cumulative += weights[j];
        const long edge = static_cast<long>(std::floor(static_cast<double>(volume_) * cumulative));
        const long previous = j == 0 ? 0 : thresholds_[j - 1];
        thresholds_[j] = std::clamp(edge, previous, volume_);
    }
    // The last edge absorbs all rounding so the bins always cover 1..L.
    thresholds_.back() = volume_;
}

std::size_t OptionAssignment::outcome_for(OptionValue option) const {
    const long k = option.value();
    if (k > volume_) {
        throw CapError("option value " + std::to_string(k) + " exceeds volume " +
                       std::to_string(volume_));
    }
    const auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), k);
    return static_cast<std::size_t>(it - thresholds_.begin());
}

OptionValue OptionAssignment::residual_for(OptionValue option) const {
    const std::size_t j = outcome_for(option);
    const long position = option.value() - bin_begin(j);  // 1..width
    const long width = bin_width(j);
    // ceil(position * L / width): the conditional option, uniform over 1..L
    // when the original options are swept uniformly over the bin.
    const long rescaled = (position * volume_ + width - 1) / width;
    return OptionValue(rescaled);
}

double OptionAssignment::frequency(std::size_t j) const {
    return static_cast<double>(bin_width(j)) / static_cast<double>(volume_);
}

OptionAssignment partition_options(const DeterministicModel& model, const StateVector& state) {
    check_same_dimension(model, state);
    return OptionAssignment(model.volume(), state.probabilities());
}

std::size_t measure(const DeterministicModel& model, const StateVector& state, OptionValue option) {
    return partition_options(model, state).outcome_for(option);
}

OptionPermutation::OptionPermutation(std::vector<std::size_t> source, std::vector<std::size_t> target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (source_.size() != target_.size()) {
        throw DimensionError("permutation source/target size mismatch");
    }
}

OptionPermutation outcome_permutation(const DeterministicModel& model, const StateVector& evolved,
                                      const StateVector& source) {
    const OptionAssignment before = partition_options(model, source);
    const OptionAssignment after = partition_options(model, evolved);
    const long volume = model.volume();
    std::vector<std::size_t> from(static_cast<std::size_t>(volume));
    std::vector<std::size_t> to(static_cast<std::size_t>(volume));
    for (long k = 1; k <= volume; ++k) {
        from[static_cast<std::size_t>(k - 1)] = before.outcome_for(OptionValue(k));
        to[static_cast<std::size_t>(k - 1)] = after.outcome_for(OptionValue(k));
    }
    return OptionPermutation(std::move(from), std::move(to));
}

std::vector<double> sweep_statistics(const DeterministicModel& model, const StateVector& state) {
    const OptionAssignment assignment = partition_options(model, state);
    std::vector<double> frequencies(assignment.outcome_count());
    for (std::size_t j = 0; j < frequencies.size(); ++j) {
        frequencies[j] = assignment.frequency(j);
    }
    return frequencies;
}

PartialMeasurement partial_measure(const DeterministicModel& model, const StateVector& state,
                                   std::size_t measured_bits, OptionValue option) {
    check_same_dimension(model, state);
    const std::size_t n = state.dimension();
    std::size_t qubits = 0;
    while ((std::size_t{1} << qubits) < n) {
        ++qubits;
    }
    if ((std::size_t{1} << qubits) != n) {
        throw DimensionError("partial measurement requires dimension 2^n");
    }
    if (measured_bits < 1 || measured_bits >= qubits) {
        throw DimensionError("measured bit count must satisfy 1 <= m < n");
    }

    const std::size_t blocks = std::size_t{1} << measured_bits;
    const std::size_t block_size = n >> measured_bits;
    std::vector<double> block_probs(blocks, 0.0);
    for (std::size_t x = 0; x < blocks; ++x) {
        for (std::size_t j = 0; j < block_size; ++j) {
            block_probs[x] += state.probability(x * block_size + j);
        }
    }

    const OptionAssignment coarse(model.volume(), block_probs);
    const std::size_t prefix = coarse.outcome_for(option);
    const OptionValue residual = coarse.residual_for(option);

    double block_norm_sq = 0.0;
    for (std::size_t j = 0; j < block_size; ++j) {
        block_norm_sq += state.probability(prefix * block_size + j);
    }
    if (!(block_norm_sq > 0.0)) {
        // Thresholds are built from the same block probabilities, so an empty
        // block has an empty bin and can never be selected.
        throw std::logic_error("partial measurement selected a zero-norm block");
    }
    const double block_norm = std::sqrt(block_norm_sq);

    std::vector<std::complex<double>> collapsed(block_size);
    for (std::size_t j = 0; j < block_size; ++j) {
        collapsed[j] = state.amplitude(prefix * block_size + j) / block_norm;
    }
    return PartialMeasurement{prefix, StateVector(std::move(collapsed)), residual, block_norm};
}

ResolutionSplit measurement_resolution(std::size_t total_bits, std::size_t measured_bits) {
    if (total_bits < 1 || measured_bits > total_bits) {
        throw DimensionError("measured bit count must satisfy 0 <= m <= n, n >= 1");
    }
    return ResolutionSplit{std::exp2(-static_cast<double>(measured_bits)),
                           std::exp2(-static_cast<double>(total_bits - measured_bits))};
}

}  // namespace detsim
