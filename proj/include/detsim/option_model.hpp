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

// Deterministic measurement without random numbers. Every measurement
// outcome is selected by an integer "option value" k in 1..L through a
// threshold partition of the option range: outcome j owns the options
// L_{j-1} < k <= L_j where L_j = floor(L * sum_{p<=j} |amp_p|^2). A
// uniform sweep over all option values reproduces the Born statistics of
// the state to accuracy ~1/L, while any fixed option gives the same
// outcome on every repetition.

#ifndef DETSIM_OPTION_MODEL_HPP
#define DETSIM_OPTION_MODEL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "detsim/common.hpp"
#include "detsim/errors.hpp"

namespace detsim {

/// Normalized vector of complex amplitudes. Renormalizes on construction
/// when the squared norm is within kNormTolerance of 1, rejects otherwise.
class StateVector {
  public:
    explicit StateVector(std::vector<std::complex<double>> amplitudes);

    std::size_t dimension() const { return amplitudes_.size(); }
    const std::complex<double>& amplitude(std::size_t j) const { return amplitudes_[j]; }
    double probability(std::size_t j) const { return std::norm(amplitudes_[j]); }
    const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
    std::vector<double> probabilities() const;

  private:
    std::vector<std::complex<double>> amplitudes_;
};

/// Model parameters: N basic outcomes, L option values per outcome bin.
/// Accuracy is 1/L; the full option set has N*L pairs (j, k).
class DeterministicModel {
  public:
    DeterministicModel(std::size_t dimension, long volume);

    std::size_t dimension() const { return dimension_; }
    long volume() const { return volume_; }
    double accuracy() const { return 1.0 / static_cast<double>(volume_); }
    long total_options() const { return static_cast<long>(dimension_) * volume_; }

  private:
    std::size_t dimension_;
    long volume_;
};

/// One option value k, 1-based, valid for models with volume >= k.
class OptionValue {
  public:
    explicit OptionValue(long k);
    long value() const { return k_; }
    friend bool operator==(OptionValue a, OptionValue b) { return a.k_ == b.k_; }

  private:
    long k_;
};

/// The threshold partition of the option range 1..L into outcome bins.
/// Bin j is the half-open integer interval (L_{j-1}, L_j]; empty bins
/// belong to zero-probability outcomes and are never selected.
class OptionAssignment {
  public:
    OptionAssignment(long volume, std::span<const double> weights);

    std::size_t outcome_count() const { return thresholds_.size(); }
    long volume() const { return volume_; }
    /// Upper bin edge L_j (L_{-1} = 0 is implicit).
    long threshold(std::size_t j) const { return thresholds_[j]; }
    long bin_begin(std::size_t j) const { return j == 0 ? 0 : thresholds_[j - 1]; }
    long bin_width(std::size_t j) const { return thresholds_[j] - bin_begin(j); }

    /// The unique outcome whose bin contains the option.
    std::size_t outcome_for(OptionValue option) const;

    /// Rescales the option's position inside its bin back onto 1..L. This is
    /// the part of the option that survives the measurement and drives any
    /// subsequent measurement of the collapsed state.
    OptionValue residual_for(OptionValue option) const;

    /// Fraction of option values assigned to outcome j: (L_j - L_{j-1}) / L.
    double frequency(std::size_t j) const;

  private:
    long volume_;
    std::vector<long> thresholds_;
};

/// Builds the option partition for a state (the measurement "bins").
OptionAssignment partition_options(const DeterministicModel& model, const StateVector& state);

/// Deterministic measurement: same (state, option) always gives the same j.
std::size_t measure(const DeterministicModel& model, const StateVector& state, OptionValue option);

/// The per-option outcome relabeling between a state and its unitary image.
/// For each option k the pair (j, k) of the source partition maps to the
/// unique pair (j', k) of the evolved partition.
class OptionPermutation {
  public:
    OptionPermutation(std::vector<std::size_t> source, std::vector<std::size_t> target);

    long volume() const { return static_cast<long>(source_.size()); }
    std::size_t source_outcome(OptionValue option) const { return source_[option.value() - 1]; }
    std::size_t target_outcome(OptionValue option) const { return target_[option.value() - 1]; }

  private:
    std::vector<std::size_t> source_;
    std::vector<std::size_t> target_;
};

/// Relates the partitions of `source` and `evolved` = U source. The unitary
/// enters only through the evolved state.
OptionPermutation outcome_permutation(const DeterministicModel& model, const StateVector& evolved,
                                      const StateVector& source);

/// Per-outcome sweep frequencies; within 2/L of |amp_j|^2 per outcome and
/// within 1/L cumulatively.
std::vector<double> sweep_statistics(const DeterministicModel& model, const StateVector& state);

struct PartialMeasurement {
    std::size_t prefix;     // measured m-bit value x
    StateVector collapsed;  // amplitudes amp_{x*2^(n-m)+j} / d
    OptionValue residual;   // option for subsequent measurements
    double block_norm;      // d
};

/// Inexact measurement of the first `measured_bits` of an n-qubit register
/// (dimension 2^n). The prefix is selected by the coarse-grained partition
/// over the 2^m blocks; the block collapses and the residual option carries
/// the trailing option information.
PartialMeasurement partial_measure(const DeterministicModel& model, const StateVector& state,
                                   std::size_t measured_bits, OptionValue option);

struct ResolutionSplit {
    double coordinate_width;  // 2^-m
    double impulse_width;     // 2^-(n-m)
};

/// Bin widths of the n-bit coordinate/impulse encoding when m binary signs
/// of the coordinate are measured; the product is 2^-n for every split.
ResolutionSplit measurement_resolution(std::size_t total_bits, std::size_t measured_bits);

}  // namespace detsim

#endif
