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

// Chain-assembly scenarios. An active system holds a coding chain and a
// growing chain tied together by bond descriptors; each step scatters a
// reservoir mixture on the assembly point, selects one outcome with the
// run's option value, and either extends the growing chain or aborts the
// run. Scenarios are scored by sweeping every option value and counting
// how often the resulting chain matches a sample.

#ifndef DETSIM_ASSEMBLY_HPP
#define DETSIM_ASSEMBLY_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "detsim/option_model.hpp"

namespace detsim {

inline constexpr std::size_t kDefaultMaxAssemblySteps = 64;

struct Letter {
    std::string name;
    bool assembly_element;  // member of the assembly subset
};

/// Finite alphabet with a flagged assembly subset.
class Alphabet {
  public:
    std::size_t add(std::string name, bool assembly_element);
    std::size_t id_of(const std::string& name) const;
    bool has(const std::string& name) const;
    const Letter& letter(std::size_t id) const { return letters_[id]; }
    std::size_t size() const { return letters_.size(); }
    std::size_t assembly_count() const;

  private:
    std::vector<Letter> letters_;
    std::map<std::string, std::size_t> index_;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct ChainUnit {
    std::size_t element;
    Vec3 offset;  // relative to the previous unit's frame; inert payload
};

using Chain = std::vector<ChainUnit>;

/// Space-separated letter names of a chain.
std::string chain_letters(const Alphabet& alphabet, const Chain& chain);

bool same_letters(const Chain& a, const Chain& b);
bool same_letters_and_coordinates(const Chain& a, const Chain& b);

enum class BondKind { covalent, hydrogen };

const char* bond_name(BondKind kind);

struct BondDescriptor {
    BondKind kind;
};

struct BondEndpoints {
    std::size_t coding_position;   // 1-based: s - j + 1
    std::size_t growing_position;  // 1-based: m - j + 1
};

/// Coding chain + growing chain + alignment index + bond descriptors.
/// Descriptor j (1-based) ties coding position s-j+1 to growing position
/// m-j+1; descriptor 1 is the terminal bond at the assembly point.
class ActiveSystem {
  public:
    ActiveSystem(Chain coding, Chain growing, std::size_t alignment,
                 std::vector<BondDescriptor> bonds);

    const Chain& coding() const { return coding_; }
    const Chain& growing() const { return growing_; }
    std::size_t alignment() const { return alignment_; }
    const std::vector<BondDescriptor>& bonds() const { return bonds_; }
    const BondDescriptor& terminal_bond() const { return bonds_.front(); }
    BondEndpoints bond_endpoints(std::size_t j) const;

  private:
    Chain coding_;
    Chain growing_;
    std::size_t alignment_;
    std::vector<BondDescriptor> bonds_;  // bonds_[0] is descriptor 1
};

struct ReservoirEntry {
    std::size_t element;
    std::string state;  // internal-state label
    double weight;
};

/// Weighted reservoir preparation; weights nonnegative, normalized.
class ReservoirSpec {
  public:
    explicit ReservoirSpec(std::vector<ReservoirEntry> entries);

    const std::vector<ReservoirEntry>& entries() const { return entries_; }
    /// Canonical serialization used as a cache key component.
    std::string cache_token() const;

  private:
    std::vector<ReservoirEntry> entries_;
};

/// Per-step reservoir program, at most max_steps long.
class Scenario {
  public:
    explicit Scenario(std::vector<ReservoirSpec> steps,
                      std::size_t max_steps = kDefaultMaxAssemblySteps);

    std::size_t size() const { return steps_.size(); }
    const ReservoirSpec& step(std::size_t i) const { return steps_[i]; }
    const std::vector<ReservoirSpec>& steps() const { return steps_; }

  private:
    std::vector<ReservoirSpec> steps_;
};

/// An admitted attachment: the incoming element joins the growing chain
/// with a mandatory covalent bond; the bond to the coding chain is covalent
/// or hydrogen and becomes the new terminal descriptor.
struct Attachment {
    std::size_t element;
    BondKind coding_bond;
    Vec3 offset;
    friend bool operator==(const Attachment&, const Attachment&) = default;
};

struct Outcome {
    std::optional<Attachment> attachment;  // empty = not admitted
    bool admitted() const { return attachment.has_value(); }
    friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct WeightedOutcome {
    Outcome outcome;
    double weight;
};

/// Finite weighted outcome list of one scattering event; normalized.
class OutcomeDistribution {
  public:
    explicit OutcomeDistribution(std::vector<WeightedOutcome> outcomes);

    std::size_t size() const { return outcomes_.size(); }
    const Outcome& outcome(std::size_t i) const { return outcomes_[i].outcome; }
    double weight(std::size_t i) const { return outcomes_[i].weight; }
    std::vector<double> weights() const;

  private:
    std::vector<WeightedOutcome> outcomes_;
};

/// What the scattering operator sees at the assembly point: the terminal
/// bond descriptor and the elements at the aligned coding / terminal
/// growing positions.
struct ReactionContext {
    BondKind terminal_bond;
    std::size_t coding_element;
    std::size_t growing_element;
    friend auto operator<=>(const ReactionContext&, const ReactionContext&) = default;
};

ReactionContext context_of(const ActiveSystem& active);

struct ReactionKey {
    ReactionContext context;
    std::size_t incoming_element;
    std::string incoming_state;
    friend auto operator<=>(const ReactionKey&, const ReactionKey&) = default;
};

/// Precomputed outcomes of elementary scatterings, exact-match contexts.
class ScatteringTable {
  public:
    void add(ReactionKey key, OutcomeDistribution distribution);
    bool contains(const ReactionKey& key) const;
    const OutcomeDistribution& find(const ReactionKey& key) const;
    const std::map<ReactionKey, OutcomeDistribution>& reactions() const { return reactions_; }

  private:
    std::map<ReactionKey, OutcomeDistribution> reactions_;
};

/// Classical mixture of the per-entry outcome distributions, weighted by
/// the reservoir probabilities and renormalized. Deterministic order:
/// reservoir entries first, table outcome order inside each entry.
OutcomeDistribution scatter(const ScatteringTable& table, const ActiveSystem& active,
                            const ReservoirSpec& reservoir);

/// Threshold selection over the outcome weights; same (distribution,
/// option) always selects the same outcome.
std::size_t select_outcome(const OutcomeDistribution& distribution, OptionValue option, long volume);

/// Applies an admitted outcome: the growing chain gains one unit, the
/// attachment bond becomes descriptor 1, alignment advances.
ActiveSystem assembly_step(const ActiveSystem& active, const Outcome& outcome);

struct AssemblyResult {
    std::optional<Chain> chain;     // final growing chain on success
    std::size_t failed_step = 0;    // 1-based step of the failure
    std::string reason;

    bool success() const { return chain.has_value(); }
    friend bool operator==(const AssemblyResult&, const AssemblyResult&) = default;
};

/// Two-layer memo for assembly runs. Scattering mixtures are stored per
/// (context, reservoir) and shared across option values; selected outcomes
/// and the post-selection residual are stored per (context, reservoir,
/// option). Concurrent readers are safe; first writes are serialized per
/// key so each mixture is computed exactly once. A cache is only valid
/// across runs of the same (scenario, initial, table).
class ScatterCache {
  public:
    template <typename Factory>
    std::shared_ptr<const OutcomeDistribution> distribution(const std::string& key,
                                                            Factory&& compute) {
        std::lock_guard lock(mutex_);
        auto it = distributions_.find(key);
        if (it == distributions_.end()) {
            it = distributions_
                     .emplace(key, std::make_shared<const OutcomeDistribution>(compute()))
                     .first;
            ++computations_;
        }
        return it->second;
    }

    struct Selection {
        std::size_t outcome_index;
        long residual_option;
    };
    std::optional<Selection> selection(const std::string& key, long option) const;
    Selection store_selection(const std::string& key, long option, Selection selection);

    std::size_t distribution_computations() const;

  private:
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const OutcomeDistribution>> distributions_;
    std::map<std::pair<std::string, long>, Selection> selections_;
    std::size_t computations_ = 0;
};

/// Runs one assembly pass under a fixed option value. Repeated scatterings
/// of identical (context, reservoir) states within the run reuse the first
/// selection; fresh measurements consume option information by replacing
/// the option with its in-bin residual.
AssemblyResult run_assembly(const Scenario& scenario, OptionValue option,
                            const ActiveSystem& initial, const ScatteringTable& table, long volume,
                            ScatterCache& cache);

enum class ChainMatch { letters, letters_and_coordinates };

struct ScenarioReport {
    double lucky_fraction = 0.0;
    double impossible_fraction = 0.0;
    /// result-chain letters -> fraction, plus one bucket per distinct chain.
    std::vector<std::pair<std::string, double>> histogram;
    std::vector<AssemblyResult> per_option;  // index k-1
};

/// Exhaustive option sweep k = 1..L; embarrassingly parallel across option
/// values with deterministic aggregation.
ScenarioReport evaluate_scenario(const Scenario& scenario, const Chain& sample,
                                 const ActiveSystem& initial, const ScatteringTable& table,
                                 const Alphabet& alphabet, long volume,
                                 ChainMatch match = ChainMatch::letters, unsigned jobs = 1);

struct RankedScenario {
    std::size_t input_index;
    ScenarioReport report;
    bool successful;
};

/// Reports sorted by lucky fraction descending, ties by lower impossible
/// fraction, then input order (stable).
std::vector<RankedScenario> compare_scenarios(const std::vector<Scenario>& scenarios,
                                              const Chain& sample, const ActiveSystem& initial,
                                              const ScatteringTable& table, const Alphabet& alphabet,
                                              long volume, double threshold,
                                              ChainMatch match = ChainMatch::letters,
                                              unsigned jobs = 1);

/// Per-step reservoirs for a pulse sequence over a two-element pair: the
/// pulsed element gets weight bias/(bias+1), the other 1/(bias+1), so the
/// per-step attachment probability ratio is exactly `bias`.
Scenario photon_scenario(const std::vector<std::size_t>& pulses,
                         std::pair<std::size_t, std::size_t> elements, double bias,
                         const std::string& state_label,
                         std::size_t max_steps = kDefaultMaxAssemblySteps);

}  // namespace detsim

#endif
