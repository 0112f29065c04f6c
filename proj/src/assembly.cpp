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

#include "detsim/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "detsim/digest.hpp"

namespace detsim {

namespace {

std::string context_token(const ReactionContext& context) {
    std::ostringstream out;
    out << "ctx|" << bond_name(context.terminal_bond) << ':' << context.coding_element << ':'
        << context.growing_element;
    return out.str();
}

}  // namespace

std::size_t Alphabet::add(std::string name, bool assembly_element) {
    if (name.empty()) {
        throw Error("letter names must be nonempty");
    }
    if (index_.contains(name)) {
        throw Error("duplicate letter '" + name + "'");
    }
    const std::size_t id = letters_.size();
    index_.emplace(name, id);
    letters_.push_back(Letter{std::move(name), assembly_element});
    return id;
}

std::size_t Alphabet::id_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw Error("unknown letter '" + name + "'");
    }
    return it->second;
}

bool Alphabet::has(const std::string& name) const {
    return index_.contains(name);
}

std::size_t Alphabet::assembly_count() const {
    std::size_t count = 0;
    for (const auto& letter : letters_) {
        count += letter.assembly_element ? 1 : 0;
    }
    return count;
}

std::string chain_letters(const Alphabet& alphabet, const Chain& chain) {
    std::string out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += alphabet.letter(chain[i].element).name;
    }
    return out;
}

bool same_letters(const Chain& a, const Chain& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].element != b[i].element) {
            return false;
        }
    }
    return true;
}

bool same_letters_and_coordinates(const Chain& a, const Chain& b) {
    if (!same_letters(a, b)) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i].offset == b[i].offset)) {
            return false;
        }
    }
    return true;
}

const char* bond_name(BondKind kind) {
    return kind == BondKind::covalent ? "covalent" : "hydrogen";
}

ActiveSystem::ActiveSystem(Chain coding, Chain growing, std::size_t alignment,
                           std::vector<BondDescriptor> bonds)
    : coding_(std::move(coding)),
      growing_(std::move(growing)),
      alignment_(alignment),
      bonds_(std::move(bonds)) {
    if (coding_.empty() || growing_.empty()) {
        throw DimensionError("coding and growing chains must be nonempty");
    }
    if (bonds_.empty()) {
        throw DimensionError("an active system needs at least one bond descriptor");
    }
    if (alignment_ < 1 || alignment_ > coding_.size()) {
        throw DimensionError("alignment index must be in 1..coding length");
    }
    if (bonds_.size() > alignment_ || bonds_.size() > growing_.size()) {
        throw DimensionError("bond descriptors must fit both chains");
    }
}

BondEndpoints ActiveSystem::bond_endpoints(std::size_t j) const {
    if (j < 1 || j > bonds_.size()) {
        throw DimensionError("bond descriptor index out of range");
    }
    return BondEndpoints{alignment_ - j + 1, growing_.size() - j + 1};
}

ReservoirSpec::ReservoirSpec(std::vector<ReservoirEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw DimensionError("reservoir needs at least one entry");
    }
    double sum = 0.0;
    for (const auto& entry : entries_) {
        if (entry.weight < 0.0) {
            throw NormalizationError("reservoir weights must be nonnegative");
        }
        sum += entry.weight;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        throw NormalizationError("reservoir weights must sum to 1");
    }
    for (auto& entry : entries_) {
        entry.weight /= sum;
    }
}

std::string ReservoirSpec::cache_token() const {
    std::ostringstream out;
    out << "res";
    for (const auto& entry : entries_) {
        out << '|' << entry.element << ':' << entry.state << ':' << format_full(entry.weight);
    }
    return out.str();
}

Scenario::Scenario(std::vector<ReservoirSpec> steps, std::size_t max_steps)
    : steps_(std::move(steps)) {
    if (steps_.empty()) {
        throw DimensionError("a scenario needs at least one step");
    }
    if (steps_.size() > max_steps) {
        throw CapError("scenario has " + std::to_string(steps_.size()) + " steps, cap is " +
                       std::to_string(max_steps));
    }
}

OutcomeDistribution::OutcomeDistribution(std::vector<WeightedOutcome> outcomes)
    : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        throw DimensionError("an outcome distribution needs at least one outcome");
    }
    double sum = 0.0;
    for (const auto& weighted : outcomes_) {
        if (weighted.weight < 0.0) {
            throw NormalizationError("outcome weights must be nonnegative");
        }
        sum += weighted.weight;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        throw NormalizationError("outcome weights must sum to 1");
    }
    for (auto& weighted : outcomes_) {
        weighted.weight /= sum;
    }
}

std::vector<double> OutcomeDistribution::weights() const {
    std::vector<double> out(outcomes_.size());
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        out[i] = outcomes_[i].weight;
    }
    return out;
}

ReactionContext context_of(const ActiveSystem& active) {
    return ReactionContext{active.terminal_bond().kind,
                           active.coding()[active.alignment() - 1].element,
                           active.growing().back().element};
}

void ScatteringTable::add(ReactionKey key, OutcomeDistribution distribution) {
    if (reactions_.contains(key)) {
        throw Error("duplicate reaction entry");
    }
    reactions_.emplace(std::move(key), std::move(distribution));
}

bool ScatteringTable::contains(const ReactionKey& key) const {
    return reactions_.contains(key);
}

const OutcomeDistribution& ScatteringTable::find(const ReactionKey& key) const {
    auto it = reactions_.find(key);
    if (it == reactions_.end()) {
        throw UnknownReactionError("no reaction for (" + std::string(bond_name(key.context.terminal_bond)) +
                                   ", coding " + std::to_string(key.context.coding_element) +
                                   ", growing " + std::to_string(key.context.growing_element) +
                                   ", incoming " + std::to_string(key.incoming_element) + " '" +
                                   key.incoming_state + "')");
    }
    return it->second;
}

OutcomeDistribution scatter(const ScatteringTable& table, const ActiveSystem& active,
                            const ReservoirSpec& reservoir) {
    const ReactionContext context = context_of(active);
    std::vector<WeightedOutcome> mixture;
    for (const auto& entry : reservoir.entries()) {
        const OutcomeDistribution& channel =
            table.find(ReactionKey{context, entry.element, entry.state});
        for (std::size_t i = 0; i < channel.size(); ++i) {
            const Outcome& outcome = channel.outcome(i);
            const double weight = entry.weight * channel.weight(i);
            // Equal outcomes from different entries pool their weight; the
            // order of first appearance fixes the bin order.
            auto existing = std::find_if(mixture.begin(), mixture.end(),
                                         [&](const WeightedOutcome& w) { return w.outcome == outcome; });
            if (existing == mixture.end()) {
                mixture.push_back(WeightedOutcome{outcome, weight});
            } else {
                existing->weight += weight;
            }
        }
    }
    return OutcomeDistribution(std::move(mixture));
}

std::size_t select_outcome(const OutcomeDistribution& distribution, OptionValue option,
                           long volume) {
    const OptionAssignment assignment(volume, distribution.weights());
    return assignment.outcome_for(option);
}

ActiveSystem assembly_step(const ActiveSystem& active, const Outcome& outcome) {
    if (!outcome.admitted()) {
        throw std::logic_error("assembly_step requires an admitted outcome");
    }
    const Attachment& attachment = *outcome.attachment;
    Chain growing = active.growing();
    growing.push_back(ChainUnit{attachment.element, attachment.offset});
    std::vector<BondDescriptor> bonds;
    bonds.reserve(active.bonds().size() + 1);
    bonds.push_back(BondDescriptor{attachment.coding_bond});
    bonds.insert(bonds.end(), active.bonds().begin(), active.bonds().end());
    return ActiveSystem(active.coding(), std::move(growing), active.alignment() + 1,
                        std::move(bonds));
}

std::optional<ScatterCache::Selection> ScatterCache::selection(const std::string& key,
                                                               long option) const {
    std::lock_guard lock(mutex_);
    auto it = selections_.find({key, option});
    if (it == selections_.end()) {
        return std::nullopt;
    }
    return it->second;
}

ScatterCache::Selection ScatterCache::store_selection(const std::string& key, long option,
                                                      Selection selection) {
    std::lock_guard lock(mutex_);
    return selections_.emplace(std::make_pair(key, option), selection).first->second;
}

std::size_t ScatterCache::distribution_computations() const {
    std::lock_guard lock(mutex_);
    return computations_;
}

AssemblyResult run_assembly(const Scenario& scenario, OptionValue option,
                            const ActiveSystem& initial, const ScatteringTable& table, long volume,
                            ScatterCache& cache) {
    if (volume < 1) {
        throw CapError("option volume must be >= 1");
    }
    if (option.value() > volume) {
        throw CapError("option value exceeds the volume");
    }
    if (initial.alignment() + scenario.size() > initial.coding().size()) {
        throw DimensionError("coding chain is too short for the scenario");
    }

    ActiveSystem current = initial;
    long current_option = option.value();
    std::set<std::string> measured;  // states already measured within this run

    for (std::size_t i = 0; i < scenario.size(); ++i) {
        const ReservoirSpec& reservoir = scenario.step(i);
        const std::string token = context_token(context_of(current)) + "||" + reservoir.cache_token();
        const auto distribution = cache.distribution(
            token, [&] { return scatter(table, current, reservoir); });

        const bool first_encounter = measured.insert(token).second;
        ScatterCache::Selection selected{};
        if (auto hit = cache.selection(token, option.value()); hit.has_value()) {
            selected = *hit;
        } else {
            const OptionAssignment assignment(volume, distribution->weights());
            const OptionValue running(current_option);
            selected.outcome_index = assignment.outcome_for(running);
            selected.residual_option = assignment.residual_for(running).value();
            selected = cache.store_selection(token, option.value(), selected);
        }
        if (first_encounter) {
            // The measurement result replaces the consumed part of the
            // option; replayed measurements of an already-seen state do not
            // consume anything.
            current_option = selected.residual_option;
        }

        const Outcome& outcome = distribution->outcome(selected.outcome_index);
        if (!outcome.admitted()) {
            return AssemblyResult{std::nullopt, i + 1, "non-admitted outcome selected"};
        }
        current = assembly_step(current, outcome);
    }
    return AssemblyResult{current.growing(), 0, ""};
}

ScenarioReport evaluate_scenario(const Scenario& scenario, const Chain& sample,
                                 const ActiveSystem& initial, const ScatteringTable& table,
                                 const Alphabet& alphabet, long volume, ChainMatch match,
                                 unsigned jobs) {
    if (volume < 1) {
        throw CapError("option volume must be >= 1");
    }
    ScenarioReport report;
    report.per_option.resize(static_cast<std::size_t>(volume));

    ScatterCache cache;
    const auto run_range = [&](long begin, long end) {
        for (long k = begin; k < end; ++k) {
            report.per_option[static_cast<std::size_t>(k - 1)] =
                run_assembly(scenario, OptionValue(k), initial, table, volume, cache);
        }
    };

    if (jobs <= 1 || volume < 2) {
        run_range(1, volume + 1);
    } else {
        const unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(volume));
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(workers);
        const long chunk = (volume + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const long begin = 1 + static_cast<long>(w) * chunk;
            const long end = std::min<long>(volume + 1, begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    run_range(begin, end);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto& worker : pool) {
            worker.join();
        }
        for (const auto& failure : failures) {
            if (failure) {
                std::rethrow_exception(failure);
            }
        }
    }

    long lucky = 0;
    long impossible = 0;
    std::map<std::string, long> counts;
    for (const auto& result : report.per_option) {
        if (!result.success()) {
            ++impossible;
            continue;
        }
        ++counts[chain_letters(alphabet, *result.chain)];
        const bool matched = match == ChainMatch::letters
                                 ? same_letters(*result.chain, sample)
                                 : same_letters_and_coordinates(*result.chain, sample);
        lucky += matched ? 1 : 0;
    }
    report.lucky_fraction = static_cast<double>(lucky) / static_cast<double>(volume);
    report.impossible_fraction = static_cast<double>(impossible) / static_cast<double>(volume);
    report.histogram.assign(counts.begin(), counts.end());
    std::stable_sort(report.histogram.begin(), report.histogram.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (auto& bucket : report.histogram) {
        bucket.second /= static_cast<double>(volume);
    }
    return report;
}

std::vector<RankedScenario> compare_scenarios(const std::vector<Scenario>& scenarios,
                                              const Chain& sample, const ActiveSystem& initial,
                                              const ScatteringTable& table, const Alphabet& alphabet,
                                              long volume, double threshold, ChainMatch match,
                                              unsigned jobs) {
    if (scenarios.empty()) {
        throw DimensionError("compare needs at least one scenario");
    }
    std::vector<RankedScenario> ranked;
    ranked.reserve(scenarios.size());
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        ScenarioReport report =
            evaluate_scenario(scenarios[i], sample, initial, table, alphabet, volume, match, jobs);
        const bool successful = report.lucky_fraction > threshold;
        ranked.push_back(RankedScenario{i, std::move(report), successful});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const RankedScenario& a, const RankedScenario& b) {
        if (a.report.lucky_fraction != b.report.lucky_fraction) {
            return a.report.lucky_fraction > b.report.lucky_fraction;
        }
        return a.report.impossible_fraction < b.report.impossible_fraction;
    });
    return ranked;
}

Scenario photon_scenario(const std::vector<std::size_t>& pulses,
                         std::pair<std::size_t, std::size_t> elements, double bias,
                         const std::string& state_label, std::size_t max_steps) {
    if (elements.first == elements.second) {
        throw DimensionError("photon scenarios need two distinct elements");
    }
    if (!(bias >= 1.0)) {
        throw CapError("photon bias must be >= 1");
    }
    if (pulses.empty()) {
        throw DimensionError("pulse sequence must be nonempty");
    }
    std::vector<ReservoirSpec> steps;
    steps.reserve(pulses.size());
    const double favored = bias / (bias + 1.0);
    const double other = 1.0 / (bias + 1.0);
    for (std::size_t pulse : pulses) {
        if (pulse != elements.first && pulse != elements.second) {
            throw Error("pulse letter is outside the two-element alphabet");
        }
        const std::size_t rest = pulse == elements.first ? elements.second : elements.first;
        steps.push_back(ReservoirSpec({ReservoirEntry{pulse, state_label, favored},
                                       ReservoirEntry{rest, state_label, other}}));
    }
    return Scenario(std::move(steps), max_steps);
}

}  // namespace detsim
