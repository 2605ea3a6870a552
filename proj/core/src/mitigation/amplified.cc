// Copyright 2026 The driftmit Authors
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

#include "driftmit/mitigation/amplified.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace driftmit {

double AmplifiedDistribution::probability(const BitString& target) const {
    if (n_shots == 0) {
        throw std::runtime_error("amplified distribution for j=" + std::to_string(j) + " has no shots");
    }
    auto it = tally.find(target);
    return it == tally.end() ? 0.0 : it->second.sum / static_cast<double>(n_shots);
}

double AmplifiedDistribution::variance(const BitString& target) const {
    if (n_shots == 0) {
        throw std::runtime_error("amplified distribution for j=" + std::to_string(j) + " has no shots");
    }
    auto it = tally.find(target);
    if (it == tally.end()) {
        return 0.0;
    }
    double n = static_cast<double>(n_shots);
    double mean = it->second.sum / n;
    double second = it->second.sum_sq / n;
    return std::max(0.0, second - mean * mean) / n;
}

QuasiDistribution AmplifiedDistribution::distribution() const {
    QuasiDistribution out;
    for (const auto& [s, m] : tally) {
        out.emplace(s, m.sum / static_cast<double>(n_shots));
    }
    return out;
}

void AmplifiedDistribution::add(const BitString& outcome, double w) {
    ++n_shots;
    if (w == 0.0) {
        return;
    }
    auto& m = tally[outcome];
    m.sum += w;
    m.sum_sq += w * w;
}

void AmplifiedDistribution::merge(const AmplifiedDistribution& other) {
    if (other.j != j || other.statistic != statistic || other.num_qubits != num_qubits) {
        throw std::invalid_argument("cannot merge tallies of different levels or statistics");
    }
    n_shots += other.n_shots;
    for (const auto& [s, m] : other.tally) {
        auto& mine = tally[s];
        mine.sum += m.sum;
        mine.sum_sq += m.sum_sq;
    }
}

ShotOutcome shot_outcome(const ShotRecord& rec, Window w, Statistic statistic) {
    switch (statistic) {
        case Statistic::parity:
            return {window_parity(rec, w), 1.0};
        case Statistic::weighted_parity:
            return {window_parity(rec, w), window_weight(rec, w)};
        case Statistic::majority:
            return {window_majority(rec, w), 1.0};
    }
    throw std::logic_error("unreachable");
}

AmplifiedDistribution amplified_distribution(const RecordSet& set, int j, std::optional<Statistic> statistic) {
    const auto& plan = set.info.plan;
    if (j < 0 || j > plan.j_max) {
        throw std::out_of_range("amplification index " + std::to_string(j) + " exceeds the plan's j_max " +
                                std::to_string(plan.j_max));
    }
    AmplifiedDistribution out;
    out.j = j;
    out.statistic = statistic.value_or(statistic_for(plan.scheme));
    out.num_qubits = set.info.num_qubits;
    Window w = plan.window(j);
    for (const auto& rec : set.records) {
        if (!plan.covers(rec.level, j)) {
            continue;
        }
        auto so = shot_outcome(rec, w, out.statistic);
        out.add(so.outcome, so.weight);
    }
    return out;
}

AmplifiedDistribution majority_distribution(const RecordSet& set, int m) {
    AmplifiedDistribution out;
    out.j = m;
    out.statistic = Statistic::majority;
    out.num_qubits = set.info.num_qubits;
    Window w{0, 2 * m + 1};
    for (const auto& rec : set.records) {
        if (static_cast<int>(rec.slots.size()) < w.end) {
            if (set.info.plan.layout == Layout::shared) {
                throw std::invalid_argument("records are too short for majority vote of order " + std::to_string(m));
            }
            continue;
        }
        if (set.info.plan.layout == Layout::separate && rec.level != m) {
            continue;
        }
        auto so = shot_outcome(rec, w, Statistic::majority);
        out.add(so.outcome, so.weight);
    }
    return out;
}

}  // namespace driftmit
