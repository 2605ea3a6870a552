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

#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "driftmit/core/bitstring.h"
#include "driftmit/core/twirled_channel.h"
#include "driftmit/mitigation/parity.h"
#include "driftmit/sim/shot_record.h"

namespace driftmit {

/// Per-outcome sums of shot weights and squared shot weights. Unweighted
/// tallies use weight 1, so `sum` is a count.
struct TallyMoments {
    double sum = 0;
    double sum_sq = 0;
};

/// Tally of the level-j statistic over the shots that ran level j.
struct AmplifiedDistribution {
    int j = 0;
    Statistic statistic = Statistic::parity;
    std::size_t num_qubits = 0;
    std::size_t n_shots = 0;
    std::map<BitString, TallyMoments> tally;

    /// Weighted frequency of `target`, normalised by n_shots.
    double probability(const BitString& target) const;
    /// Variance of probability(target) as a shot average.
    double variance(const BitString& target) const;
    /// All outcomes, normalised by n_shots. Weighted tallies need not sum to 1.
    QuasiDistribution distribution() const;
    void add(const BitString& outcome, double w);
    void merge(const AmplifiedDistribution& other);
};

/// Level-j outcome of one record under a statistic, with its shot weight.
struct ShotOutcome {
    BitString outcome;
    double weight = 1.0;
};
ShotOutcome shot_outcome(const ShotRecord& rec, Window w, Statistic statistic);

/// Tallies level j from a record set. The window comes from the plan; the
/// statistic defaults to the one implied by the plan's scheme. Separate
/// layouts use only shots with level == j.
AmplifiedDistribution amplified_distribution(const RecordSet& set, int j,
                                             std::optional<Statistic> statistic = std::nullopt);

/// Majority-vote tally over slots [0, 2m+1) of every record.
AmplifiedDistribution majority_distribution(const RecordSet& set, int m);

}  // namespace driftmit
