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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftmit/core/bitstring.h"
#include "driftmit/core/twirled_channel.h"
#include "driftmit/mitigation/amplified.h"
#include "driftmit/sim/shot_record.h"

namespace driftmit {

struct MitigationEstimate {
    std::string scheme;
    int order = 0;
    double value = 0;
    double stderr_ = 0;
    /// "independent", "bootstrap" or "exact".
    std::string stderr_method = "independent";
    std::vector<double> per_j_inputs;
    std::vector<double> per_j_stderr;
    std::size_t n_shots = 0;
    double discarded_fraction = 0;

    nlohmann::json to_json() const;
};

/// sum_j a_j values[j] with a_j the order-m Taylor coefficients. The sum is
/// formed in exact rational arithmetic from the binary double inputs and
/// rounded once at the end. Requires values.size() == m + 1.
double combine(std::span<const double> values, int m);

/// Combination with independent-input error propagation sqrt(sum a_j^2 var_j).
MitigationEstimate combine_independent(std::span<const double> values, std::span<const double> variances, int m,
                                       std::string scheme);

/// Mitigated probability of `target` from levels j = 0..m. Inputs must be
/// ordered by j and share a statistic; variances are treated as independent.
MitigationEstimate mitigate(std::span<const AmplifiedDistribution> inputs, int m, const BitString& target);

/// Mitigated (quasi-)distribution sum_j a_j p^(2j+1), left unclipped.
QuasiDistribution mitigate_distribution(std::span<const AmplifiedDistribution> inputs, int m);

struct RecordMitigationOptions {
    std::optional<Statistic> statistic;
    /// Bootstrap resamples for shared layouts.
    int bootstrap_resamples = 200;
    std::uint64_t bootstrap_seed = 0;
    /// Optional per-measurement inverse applied (2j+1)-fold before combining.
    std::optional<TwirledChannel> hybrid_inverse;
    /// Product-form alternative for wide registers; used when hybrid_inverse is unset.
    std::optional<LocalTwirledChannel> hybrid_local_inverse;
};

/// Mitigates a record set directly. Shared layouts reuse each shot for every
/// level, so the uncertainty comes from a shot-level bootstrap; separate
/// layouts use independent propagation.
MitigationEstimate mitigate_records(const RecordSet& set, int m, const BitString& target,
                                    const RecordMitigationOptions& options = {});

/// Majority-vote estimate of P(target) over slots [0, 2m+1).
MitigationEstimate majority_vote(const RecordSet& set, int m, const BitString& target);

/// Shot average of A_par (times W(s) when weighted) for level j, where par
/// is the parity of `qubit` over the plan's level-j window.
struct ScalarEstimate {
    double value = 0;
    double variance = 0;
    std::size_t n_shots = 0;
};
ScalarEstimate feedforward_expectation(const RecordSet& set, double a0, double a1, int j, bool weighted,
                                       std::size_t qubit = 0);

/// Mitigated feedforward expectation over levels 0..m.
MitigationEstimate mitigate_feedforward(const RecordSet& set, double a0, double a1, int m, bool weighted,
                                        std::size_t qubit = 0);

}  // namespace driftmit
