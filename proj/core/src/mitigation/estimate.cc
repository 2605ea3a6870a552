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

#include "driftmit/mitigation/estimate.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "driftmit/analysis/bootstrap.h"
#include "driftmit/core/taylor.h"

namespace driftmit {

namespace {

void require_levels(std::size_t count, int m) {
    if (m < 0 || m > kMaxTaylorOrder) {
        throw std::invalid_argument("mitigation order out of range: " + std::to_string(m));
    }
    if (count != static_cast<std::size_t>(m + 1)) {
        throw std::invalid_argument("order-" + std::to_string(m) + " mitigation needs " + std::to_string(m + 1) +
                                    " amplification levels, got " + std::to_string(count));
    }
}

// Per-shot contribution of one record to level j, or nullopt if the record
// does not carry level j.
using Contribution = std::function<std::optional<double>(const ShotRecord&, int j)>;

MitigationEstimate estimate_from_contributions(const RecordSet& set, int m, const Contribution& contrib,
                                               std::string scheme, int resamples, std::uint64_t seed) {
    require_levels(static_cast<std::size_t>(m + 1), m);
    if (m > set.info.plan.j_max) {
        throw std::invalid_argument("mitigation order " + std::to_string(m) + " exceeds the plan's j_max " +
                                    std::to_string(set.info.plan.j_max));
    }
    std::vector<double> sum(m + 1, 0.0), sum_sq(m + 1, 0.0);
    std::vector<std::size_t> count(m + 1, 0);
    bool shared = set.info.plan.layout == Layout::shared;
    auto coeffs = taylor_coefficients(m).as_double();
    std::vector<double> combined;
    if (shared) {
        combined.reserve(set.records.size());
    }
    for (const auto& rec : set.records) {
        double g = 0;
        for (int j = 0; j <= m; ++j) {
            auto c = contrib(rec, j);
            if (!c) {
                continue;
            }
            sum[j] += *c;
            sum_sq[j] += *c * *c;
            ++count[j];
            g += coeffs[j] * *c;
        }
        if (shared) {
            combined.push_back(g);
        }
    }
    std::vector<double> values(m + 1), variances(m + 1);
    std::size_t shots = 0;
    for (int j = 0; j <= m; ++j) {
        if (count[j] == 0) {
            throw std::invalid_argument("no shots for amplification level " + std::to_string(j));
        }
        double n = static_cast<double>(count[j]);
        values[j] = sum[j] / n;
        variances[j] = std::max(0.0, sum_sq[j] / n - values[j] * values[j]) / n;
        shots = shared ? count[j] : shots + count[j];
    }
    auto est = combine_independent(values, variances, m, std::move(scheme));
    est.n_shots = shots;
    if (shared && m > 0) {
        est.stderr_ = bootstrap_mean_stderr(combined, resamples, seed);
        est.stderr_method = "bootstrap";
    }
    return est;
}

}  // namespace

nlohmann::json MitigationEstimate::to_json() const {
    return {
        {"scheme", scheme},
        {"m", order},
        {"value", value},
        {"stderr", stderr_},
        {"stderr_method", stderr_method},
        {"per_j_inputs", per_j_inputs},
        {"per_j_stderr", per_j_stderr},
        {"n_shots", n_shots},
        {"discarded_fraction", discarded_fraction},
    };
}

double combine(std::span<const double> values, int m) {
    require_levels(values.size(), m);
    auto coeffs = taylor_coefficients(m);
    Rational total = 0;
    for (int j = 0; j <= m; ++j) {
        if (!std::isfinite(values[j])) {
            throw std::invalid_argument("non-finite mitigation input");
        }
        total += coeffs.a[j] * Rational(values[j]);
    }
    return static_cast<double>(total);
}

MitigationEstimate combine_independent(std::span<const double> values, std::span<const double> variances, int m,
                                       std::string scheme) {
    require_levels(values.size(), m);
    require_levels(variances.size(), m);
    auto coeffs = taylor_coefficients(m).as_double();
    MitigationEstimate est;
    est.scheme = std::move(scheme);
    est.order = m;
    est.value = combine(values, m);
    double var = 0;
    for (int j = 0; j <= m; ++j) {
        var += coeffs[j] * coeffs[j] * variances[j];
        est.per_j_stderr.push_back(std::sqrt(variances[j]));
    }
    est.stderr_ = std::sqrt(var);
    est.per_j_inputs.assign(values.begin(), values.end());
    return est;
}

MitigationEstimate mitigate(std::span<const AmplifiedDistribution> inputs, int m, const BitString& target) {
    require_levels(inputs.size(), m);
    std::vector<double> values, variances;
    std::size_t shots = 0;
    for (int j = 0; j <= m; ++j) {
        const auto& in = inputs[j];
        if (in.j != j) {
            throw std::invalid_argument("missing amplification level " + std::to_string(j));
        }
        if (in.statistic != inputs[0].statistic) {
            throw std::invalid_argument("mitigation inputs mix statistics");
        }
        values.push_back(in.probability(target));
        variances.push_back(in.variance(target));
        shots += in.n_shots;
    }
    auto est = combine_independent(values, variances, m, std::string(to_string(inputs[0].statistic)));
    est.n_shots = shots;
    return est;
}

QuasiDistribution mitigate_distribution(std::span<const AmplifiedDistribution> inputs, int m) {
    require_levels(inputs.size(), m);
    std::vector<QuasiDistribution> dists;
    for (int j = 0; j <= m; ++j) {
        if (inputs[j].j != j) {
            throw std::invalid_argument("missing amplification level " + std::to_string(j));
        }
        dists.push_back(inputs[j].distribution());
    }
    QuasiDistribution keys;
    for (const auto& d : dists) {
        for (const auto& [s, p] : d) {
            keys.emplace(s, 0.0);
        }
    }
    QuasiDistribution out;
    std::vector<double> values(m + 1);
    for (const auto& [s, unused] : keys) {
        for (int j = 0; j <= m; ++j) {
            auto it = dists[j].find(s);
            values[j] = it == dists[j].end() ? 0.0 : it->second;
        }
        out.emplace(s, combine(values, m));
    }
    return out;
}

MitigationEstimate mitigate_records(const RecordSet& set, int m, const BitString& target,
                                    const RecordMitigationOptions& options) {
    const auto& plan = set.info.plan;
    Statistic statistic = options.statistic.value_or(statistic_for(plan.scheme));
    std::vector<Window> windows;
    std::vector<TwirledChannel> powered;
    std::vector<LocalTwirledChannel> powered_local;
    bool local = !options.hybrid_inverse && options.hybrid_local_inverse;
    for (int j = 0; j <= std::min(m, plan.j_max); ++j) {
        windows.push_back(plan.window(j));
        if (options.hybrid_inverse) {
            powered.push_back(options.hybrid_inverse->power(2 * j + 1));
        } else if (local) {
            powered_local.push_back(options.hybrid_local_inverse->power(2 * j + 1));
        }
    }
    Contribution contrib = [&](const ShotRecord& rec, int j) -> std::optional<double> {
        if (!plan.covers(rec.level, j)) {
            return std::nullopt;
        }
        auto so = shot_outcome(rec, windows[j], statistic);
        if (options.hybrid_inverse) {
            return so.weight * powered[j].weight(so.outcome ^ target);
        }
        if (local) {
            return so.weight * powered_local[j].weight(so.outcome ^ target);
        }
        return so.outcome == target ? so.weight : 0.0;
    };
    std::string scheme(to_string(plan.scheme));
    if (options.hybrid_inverse || local) {
        scheme += "+hybrid";
    }
    return estimate_from_contributions(set, m, contrib, scheme, options.bootstrap_resamples,
                                       options.bootstrap_seed);
}

MitigationEstimate majority_vote(const RecordSet& set, int m, const BitString& target) {
    auto dist = majority_distribution(set, m);
    MitigationEstimate est;
    est.scheme = "majority";
    est.order = m;
    est.value = dist.probability(target);
    est.stderr_ = std::sqrt(dist.variance(target));
    est.per_j_inputs = {est.value};
    est.per_j_stderr = {est.stderr_};
    est.n_shots = dist.n_shots;
    return est;
}

ScalarEstimate feedforward_expectation(const RecordSet& set, double a0, double a1, int j, bool weighted,
                                       std::size_t qubit) {
    const auto& plan = set.info.plan;
    if (qubit >= set.info.num_qubits) {
        throw std::out_of_range("feedforward qubit index out of range");
    }
    Window w = plan.window(j);
    double sum = 0, sum_sq = 0;
    std::size_t n = 0;
    for (const auto& rec : set.records) {
        if (!plan.covers(rec.level, j)) {
            continue;
        }
        BitString seq = rec.qubit_window(qubit, w);
        double v = seq.parity() ? a1 : a0;
        if (weighted) {
            v *= weight(seq);
        }
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    if (n == 0) {
        throw std::invalid_argument("no shots for amplification level " + std::to_string(j));
    }
    double mean = sum / static_cast<double>(n);
    double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean) / static_cast<double>(n);
    return {mean, var, n};
}

MitigationEstimate mitigate_feedforward(const RecordSet& set, double a0, double a1, int m, bool weighted,
                                        std::size_t qubit) {
    const auto& plan = set.info.plan;
    std::vector<Window> windows;
    for (int j = 0; j <= std::min(m, plan.j_max); ++j) {
        windows.push_back(plan.window(j));
    }
    Contribution contrib = [&](const ShotRecord& rec, int j) -> std::optional<double> {
        if (!plan.covers(rec.level, j)) {
            return std::nullopt;
        }
        BitString seq = rec.qubit_window(qubit, windows[j]);
        double v = seq.parity() ? a1 : a0;
        return weighted ? v * weight(seq) : v;
    };
    return estimate_from_contributions(set, m, contrib, weighted ? "feedforward-weighted" : "feedforward", 200, 0);
}

}  // namespace driftmit
