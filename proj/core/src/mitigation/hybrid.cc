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

#include "driftmit/mitigation/hybrid.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "driftmit/core/taylor.h"

namespace driftmit {

namespace {

template <typename Channel>
MitigationEstimate hybrid_combination(std::span<const AmplifiedDistribution> inputs, const Channel& inverse, int m,
                                      const BitString& target) {
    if (static_cast<int>(inputs.size()) != m + 1) {
        throw std::invalid_argument("hybrid mitigation of order " + std::to_string(m) + " needs " +
                                    std::to_string(m + 1) + " levels");
    }
    std::vector<double> values;
    std::vector<double> variances;
    std::size_t shots = 0;
    for (int j = 0; j <= m; ++j) {
        if (inputs[j].j != j) {
            throw std::invalid_argument("hybrid inputs must be ordered by amplification level");
        }
        auto powered = inverse.power(2 * j + 1);
        auto est = hybrid_target(inputs[j], [&](const BitString& mask) { return powered.weight(mask); }, target);
        values.push_back(est.value);
        variances.push_back(est.variance);
        shots += inputs[j].n_shots;
    }
    auto out = combine_independent(values, variances, m, "hybrid");
    out.n_shots = shots;
    return out;
}

}  // namespace

QuasiDistribution hybrid_inverse(const QuasiDistribution& parity_dist, const TwirledChannel& inverse, int j) {
    if (j < 0) {
        throw std::invalid_argument("amplification index must be >= 0");
    }
    return inverse.power(2 * j + 1).apply(parity_dist);
}

QuasiDistribution mitigate_hybrid_distribution(std::span<const AmplifiedDistribution> inputs,
                                               const TwirledChannel& inverse, int m) {
    if (static_cast<int>(inputs.size()) != m + 1) {
        throw std::invalid_argument("hybrid mitigation of order " + std::to_string(m) + " needs " +
                                    std::to_string(m + 1) + " levels");
    }
    auto a = taylor_coefficients(m).as_double();
    QuasiDistribution out;
    for (int j = 0; j <= m; ++j) {
        if (inputs[j].j != j) {
            throw std::invalid_argument("hybrid inputs must be ordered by amplification level");
        }
        for (const auto& [s, p] : hybrid_inverse(inputs[j].distribution(), inverse, j)) {
            out[s] += a[j] * p;
        }
    }
    return out;
}

TwirledChannel mask_form_inverse(const Matrix& inv, double tolerance) {
    if (inv.rows() != inv.cols() || inv.rows() == 0) {
        throw std::invalid_argument("approximate inverse must be square");
    }
    std::size_t dim = static_cast<std::size_t>(inv.rows());
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if ((std::size_t{1} << n) != dim) {
        throw std::invalid_argument("approximate inverse dimension must be a power of two");
    }
    std::vector<TwirledChannel::Term> terms;
    for (std::size_t f = 0; f < dim; ++f) {
        double w = inv(static_cast<Eigen::Index>(f), 0);
        for (std::size_t s = 0; s < dim; ++s) {
            double v = inv(static_cast<Eigen::Index>(s ^ f), static_cast<Eigen::Index>(s));
            if (std::abs(v - w) > tolerance) {
                throw std::invalid_argument("approximate inverse is not in mask form (entry depends on more than "
                                            "row XOR column)");
            }
        }
        if (w != 0.0) {
            terms.push_back({BitString::from_index(f, n), w});
        }
    }
    return TwirledChannel(n, std::move(terms), true, tolerance);
}

TwirledChannel twirl_inverse(const AssignmentMatrix& m) {
    Matrix twirled = twirl(m).induced_matrix();
    return mask_form_inverse(twirled.inverse());
}

ScalarEstimate hybrid_target(const AmplifiedDistribution& dist, const std::function<double(const BitString&)>& w,
                             const BitString& target) {
    if (dist.n_shots == 0) {
        throw std::runtime_error("hybrid correction of an empty tally");
    }
    double sum = 0;
    double sum_sq = 0;
    for (const auto& [outcome, moments] : dist.tally) {
        double f = w(outcome ^ target);
        sum += f * moments.sum;
        sum_sq += f * f * moments.sum_sq;
    }
    double n = static_cast<double>(dist.n_shots);
    double mean = sum / n;
    return {mean, std::max(0.0, sum_sq / n - mean * mean) / n, dist.n_shots};
}

MitigationEstimate mitigate_hybrid(std::span<const AmplifiedDistribution> inputs, const TwirledChannel& inverse,
                                   int m, const BitString& target) {
    return hybrid_combination(inputs, inverse, m, target);
}

MitigationEstimate mitigate_hybrid(std::span<const AmplifiedDistribution> inputs,
                                   const LocalTwirledChannel& inverse, int m, const BitString& target) {
    return hybrid_combination(inputs, inverse, m, target);
}

}  // namespace driftmit
