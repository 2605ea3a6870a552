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

#include "driftmit/mitigation/post_selection.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace driftmit {

PostSelection post_select(const RecordSet& set, int k) {
    if (k < 0 || k > set.info.postselect_k) {
        throw std::invalid_argument("post-selection needs " + std::to_string(k) + " leading measurements, records have " +
                                    std::to_string(set.info.postselect_k));
    }
    PostSelection out;
    out.kept.info = set.info;
    out.total = set.records.size();
    for (const auto& rec : set.records) {
        bool clean = true;
        for (int i = 0; i < k && clean; ++i) {
            clean = rec.postselect[static_cast<std::size_t>(i)].none();
        }
        if (clean) {
            out.kept.records.push_back(rec);
        }
    }
    out.success_rate = out.total == 0 ? 0.0 : static_cast<double>(out.kept.records.size()) / out.total;
    return out;
}

double residual_prep_error(double x, double eps10, double eps01, int k) {
    for (double p : {x, eps10, eps01}) {
        if (!(p >= 0 && p <= 1)) {
            throw std::invalid_argument("residual_prep_error: probabilities must lie in [0, 1]");
        }
    }
    if (k < 0) {
        throw std::invalid_argument("residual_prep_error: k must be >= 0");
    }
    double wrong = std::pow(eps10, k) * x;
    double right = (1 - x) * std::pow(1 - eps01, k);
    double denom = right + wrong;
    if (denom == 0.0) {
        throw std::domain_error("residual_prep_error: all-zero readout has probability zero");
    }
    return wrong / denom;
}

}  // namespace driftmit
