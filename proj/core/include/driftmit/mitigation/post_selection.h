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

#include "driftmit/sim/shot_record.h"

namespace driftmit {

struct PostSelection {
    RecordSet kept;
    std::size_t total = 0;
    double success_rate = 0;
};

/// Keeps shots whose first k dedicated measurements read 0 on every qubit.
PostSelection post_select(const RecordSet& set, int k);

/// Posterior probability that the initial state was wrong after k zero
/// readouts: eps10^k x / ((1 - x)(1 - eps01)^k + x eps10^k).
double residual_prep_error(double x, double eps10, double eps01, int k);

}  // namespace driftmit
