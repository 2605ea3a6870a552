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
#include <iosfwd>
#include <vector>

#include "driftmit/sim/shot_record.h"

namespace driftmit {

/// Post-selected population of |1> per slot for one qubit. Index 0 is the
/// first slot, which equals the post-selection bit by construction.
struct DecayCurve {
    std::size_t qubit = 0;
    std::vector<double> population;
    std::vector<std::size_t> n;
};

/// Keeps, per qubit, the shots whose first main-sequence bit equals
/// `post_select_bit` and averages that qubit's later slots. Throws when a
/// qubit's post-selected subset is empty or records have fewer than 2 slots.
std::vector<DecayCurve> decay_curves(const RecordSet& set, int post_select_bit);

/// Least-squares slope of population against slot index over slots 2..5
/// (1-based). The early part tracks the per-measurement decay before a fast
/// decaying qubit saturates at its readout floor.
double curve_slope(const DecayCurve& curve);

/// Fit of y = c + A r^i over slots 2 onward, with r capped at 0.999.
struct ExponentialFit {
    double offset = 0;
    double amplitude = 0;
    double ratio = 1;
    double rate = 0;  // 1 - ratio
    double rms_residual = 0;
};
ExponentialFit fit_decay(const DecayCurve& curve);

/// Qubits whose |slope| is at least `ratio` times the median |slope|.
std::vector<std::size_t> flag_defective(const std::vector<DecayCurve>& curves, double ratio = 5.0);

/// CSV with columns qubit,slot,population,n (slot is 1-based).
void write_curves_csv(std::ostream& out, const std::vector<DecayCurve>& curves);

}  // namespace driftmit
