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

#include <span>
#include <string_view>

#include "driftmit/core/bitstring.h"
#include "driftmit/sim/sequence_plan.h"
#include "driftmit/sim/shot_record.h"

namespace driftmit {

/// Per-qubit XOR across a window of n-qubit readouts. Throws for empty or
/// even-length windows.
BitString parity(std::span<const BitString> window);

enum class Alignment { non_aligned, left, right };
std::string_view to_string(Alignment a);

/// Single-qubit sequence, bit 0 first in time. left = 1...10...0,
/// right = 0...01...1 (both runs non-empty); anything else is non_aligned.
Alignment classify_alignment(const BitString& seq);

/// Weighted-parity shot weight of a single-qubit window (odd length):
/// non_aligned 1, right 2 par(s), left 2 (1 - par(s)).
double weight(const BitString& seq);

/// Majority bit of an odd-length single-qubit window.
bool majority(const BitString& seq);

/// Statistic extracted from a record window for one amplification level.
enum class Statistic { parity, weighted_parity, majority };
std::string_view to_string(Statistic s);
Statistic statistic_from_string(std::string_view name);
/// parity for basic/dummy/dummy-posterior/reset, weighted_parity for
/// weighted, majority for majority.
Statistic statistic_for(Scheme scheme);

/// Multi-qubit outcome of a record window under a statistic.
BitString window_parity(const ShotRecord& rec, Window w);
BitString window_majority(const ShotRecord& rec, Window w);
/// Product over qubits of the per-qubit weights.
double window_weight(const ShotRecord& rec, Window w);

}  // namespace driftmit
