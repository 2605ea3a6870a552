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
#include <vector>

#include "driftmit/core/bitstring.h"
#include "driftmit/sim/sequence_plan.h"

namespace driftmit {

/// One shot's readouts. `slots[i]` is the n-qubit outcome of main-sequence
/// slot i with the twirl correction already applied.
struct ShotRecord {
    std::uint64_t shot = 0;
    /// Amplification level run by this shot; -1 for shared layouts.
    int level = -1;
    /// Physical state at the start of the main sequence.
    BitString prep;
    /// Dedicated leading measurements used for post-selection.
    std::vector<BitString> postselect;
    std::vector<BitString> slots;
    std::optional<double> ff_value;

    std::size_t num_qubits() const noexcept { return prep.width(); }
    /// Bits of qubit q across slots [w.begin, w.end), slot w.begin as bit 0.
    BitString qubit_window(std::size_t q, Window w) const;
    /// Bits of qubit q across the whole main sequence.
    BitString qubit_sequence(std::size_t q) const;

    friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

/// Metadata carried alongside a record set.
struct RecordSetInfo {
    std::size_t num_qubits = 0;
    SequencePlan plan;
    int postselect_k = 0;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

struct RecordSet {
    RecordSetInfo info;
    std::vector<ShotRecord> records;
};

}  // namespace driftmit
