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
#include <string>
#include <string_view>

namespace driftmit {

enum class Scheme {
    basic,
    dummy,
    dummy_posterior,
    weighted,
    reset,
    majority,
};

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

/// How amplification levels map onto shots.
///   shared:   every shot records the longest sequence; level j uses a nested
///             window of it.
///   separate: each shot runs exactly one level.
enum class Layout { shared, separate };

/// Level assignment for separate layouts.
///   interleaved: levels cycle 0, 1, ..., j_max, 0, 1, ... over shot index.
///   blocked:     all level-0 shots first, then level 1, and so on.
enum class ExecutionOrder { interleaved, blocked };

std::string_view to_string(Layout layout);
Layout layout_from_string(std::string_view name);
std::string_view to_string(ExecutionOrder order);
ExecutionOrder order_from_string(std::string_view name);

/// Half-open slot range [begin, end) within a record's main sequence.
struct Window {
    int begin = 0;
    int end = 0;
    int size() const noexcept { return end - begin; }
    friend bool operator==(const Window&, const Window&) = default;
};

struct SequencePlan {
    Scheme scheme = Scheme::basic;
    int j_max = 0;
    Layout layout = Layout::separate;
    ExecutionOrder order = ExecutionOrder::interleaved;

    /// Measurement slots needed to evaluate amplification level j alone.
    ///   basic, weighted, majority, reset: 2j+1
    ///   dummy:           3j+1 (j leading dummies)
    ///   dummy-posterior: 4j+2 (j+1 trailing dummies on top of dummy)
    int slots(int j) const;
    /// Slots whose readouts feed level j. For reset this is the final round.
    Window window(int j) const;
    /// Slots recorded for a shot run at `level` (shared layouts ignore it).
    int record_slots(int level) const;
    /// -1 for shared layouts.
    int level_for_shot(std::size_t shot, std::size_t n_shots) const;
    /// True when level j can be read out of a record produced at `level`.
    bool covers(int level, int j) const;

    void validate() const;
};

}  // namespace driftmit
