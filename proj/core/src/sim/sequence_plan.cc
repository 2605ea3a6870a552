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

#include "driftmit/sim/sequence_plan.h"

#include <stdexcept>
#include <string>

namespace driftmit {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view name, const E (&values)[N], const char* what) {
    for (E v : values) {
        if (to_string(v) == name) {
            return v;
        }
    }
    throw std::invalid_argument(std::string("unknown ") + what + ": " + std::string(name));
}

}  // namespace

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::basic:
            return "basic";
        case Scheme::dummy:
            return "dummy";
        case Scheme::dummy_posterior:
            return "dummy-posterior";
        case Scheme::weighted:
            return "weighted";
        case Scheme::reset:
            return "reset";
        case Scheme::majority:
            return "majority";
    }
    return "basic";
}

Scheme scheme_from_string(std::string_view name) {
    static const Scheme all[] = {Scheme::basic,    Scheme::dummy, Scheme::dummy_posterior,
                                 Scheme::weighted, Scheme::reset, Scheme::majority};
    return parse_enum(name, all, "scheme");
}

std::string_view to_string(Layout layout) {
    return layout == Layout::shared ? "shared" : "separate";
}

Layout layout_from_string(std::string_view name) {
    static const Layout all[] = {Layout::shared, Layout::separate};
    return parse_enum(name, all, "layout");
}

std::string_view to_string(ExecutionOrder order) {
    return order == ExecutionOrder::interleaved ? "interleaved" : "blocked";
}

ExecutionOrder order_from_string(std::string_view name) {
    static const ExecutionOrder all[] = {ExecutionOrder::interleaved, ExecutionOrder::blocked};
    return parse_enum(name, all, "execution order");
}

int SequencePlan::slots(int j) const {
    if (j < 0) {
        throw std::invalid_argument("amplification index must be >= 0");
    }
    switch (scheme) {
        case Scheme::dummy:
            return 3 * j + 1;
        case Scheme::dummy_posterior:
            return 4 * j + 2;
        default:
            return 2 * j + 1;
    }
}

Window SequencePlan::window(int j) const {
    if (j < 0 || j > j_max) {
        throw std::out_of_range("amplification index " + std::to_string(j) + " outside plan range [0, " +
                                std::to_string(j_max) + "]");
    }
    switch (scheme) {
        case Scheme::dummy:
        case Scheme::dummy_posterior:
            return {j, 3 * j + 1};
        case Scheme::reset:
            return {2 * j, 2 * j + 1};
        default:
            return {0, 2 * j + 1};
    }
}

int SequencePlan::record_slots(int level) const {
    if (layout == Layout::shared) {
        return slots(j_max);
    }
    return slots(level);
}

int SequencePlan::level_for_shot(std::size_t shot, std::size_t n_shots) const {
    if (layout == Layout::shared) {
        return -1;
    }
    auto levels = static_cast<std::size_t>(j_max + 1);
    if (order == ExecutionOrder::interleaved) {
        return static_cast<int>(shot % levels);
    }
    return static_cast<int>((static_cast<unsigned __int128>(shot) * levels) / n_shots);
}

bool SequencePlan::covers(int level, int j) const {
    if (j < 0 || j > j_max) {
        return false;
    }
    return layout == Layout::shared || level == j;
}

void SequencePlan::validate() const {
    if (j_max < 0 || j_max > 15) {
        throw std::invalid_argument("j_max must lie in [0, 15]");
    }
}

}  // namespace driftmit
