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

#include "driftmit/mitigation/parity.h"

#include <stdexcept>

namespace driftmit {

BitString parity(std::span<const BitString> window) {
    if (window.empty() || window.size() % 2 == 0) {
        throw std::invalid_argument("parity needs an odd-length window, got " + std::to_string(window.size()));
    }
    return fold_xor(window);
}

std::string_view to_string(Alignment a) {
    switch (a) {
        case Alignment::left:
            return "left";
        case Alignment::right:
            return "right";
        default:
            return "non_aligned";
    }
}

Alignment classify_alignment(const BitString& seq) {
    std::size_t len = seq.width();
    if (len < 2) {
        return Alignment::non_aligned;
    }
    bool first = seq.get(0);
    std::size_t run = 1;
    while (run < len && seq.get(run) == first) {
        ++run;
    }
    if (run == len) {
        return Alignment::non_aligned;
    }
    for (std::size_t k = run; k < len; ++k) {
        if (seq.get(k) == first) {
            return Alignment::non_aligned;
        }
    }
    return first ? Alignment::left : Alignment::right;
}

double weight(const BitString& seq) {
    if (seq.width() % 2 == 0) {
        throw std::invalid_argument("weighted parity needs an odd-length window");
    }
    switch (classify_alignment(seq)) {
        case Alignment::right:
            return seq.parity() ? 2.0 : 0.0;
        case Alignment::left:
            return seq.parity() ? 0.0 : 2.0;
        default:
            return 1.0;
    }
}

bool majority(const BitString& seq) {
    if (seq.width() % 2 == 0) {
        throw std::invalid_argument("majority vote needs an odd-length window");
    }
    return 2 * seq.popcount() > seq.width();
}

std::string_view to_string(Statistic s) {
    switch (s) {
        case Statistic::weighted_parity:
            return "weighted_parity";
        case Statistic::majority:
            return "majority";
        default:
            return "parity";
    }
}

Statistic statistic_from_string(std::string_view name) {
    if (name == "parity") {
        return Statistic::parity;
    }
    if (name == "weighted_parity") {
        return Statistic::weighted_parity;
    }
    if (name == "majority") {
        return Statistic::majority;
    }
    throw std::invalid_argument("unknown statistic: " + std::string(name));
}

Statistic statistic_for(Scheme scheme) {
    switch (scheme) {
        case Scheme::weighted:
            return Statistic::weighted_parity;
        case Scheme::majority:
            return Statistic::majority;
        default:
            return Statistic::parity;
    }
}

BitString window_parity(const ShotRecord& rec, Window w) {
    if (w.size() % 2 == 0 || w.begin < 0 || w.end > static_cast<int>(rec.slots.size())) {
        throw std::invalid_argument("invalid parity window for record");
    }
    BitString acc = rec.slots[static_cast<std::size_t>(w.begin)];
    for (int i = w.begin + 1; i < w.end; ++i) {
        acc ^= rec.slots[static_cast<std::size_t>(i)];
    }
    return acc;
}

BitString window_majority(const ShotRecord& rec, Window w) {
    BitString out(rec.num_qubits());
    for (std::size_t q = 0; q < out.width(); ++q) {
        out.set(q, majority(rec.qubit_window(q, w)));
    }
    return out;
}

double window_weight(const ShotRecord& rec, Window w) {
    double total = 1.0;
    for (std::size_t q = 0; q < rec.num_qubits() && total != 0.0; ++q) {
        total *= weight(rec.qubit_window(q, w));
    }
    return total;
}

}  // namespace driftmit
