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

#include "driftmit/sim/shot_record.h"

#include <stdexcept>

namespace driftmit {

BitString ShotRecord::qubit_window(std::size_t q, Window w) const {
    if (w.begin < 0 || w.end > static_cast<int>(slots.size()) || w.begin > w.end) {
        throw std::out_of_range("window outside the recorded sequence");
    }
    BitString out(static_cast<std::size_t>(w.size()));
    for (int i = w.begin; i < w.end; ++i) {
        if (slots[static_cast<std::size_t>(i)].get(q)) {
            out.set(static_cast<std::size_t>(i - w.begin), true);
        }
    }
    return out;
}

BitString ShotRecord::qubit_sequence(std::size_t q) const {
    return qubit_window(q, {0, static_cast<int>(slots.size())});
}

}  // namespace driftmit
