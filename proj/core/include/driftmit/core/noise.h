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
#include <vector>

namespace driftmit {

/// Per-qubit, per-slot decay (1 -> 0) and excitation (0 -> 1) probabilities.
/// Equal rates describe plain bit-flip noise.
struct QubitNoise {
    std::vector<double> gamma_down;
    std::vector<double> gamma_up;

    static QubitNoise none(std::size_t num_qubits);
    static QubitNoise decay(std::size_t num_qubits, double gamma_down, double gamma_up = 0.0);

    std::size_t num_qubits() const noexcept { return gamma_down.size(); }
    bool is_zero() const noexcept;
    /// Throws unless both vectors have equal length and every rate lies in [0, 1].
    void validate() const;
};

enum class PrepMode {
    native,
    conditional_reset,
    parity_amplified_reset,
    post_selected,
};

std::string_view to_string(PrepMode mode);
PrepMode prep_mode_from_string(std::string_view name);

/// Initial-state preparation.
///
/// x[k] is the probability that qubit k enters the shot in the wrong
/// computational state (|1> instead of |0>). In the reset modes that state is
/// then measured (once, or 2j+1 times with the parity deciding) and flipped
/// conditionally. In post_selected mode k dedicated measurements are recorded
/// ahead of the main sequence so shots can be filtered later.
struct PrepModel {
    std::vector<double> x;
    PrepMode mode = PrepMode::native;
    int parity_j = 0;
    int postselect_k = 0;

    static PrepModel ideal(std::size_t num_qubits);

    std::size_t num_qubits() const noexcept { return x.size(); }
    /// Measurement slots spent on preparation before the main sequence.
    int prep_slots() const noexcept;
    void validate() const;
};

}  // namespace driftmit
