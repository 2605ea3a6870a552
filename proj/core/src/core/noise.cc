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

#include "driftmit/core/noise.h"

#include <stdexcept>

namespace driftmit {

namespace {

void require_rates(const std::vector<double>& v, const char* name) {
    for (double r : v) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(r));
        }
    }
}

}  // namespace

QubitNoise QubitNoise::none(std::size_t num_qubits) {
    return decay(num_qubits, 0.0, 0.0);
}

QubitNoise QubitNoise::decay(std::size_t num_qubits, double gamma_down, double gamma_up) {
    QubitNoise noise{std::vector<double>(num_qubits, gamma_down), std::vector<double>(num_qubits, gamma_up)};
    noise.validate();
    return noise;
}

bool QubitNoise::is_zero() const noexcept {
    for (std::size_t k = 0; k < gamma_down.size(); ++k) {
        if (gamma_down[k] != 0.0 || gamma_up[k] != 0.0) {
            return false;
        }
    }
    return true;
}

void QubitNoise::validate() const {
    if (gamma_down.size() != gamma_up.size()) {
        throw std::invalid_argument("gamma_down and gamma_up must have one entry per qubit");
    }
    require_rates(gamma_down, "gamma_down");
    require_rates(gamma_up, "gamma_up");
}

std::string_view to_string(PrepMode mode) {
    switch (mode) {
        case PrepMode::native:
            return "native";
        case PrepMode::conditional_reset:
            return "conditional-reset";
        case PrepMode::parity_amplified_reset:
            return "parity-amplified-reset";
        case PrepMode::post_selected:
            return "post-selected";
    }
    return "native";
}

PrepMode prep_mode_from_string(std::string_view name) {
    for (auto mode : {PrepMode::native, PrepMode::conditional_reset, PrepMode::parity_amplified_reset,
                      PrepMode::post_selected}) {
        if (to_string(mode) == name) {
            return mode;
        }
    }
    throw std::invalid_argument("unknown preparation mode: " + std::string(name));
}

PrepModel PrepModel::ideal(std::size_t num_qubits) {
    return PrepModel{std::vector<double>(num_qubits, 0.0)};
}

int PrepModel::prep_slots() const noexcept {
    switch (mode) {
        case PrepMode::native:
            return 0;
        case PrepMode::conditional_reset:
            return 1;
        case PrepMode::parity_amplified_reset:
            return 2 * parity_j + 1;
        case PrepMode::post_selected:
            return postselect_k;
    }
    return 0;
}

void PrepModel::validate() const {
    require_rates(x, "preparation error x");
    if (parity_j < 0) {
        throw std::invalid_argument("parity reset index j must be >= 0");
    }
    if (postselect_k < 0) {
        throw std::invalid_argument("post-selection count k must be >= 0");
    }
    if (mode == PrepMode::post_selected && postselect_k == 0) {
        throw std::invalid_argument("post-selected preparation needs k >= 1");
    }
}

}  // namespace driftmit
