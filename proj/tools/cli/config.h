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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftmit/core/twirled_channel.h"
#include "driftmit/mitigation/parity.h"
#include "driftmit/sim/record_io.h"
#include "driftmit/sim/simulator.h"

namespace driftmit::cli {

/// Raised for documents that violate the config schema. Maps to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct MitigationSettings {
    int m = 0;
    BitString target;
    std::optional<Statistic> statistic;
    /// Mask-form inverse of the approximate assignment matrix.
    std::optional<TwirledChannel> hybrid_inverse;
    /// Product-form inverse, used when the approximate model is per-qubit.
    std::optional<LocalTwirledChannel> hybrid_local_inverse;
    bool has_hybrid() const { return hybrid_inverse || hybrid_local_inverse; }
    int postselect_k = 0;
    int bootstrap_resamples = 200;
    std::uint64_t bootstrap_seed = 0;
    std::optional<double> extrapolate_to;
};

struct ExperimentConfig {
    std::string name;
    SimulationConfig sim;
    std::size_t n_shots = 0;
    std::uint64_t seed = 0;
    MitigationSettings mitigation;
    int diagnose_bit = 1;
    double flag_ratio = 5.0;
    std::size_t drift_oracle_samples = 4096;
    bool oracle_exact = false;
    RecordFormat format = RecordFormat::jsonl;

    /// Canonical form with every default filled in; hashed and embedded in outputs.
    nlohmann::json resolved;
    std::uint64_t hash = 0;
};

/// Validates `doc` and resolves it. Relative file references are taken from
/// `base_dir`. A seed override replaces run.seed before hashing.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {},
                              std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

/// Directory holding the shipped presets.
std::filesystem::path preset_dir();
std::filesystem::path preset_path(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace driftmit::cli
