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
#include <vector>

#include <nlohmann/json.hpp>

#include "driftmit/core/bitstring.h"
#include "driftmit/mitigation/estimate.h"
#include "driftmit/sim/simulator.h"

namespace driftmit {

struct DriftExperimentConfig {
    /// Base configuration; its drift schedule supplies the time dependence.
    /// The layout is forced to separate and the order set per run.
    SimulationConfig config;
    std::size_t n_shots = 0;
    std::uint64_t seed = 0;
    int m = 1;
    BitString target;
    double ideal = 1.0;
    unsigned threads = 1;
    /// Shots sampled per level when averaging oracle values over the drift.
    std::size_t oracle_samples = 4096;
};

struct DriftOrderResult {
    ExecutionOrder order = ExecutionOrder::interleaved;
    MitigationEstimate estimate;
    double bias = 0;         // estimate - ideal
    double oracle_value = 0; // exact expectation of the estimator for this order
    double oracle_bias = 0;  // oracle_value - ideal
};

struct DriftReport {
    double ideal = 1.0;
    /// Oracle bias of the interleaved order: the residual left by finite
    /// mitigation order once drift is averaged out.
    double envelope = 0;
    std::vector<DriftOrderResult> rows;

    const DriftOrderResult& row(ExecutionOrder order) const;
    nlohmann::json to_json() const;
};

/// Exact expectation of the order-m estimator when levels run in `order`
/// under the config's drift schedule.
double drift_oracle_value(const DriftExperimentConfig& cfg, ExecutionOrder order);

/// Runs both execution orders and reports their mitigated bias.
DriftReport run_drift_experiment(const DriftExperimentConfig& cfg);

}  // namespace driftmit
