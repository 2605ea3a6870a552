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

#include "driftmit/analysis/drift_experiment.h"

#include <algorithm>
#include <stdexcept>

#include "driftmit/analysis/oracle.h"

namespace driftmit {

namespace {

SimulationConfig with_order(const SimulationConfig& base, ExecutionOrder order) {
    SimulationConfig c = base;
    c.plan.layout = Layout::separate;
    c.plan.order = order;
    return c;
}

}  // namespace

const DriftOrderResult& DriftReport::row(ExecutionOrder order) const {
    for (const auto& r : rows) {
        if (r.order == order) {
            return r;
        }
    }
    throw std::out_of_range("drift report has no row for this order");
}

nlohmann::json DriftReport::to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({
            {"order", to_string(r.order)},
            {"estimate", r.estimate.to_json()},
            {"bias", r.bias},
            {"oracle_value", r.oracle_value},
            {"oracle_bias", r.oracle_bias},
            {"excess_over_envelope", r.bias - envelope},
        });
    }
    return {{"ideal", ideal}, {"envelope", envelope}, {"rows", arr}};
}

double drift_oracle_value(const DriftExperimentConfig& cfg, ExecutionOrder order) {
    SimulationConfig c = with_order(cfg.config, order);
    c.validate(cfg.n_shots);
    const auto& plan = c.plan;
    if (cfg.m > plan.j_max) {
        throw std::invalid_argument("drift experiment order exceeds the plan's j_max");
    }
    Statistic stat = statistic_for(plan.scheme);
    std::vector<double> values;
    for (int j = 0; j <= cfg.m; ++j) {
        // Shots of level j, thinned to at most oracle_samples evenly spaced ones.
        std::vector<std::size_t> shots;
        for (std::size_t i = 0; i < cfg.n_shots; ++i) {
            if (plan.level_for_shot(i, cfg.n_shots) == j) {
                shots.push_back(i);
            }
        }
        if (shots.empty()) {
            throw std::invalid_argument("no shots run level " + std::to_string(j));
        }
        std::size_t samples = std::min(cfg.oracle_samples, shots.size());
        double sum = 0;
        for (std::size_t k = 0; k < samples; ++k) {
            std::size_t shot = shots[(2 * k + 1) * shots.size() / (2 * samples)];
            ShotNoise noise = c.drift.resolve(c.base_noise(), shot);
            OracleModel model = OracleModel::from_config(c, noise);
            Vector init = initial_distribution(model, c.prep, c.initial_state);
            sum += oracle_level_value(model, init, plan, j, stat, cfg.target);
        }
        values.push_back(sum / static_cast<double>(samples));
    }
    return combine(values, cfg.m);
}

DriftReport run_drift_experiment(const DriftExperimentConfig& cfg) {
    DriftReport report;
    report.ideal = cfg.ideal;
    for (auto order : {ExecutionOrder::interleaved, ExecutionOrder::blocked}) {
        SimulationConfig c = with_order(cfg.config, order);
        DriftOrderResult row;
        row.order = order;
        {
            RecordSet set = run_shots(c, cfg.n_shots, cfg.seed, cfg.threads);
            row.estimate = mitigate_records(set, cfg.m, cfg.target);
        }
        row.bias = row.estimate.value - cfg.ideal;
        row.oracle_value = drift_oracle_value(cfg, order);
        row.oracle_bias = row.oracle_value - cfg.ideal;
        report.rows.push_back(std::move(row));
    }
    report.envelope = report.row(ExecutionOrder::interleaved).oracle_bias;
    return report;
}

}  // namespace driftmit
