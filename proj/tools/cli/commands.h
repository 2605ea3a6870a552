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

#include <filesystem>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "config.h"
#include "driftmit/sim/shot_record.h"

namespace driftmit::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitSchema = 2,
    kExitRuntime = 3,
    kExitCheckFailed = 4,
};

struct CommandOptions {
    std::filesystem::path out_dir = "driftmit-out";
    unsigned threads = 1;
    /// Record file to analyse instead of simulating in memory.
    std::optional<std::filesystem::path> records;
    /// Expected-results file for `report`; defaults to the config's sibling.
    std::optional<std::filesystem::path> expected;
};

/// Header fields embedded in every output: artifact, version, command,
/// config hash, seed and the resolved config.
nlohmann::json output_header(const ExperimentConfig& cfg, std::string_view command);

RecordSet simulate_records(const ExperimentConfig& cfg, unsigned threads);
/// Loads `options.records` when given, otherwise simulates.
RecordSet obtain_records(const ExperimentConfig& cfg, const CommandOptions& options);

nlohmann::json simulate_summary(const ExperimentConfig& cfg, const RecordSet& set);
nlohmann::json mitigate_results(const ExperimentConfig& cfg, const RecordSet& set);
nlohmann::json oracle_results(const ExperimentConfig& cfg);
nlohmann::json diagnose_results(const ExperimentConfig& cfg, const RecordSet& set);
nlohmann::json drift_results(const ExperimentConfig& cfg, unsigned threads);

/// Evaluates {"checks": [...]} against `results`. Each check names a JSON
/// pointer and either value/tol or min/max.
nlohmann::json evaluate_checks(const nlohmann::json& results, const nlohmann::json& expected, bool& all_passed);

int cmd_simulate(const ExperimentConfig& cfg, const CommandOptions& options);
int cmd_mitigate(const ExperimentConfig& cfg, const CommandOptions& options);
int cmd_oracle(const ExperimentConfig& cfg, const CommandOptions& options);
int cmd_diagnose(const ExperimentConfig& cfg, const CommandOptions& options);
int cmd_drift(const ExperimentConfig& cfg, const CommandOptions& options);
/// Runs every applicable analysis, writes report.json and checks it against
/// the expected-results file. Returns kExitCheckFailed on any failed check.
int cmd_report(const ExperimentConfig& cfg, const CommandOptions& options,
               const std::optional<std::filesystem::path>& config_path);

}  // namespace driftmit::cli
