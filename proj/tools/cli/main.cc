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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "config.h"

namespace {

using driftmit::cli::CommandOptions;
using driftmit::cli::ExperimentConfig;

struct Flags {
    std::string config;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::string out = "driftmit-out";
    unsigned threads = 1;
    std::string format;
    std::string records;
    std::string expected;
};

void add_common(CLI::App* sub, Flags& f) {
    auto* config = sub->add_option("--config", f.config, "Experiment config file (JSON)");
    auto* preset = sub->add_option("--preset", f.preset, "Shipped preset name");
    config->excludes(preset);
    sub->add_option("--seed", f.seed, "Override run.seed");
    sub->add_option("--out", f.out, "Output directory")->capture_default_str();
    sub->add_option("--threads", f.threads, "Worker threads for simulation")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    sub->add_option("--format", f.format, "Record format")->check(CLI::IsMember({"csv", "jsonl", "bin"}));
}

}  // namespace

int main(int argc, char** argv) {
    using namespace driftmit::cli;
    CLI::App app{"driftmit: drift-resilient readout error mitigation experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(driftmit::kArtifactVersion));
    Flags f;
    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "Print the shipped preset names and exit");

    auto* simulate = app.add_subcommand("simulate", "Generate shot records");
    auto* mitigate = app.add_subcommand("mitigate", "Mitigated estimates from records");
    auto* oracle = app.add_subcommand("oracle", "Exact outcome tables and mitigated values");
    auto* diagnose = app.add_subcommand("diagnose", "Decay curves and defective-qubit flags");
    auto* drift = app.add_subcommand("drift", "Interleaved versus blocked execution under drift");
    auto* report = app.add_subcommand("report", "Run every analysis and check expected results");
    for (auto* sub : {simulate, mitigate, oracle, diagnose, drift, report}) {
        add_common(sub, f);
    }
    for (auto* sub : {mitigate, diagnose, report}) {
        sub->add_option("--records", f.records, "Analyse this record file instead of simulating")
            ->check(CLI::ExistingFile);
    }
    report->add_option("--expected", f.expected, "Expected-results file")->check(CLI::ExistingFile);

    app.require_subcommand(0, 1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitSchema;
    }
    if (list_presets) {
        for (const auto& name : preset_names()) {
            std::cout << name << '\n';
        }
        return kExitOk;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kExitSchema;
    }
    CLI::App* sub = app.get_subcommands().front();

    try {
        std::optional<std::filesystem::path> config_path;
        if (!f.preset.empty()) {
            config_path = preset_path(f.preset);
        } else if (!f.config.empty()) {
            config_path = f.config;
        } else {
            throw ConfigError("one of --config or --preset is required");
        }
        ExperimentConfig cfg = load_config(*config_path, f.seed);
        if (!f.format.empty()) {
            cfg.format = driftmit::record_format_from_string(f.format);
            cfg.resolved["output"]["format"] = f.format;
            cfg.hash = driftmit::fnv1a64(cfg.resolved.dump());
        }
        CommandOptions options;
        options.out_dir = f.out;
        options.threads = f.threads;
        if (!f.records.empty()) {
            options.records = f.records;
        }
        if (!f.expected.empty()) {
            options.expected = f.expected;
        }
        const std::string name = sub->get_name();
        if (name == "simulate") {
            return cmd_simulate(cfg, options);
        }
        if (name == "mitigate") {
            return cmd_mitigate(cfg, options);
        }
        if (name == "oracle") {
            return cmd_oracle(cfg, options);
        }
        if (name == "diagnose") {
            return cmd_diagnose(cfg, options);
        }
        if (name == "drift") {
            return cmd_drift(cfg, options);
        }
        return cmd_report(cfg, options, config_path);
    } catch (const ConfigError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
