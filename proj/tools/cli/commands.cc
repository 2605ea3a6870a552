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

#include "commands.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "driftmit/analysis/decay_curves.h"
#include "driftmit/analysis/drift_experiment.h"
#include "driftmit/analysis/extrapolate.h"
#include "driftmit/analysis/oracle.h"
#include "driftmit/mitigation/amplified.h"
#include "driftmit/mitigation/estimate.h"
#include "driftmit/mitigation/hybrid.h"
#include "driftmit/mitigation/post_selection.h"
#include "driftmit/sim/record_io.h"

namespace driftmit::cli {

namespace {

using nlohmann::json;

// Largest sequence table written out in full.
constexpr std::size_t kMaxListedSequenceBits = 12;

std::string format_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

json window_json(Window w) {
    return json::array({w.begin, w.end});
}

json sequence_json(const std::vector<BitString>& seq) {
    json out = json::array();
    for (const auto& s : seq) {
        out.push_back(s.str());
    }
    return out;
}

std::size_t sequence_index(const ShotRecord& rec, std::size_t n) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rec.slots.size(); ++i) {
        idx |= static_cast<std::size_t>(rec.slots[i].to_index()) << (i * n);
    }
    return idx;
}

Statistic statistic_of(const ExperimentConfig& cfg) {
    return cfg.mitigation.statistic.value_or(statistic_for(cfg.sim.plan.scheme));
}

void write_json(const std::filesystem::path& path, const json& doc) {
    atomic_write_file(path, doc.dump(2) + "\n");
}

std::string csv_header(const json& header) {
    json meta = header;
    meta.erase("config");
    meta.erase("results");
    return "# " + meta.dump() + "\n";
}

std::filesystem::path prepare_out(const CommandOptions& options) {
    std::filesystem::create_directories(options.out_dir);
    return options.out_dir;
}

std::string records_file_name(RecordFormat format) {
    return "records." + std::string(to_string(format));
}

}  // namespace

json output_header(const ExperimentConfig& cfg, std::string_view command) {
    return {
        {"artifact", "driftmit"},
        {"version", kArtifactVersion},
        {"command", command},
        {"config_hash", hex64(cfg.hash)},
        {"seed", cfg.seed},
        {"config", cfg.resolved},
    };
}

RecordSet simulate_records(const ExperimentConfig& cfg, unsigned threads) {
    RecordSet set = run_shots(cfg.sim, cfg.n_shots, cfg.seed, threads);
    set.info.config_hash = cfg.hash;
    return set;
}

RecordSet obtain_records(const ExperimentConfig& cfg, const CommandOptions& options) {
    if (!options.records) {
        return simulate_records(cfg, options.threads);
    }
    RecordSet set = load_records(*options.records);
    if (set.info.num_qubits != cfg.sim.num_qubits) {
        throw std::runtime_error("record file has " + std::to_string(set.info.num_qubits) +
                                 " qubits, config has " + std::to_string(cfg.sim.num_qubits));
    }
    return set;
}

json simulate_summary(const ExperimentConfig& cfg, const RecordSet& set) {
    const auto& plan = set.info.plan;
    std::size_t n = set.info.num_qubits;
    json out = {{"n_shots", set.records.size()}, {"num_qubits", n}, {"scheme", to_string(plan.scheme)},
                {"layout", to_string(plan.layout)}};
    std::size_t max_slots = 0;
    for (const auto& rec : set.records) {
        max_slots = std::max(max_slots, rec.slots.size());
    }
    out["record_slots"] = max_slots;

    if (set.info.postselect_k > 0) {
        auto ps = post_select(set, set.info.postselect_k);
        out["postselect"] = {{"k", set.info.postselect_k}, {"success_rate", ps.success_rate}};
    }

    Statistic stat = statistic_of(cfg);
    json levels = json::array();
    for (int j = 0; j <= plan.j_max; ++j) {
        auto dist = amplified_distribution(set, j, stat);
        double p = dist.probability(cfg.mitigation.target);
        levels.push_back({{"j", j},
                          {"window", window_json(plan.window(j))},
                          {"statistic", to_string(stat)},
                          {"n_shots", dist.n_shots},
                          {"target_probability", p},
                          {"target_stderr", std::sqrt(dist.variance(cfg.mitigation.target))}});
    }
    out["levels"] = levels;

    if (plan.layout == Layout::shared && n * max_slots <= kMaxListedSequenceBits && !set.records.empty()) {
        std::vector<std::size_t> counts(std::size_t{1} << (n * max_slots), 0);
        for (const auto& rec : set.records) {
            ++counts[sequence_index(rec, n)];
        }
        json seqs = json::array();
        double total = static_cast<double>(set.records.size());
        for (std::size_t idx = 0; idx < counts.size(); ++idx) {
            std::vector<BitString> seq;
            for (std::size_t i = 0; i < max_slots; ++i) {
                seq.push_back(BitString::from_index((idx >> (i * n)) & ((std::size_t{1} << n) - 1), n));
            }
            seqs.push_back({{"sequence", sequence_json(seq)},
                            {"count", counts[idx]},
                            {"frequency", static_cast<double>(counts[idx]) / total}});
        }
        out["sequence_frequencies"] = seqs;
    }
    return out;
}

// Signed distributions are reported only for registers this narrow.
constexpr std::size_t kMaxDistributionQubits = 12;

json mitigate_results(const ExperimentConfig& cfg, const RecordSet& input) {
    const auto& ms = cfg.mitigation;
    json out = json::object();
    const RecordSet* set = &input;
    PostSelection ps;
    double discarded = 0;
    if (ms.postselect_k > 0) {
        ps = post_select(input, ms.postselect_k);
        set = &ps.kept;
        discarded = 1.0 - ps.success_rate;
        out["postselect"] = {{"k", ms.postselect_k}, {"success_rate", ps.success_rate}, {"kept", ps.kept.records.size()}};
    }
    if (set->info.plan.scheme != cfg.sim.plan.scheme || set->info.plan.j_max < ms.m) {
        throw std::runtime_error("record plan is incompatible with the configured scheme or order");
    }
    bool majority = set->info.plan.scheme == Scheme::majority;
    RecordMitigationOptions opts;
    opts.statistic = ms.statistic;
    opts.bootstrap_resamples = ms.bootstrap_resamples;
    opts.bootstrap_seed = ms.bootstrap_seed;

    auto series = [&](bool hybrid) {
        json rows = json::array();
        std::vector<double> orders, values, errors;
        for (int m = 0; m <= ms.m; ++m) {
            MitigationEstimate est;
            if (majority && !hybrid) {
                est = majority_vote(*set, m, ms.target);
            } else {
                auto o = opts;
                if (hybrid) {
                    o.hybrid_inverse = ms.hybrid_inverse;
                    o.hybrid_local_inverse = ms.hybrid_local_inverse;
                }
                est = mitigate_records(*set, m, ms.target, o);
            }
            est.discarded_fraction = discarded;
            rows.push_back(est.to_json());
            orders.push_back(m);
            values.push_back(est.value);
            errors.push_back(est.stderr_);
        }
        json block = {{"estimates", rows}};
        if (ms.extrapolate_to && !majority) {
            bool weighted = std::all_of(errors.begin(), errors.end(), [](double e) { return e > 0; });
            auto x = extrapolate(orders, values, *ms.extrapolate_to,
                                 weighted ? std::span<const double>(errors) : std::span<const double>{});
            block["extrapolation"] = {{"target_order", *ms.extrapolate_to},
                                      {"value", x.value},
                                      {"stderr", x.stderr_},
                                      {"f_inf", x.f_inf},
                                      {"c", x.c},
                                      {"r", x.r},
                                      {"rss", x.rss},
                                      {"monotone", x.monotone}};
        }
        return block;
    };

    out["target"] = ms.target.str();
    out["statistic"] = majority ? "majority" : to_string(statistic_of(cfg));
    json plain = series(false);
    out["estimates"] = plain["estimates"];
    if (plain.contains("extrapolation")) {
        out["extrapolation"] = plain["extrapolation"];
    }
    if (ms.has_hybrid()) {
        out["hybrid"] = series(true);
        if (ms.hybrid_inverse && set->info.num_qubits <= kMaxDistributionQubits) {
            std::vector<AmplifiedDistribution> inputs;
            for (int j = 0; j <= ms.m; ++j) {
                inputs.push_back(amplified_distribution(*set, j, ms.statistic));
            }
            auto dist = mitigate_hybrid_distribution(inputs, *ms.hybrid_inverse, ms.m);
            double negative = 0;
            for (const auto& [s, p] : dist) {
                negative += std::min(p, 0.0);
            }
            out["hybrid"]["distribution"] = {{"m", ms.m},
                                             {"tvd_to_target", total_variation(dist, QuasiDistribution{{ms.target, 1.0}})},
                                             {"negative_mass", negative}};
        }
    }
    if (cfg.sim.feedforward && !majority) {
        const auto& ff = *cfg.sim.feedforward;
        bool weighted = set->info.plan.scheme == Scheme::weighted;
        json rows = json::array();
        for (int m = 0; m <= ms.m; ++m) {
            rows.push_back(mitigate_feedforward(*set, ff[0], ff[1], m, weighted).to_json());
        }
        out["feedforward"] = rows;
    }
    return out;
}

json oracle_results(const ExperimentConfig& cfg) {
    const auto& sim = cfg.sim;
    const auto& plan = sim.plan;
    std::size_t n = sim.num_qubits;
    if (n > kMaxOracleQubits) {
        throw std::runtime_error("the oracle supports at most " + std::to_string(kMaxOracleQubits) +
                                 " qubits, config has " + std::to_string(n));
    }
    OracleModel model = OracleModel::from_config(sim);
    double acceptance = 1.0;
    Vector init = initial_distribution(model, sim.prep, sim.initial_state, &acceptance);
    Statistic stat = statistic_of(cfg);
    const BitString& target = cfg.mitigation.target;
    json out = {{"target", target.str()}, {"statistic", to_string(stat)}};
    if (sim.prep.mode == PrepMode::post_selected) {
        out["postselect_acceptance"] = acceptance;
    }

    json levels = json::array();
    for (int j = 0; j <= plan.j_max; ++j) {
        Window w = plan.window(j);
        json level = {{"j", j},
                      {"window", window_json(w)},
                      {"value", oracle_level_value(model, init, plan, j, stat, target)}};
        if (stat == Statistic::parity) {
            Vector dist = oracle_parity(model, init, plan.slots(j), w);
            level["parity_distribution"] = std::vector<double>(dist.data(), dist.data() + dist.size());
        }
        levels.push_back(level);
    }
    out["levels"] = levels;

    json mitigated = json::array();
    for (int m = 0; m <= cfg.mitigation.m; ++m) {
        double v = stat == Statistic::majority ? oracle_level_value(model, init, plan, m, stat, target)
                                               : oracle_mitigated(model, init, plan, m, stat, target);
        mitigated.push_back({{"m", m}, {"value", v}});
    }
    out["mitigated"] = mitigated;

    int slots = plan.slots(plan.j_max);
    if (n * static_cast<std::size_t>(slots) <= kMaxListedSequenceBits) {
        bool exact = cfg.oracle_exact && sim.prep.mode == PrepMode::native;
        OracleResult table = oracle_enumerate(model, init, slots, exact);
        json seqs = json::array();
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            json row = {{"sequence", sequence_json(table.sequence(idx))}, {"probability", table.probability(idx)}};
            if (exact) {
                row["exact"] = table.exact_table()[idx].str();
            }
            seqs.push_back(row);
        }
        out["sequences"] = seqs;
        out["total_probability"] = table.total();
        if (sim.feedforward) {
            const auto& ff = *sim.feedforward;
            json rows = json::array();
            for (int j = 0; j <= plan.j_max; ++j) {
                rows.push_back({{"j", j},
                                {"unweighted", table.feedforward(plan.window(j), 0, ff[0], ff[1], false)},
                                {"weighted", table.feedforward(plan.window(j), 0, ff[0], ff[1], true)}});
            }
            out["feedforward"] = rows;
        }
    }
    return out;
}

json diagnose_results(const ExperimentConfig& cfg, const RecordSet& set) {
    auto curves = decay_curves(set, cfg.diagnose_bit);
    json rows = json::array();
    for (const auto& c : curves) {
        json row = {{"qubit", c.qubit}, {"slope", curve_slope(c)}, {"population", c.population}};
        if (c.population.size() >= 4) {
            auto fit = fit_decay(c);
            row["fit"] = {{"offset", fit.offset},
                          {"amplitude", fit.amplitude},
                          {"ratio", fit.ratio},
                          {"rate", fit.rate},
                          {"rms_residual", fit.rms_residual}};
        }
        rows.push_back(row);
    }
    return {{"post_select_bit", cfg.diagnose_bit},
            {"flag_ratio", cfg.flag_ratio},
            {"curves", rows},
            {"flagged", flag_defective(curves, cfg.flag_ratio)}};
}

json drift_results(const ExperimentConfig& cfg, unsigned threads) {
    if (cfg.sim.drift.empty()) {
        throw ConfigError("config.drift: the drift command needs a drift schedule");
    }
    DriftExperimentConfig dc;
    dc.config = cfg.sim;
    dc.n_shots = cfg.n_shots;
    dc.seed = cfg.seed;
    dc.m = cfg.mitigation.m;
    dc.target = cfg.mitigation.target;
    dc.ideal = cfg.mitigation.target == cfg.sim.initial_state ? 1.0 : 0.0;
    dc.threads = threads;
    dc.oracle_samples = cfg.drift_oracle_samples;
    return run_drift_experiment(dc).to_json();
}

json evaluate_checks(const json& results, const json& expected, bool& all_passed) {
    all_passed = true;
    json out = json::array();
    if (!expected.contains("checks") || !expected["checks"].is_array()) {
        throw ConfigError("expected-results file needs a \"checks\" array");
    }
    for (const auto& check : expected["checks"]) {
        std::string path = check.at("path").get<std::string>();
        json row = check;
        bool pass = false;
        try {
            const json& actual = results.at(json::json_pointer(path));
            row["actual"] = actual;
            if (check.contains("equals")) {
                pass = actual == check["equals"];
            } else {
                double v = actual.get<double>();
                pass = std::isfinite(v);
                if (check.contains("value")) {
                    double tol = check.value("tol", 0.0);
                    pass = pass && std::abs(v - check["value"].get<double>()) <= tol;
                }
                if (check.contains("min")) {
                    pass = pass && v >= check["min"].get<double>();
                }
                if (check.contains("max")) {
                    pass = pass && v <= check["max"].get<double>();
                }
            }
        } catch (const json::exception& e) {
            row["error"] = e.what();
        }
        row["pass"] = pass;
        all_passed = all_passed && pass;
        out.push_back(row);
    }
    return out;
}

int cmd_simulate(const ExperimentConfig& cfg, const CommandOptions& options) {
    auto dir = prepare_out(options);
    RecordSet set = simulate_records(cfg, options.threads);
    atomic_write_file(dir / records_file_name(cfg.format), serialize_records(set, cfg.format));
    json doc = output_header(cfg, "simulate");
    doc["records_file"] = records_file_name(cfg.format);
    doc["results"] = simulate_summary(cfg, set);
    write_json(dir / "simulate.json", doc);
    return kExitOk;
}

int cmd_mitigate(const ExperimentConfig& cfg, const CommandOptions& options) {
    auto dir = prepare_out(options);
    RecordSet set = obtain_records(cfg, options);
    json doc = output_header(cfg, "mitigate");
    doc["records_config_hash"] = hex64(set.info.config_hash);
    doc["records_seed"] = set.info.seed;
    doc["results"] = mitigate_results(cfg, set);
    write_json(dir / "mitigate.json", doc);

    std::string csv = csv_header(doc) + "series,m,value,stderr\n";
    auto rows = [&](const char* name, const json& estimates) {
        for (const auto& e : estimates) {
            csv += std::string(name) + "," + std::to_string(e["m"].get<int>()) + "," +
                   format_double(e["value"].get<double>()) + "," + format_double(e["stderr"].get<double>()) + "\n";
        }
    };
    rows("plain", doc["results"]["estimates"]);
    if (doc["results"].contains("hybrid")) {
        rows("hybrid", doc["results"]["hybrid"]["estimates"]);
    }
    atomic_write_file(dir / "mitigate.csv", csv);
    return kExitOk;
}

int cmd_oracle(const ExperimentConfig& cfg, const CommandOptions& options) {
    auto dir = prepare_out(options);
    json doc = output_header(cfg, "oracle");
    doc["results"] = oracle_results(cfg);
    write_json(dir / "oracle.json", doc);
    return kExitOk;
}

int cmd_diagnose(const ExperimentConfig& cfg, const CommandOptions& options) {
    auto dir = prepare_out(options);
    RecordSet set = obtain_records(cfg, options);
    json doc = output_header(cfg, "diagnose");
    doc["results"] = diagnose_results(cfg, set);
    write_json(dir / "diagnose.json", doc);
    std::ostringstream csv;
    csv << csv_header(doc);
    write_curves_csv(csv, decay_curves(set, cfg.diagnose_bit));
    atomic_write_file(dir / "curves.csv", csv.str());
    return kExitOk;
}

int cmd_drift(const ExperimentConfig& cfg, const CommandOptions& options) {
    auto dir = prepare_out(options);
    json doc = output_header(cfg, "drift");
    doc["results"] = drift_results(cfg, options.threads);
    write_json(dir / "drift.json", doc);
    std::string csv = csv_header(doc) + "order,value,stderr,bias,oracle_value,oracle_bias,excess_over_envelope\n";
    for (const auto& row : doc["results"]["rows"]) {
        const json& est = row.at("estimate");
        csv += row.at("order").get<std::string>() + "," + format_double(est.at("value").get<double>()) + "," +
               format_double(est.at("stderr").get<double>());
        for (const char* key : {"bias", "oracle_value", "oracle_bias", "excess_over_envelope"}) {
            csv += "," + format_double(row.at(key).get<double>());
        }
        csv += "\n";
    }
    atomic_write_file(dir / "drift.csv", csv);
    return kExitOk;
}

int cmd_report(const ExperimentConfig& cfg, const CommandOptions& options,
               const std::optional<std::filesystem::path>& config_path) {
    auto dir = prepare_out(options);
    json results = json::object();
    RecordSet set = obtain_records(cfg, options);
    results["simulate"] = simulate_summary(cfg, set);
    results["mitigate"] = mitigate_results(cfg, set);
    std::size_t n = cfg.sim.num_qubits;
    if (n <= kMaxOracleQubits) {
        results["oracle"] = oracle_results(cfg);
    } else {
        results["oracle"] = {{"skipped", "register wider than the oracle limit"}};
    }
    if (cfg.sim.plan.slots(cfg.sim.plan.j_max) >= 2 && cfg.sim.plan.layout == Layout::shared) {
        results["diagnose"] = diagnose_results(cfg, set);
    }
    if (!cfg.sim.drift.empty()) {
        results["drift"] = drift_results(cfg, options.threads);
    }

    json doc = output_header(cfg, "report");
    doc["results"] = results;
    std::optional<std::filesystem::path> expected_path = options.expected;
    if (!expected_path && config_path) {
        auto candidate = *config_path;
        candidate.replace_extension(".expected.json");
        if (std::filesystem::exists(candidate)) {
            expected_path = candidate;
        }
    }
    bool passed = true;
    if (expected_path) {
        std::ifstream in(*expected_path);
        if (!in) {
            throw ConfigError("cannot open expected-results file " + expected_path->string());
        }
        json expected;
        try {
            expected = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("invalid expected-results file: " + std::string(e.what()));
        }
        doc["checks"] = evaluate_checks(results, expected, passed);
        for (const auto& c : doc["checks"]) {
            std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["path"].get<std::string>();
            if (c.contains("actual")) {
                std::cout << " = " << c["actual"].dump();
            }
            std::cout << '\n';
        }
    }
    doc["passed"] = passed;
    write_json(dir / "report.json", doc);
    return passed ? kExitOk : kExitCheckFailed;
}

}  // namespace driftmit::cli
