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

#include "config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "driftmit/mitigation/hybrid.h"

#ifndef DRIFTMIT_PRESET_DIR
#define DRIFTMIT_PRESET_DIR "presets"
#endif

namespace driftmit::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

std::string join(const std::string& path, std::string_view key) {
    return path + "." + std::string(key);
}

void require_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(join(path, key), "unknown key");
        }
    }
}

const json* find(const json& j, std::string_view key) {
    auto it = j.find(std::string(key));
    return it == j.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path, double lo, double hi) {
    if (!v.is_number()) {
        fail(path, "expected a number");
    }
    double x = v.get<double>();
    if (!(x >= lo && x <= hi)) {
        std::ostringstream msg;
        msg << "value " << x << " outside [" << lo << ", " << hi << "]";
        fail(path, msg.str());
    }
    return x;
}

double number(const json& j, std::string_view key, const std::string& path, double fallback, double lo,
              double hi) {
    const json* v = find(j, key);
    return v ? as_number(*v, join(path, key), lo, hi) : fallback;
}

std::int64_t integer(const json& j, std::string_view key, const std::string& path, std::int64_t fallback,
                     std::int64_t lo, std::int64_t hi) {
    const json* v = find(j, key);
    if (!v) {
        return fallback;
    }
    if (!v->is_number_integer()) {
        fail(join(path, key), "expected an integer");
    }
    std::int64_t x = v->is_number_unsigned() && v->get<std::uint64_t>() > static_cast<std::uint64_t>(hi)
                         ? hi + 1
                         : v->get<std::int64_t>();
    if (x < lo || x > hi) {
        fail(join(path, key), "integer " + v->dump() + " outside [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
    }
    return x;
}

std::uint64_t unsigned_integer(const json& j, std::string_view key, const std::string& path,
                               std::uint64_t fallback) {
    const json* v = find(j, key);
    if (!v) {
        return fallback;
    }
    if (!v->is_number_unsigned()) {
        fail(join(path, key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
}

bool boolean(const json& j, std::string_view key, const std::string& path, bool fallback) {
    const json* v = find(j, key);
    if (!v) {
        return fallback;
    }
    if (!v->is_boolean()) {
        fail(join(path, key), "expected true or false");
    }
    return v->get<bool>();
}

std::string string(const json& j, std::string_view key, const std::string& path, std::string fallback) {
    const json* v = find(j, key);
    if (!v) {
        return fallback;
    }
    if (!v->is_string()) {
        fail(join(path, key), "expected a string");
    }
    return v->get<std::string>();
}

template <typename F>
auto enum_value(const json& j, std::string_view key, const std::string& path, std::string fallback, F convert) {
    std::string name = string(j, key, path, std::move(fallback));
    try {
        return convert(name);
    } catch (const std::invalid_argument& e) {
        fail(join(path, key), e.what());
    }
}

// A number (broadcast) or an array with one entry per qubit.
std::vector<double> per_qubit(const json& v, const std::string& path, std::size_t n, double lo, double hi) {
    if (v.is_number()) {
        return std::vector<double>(n, as_number(v, path, lo, hi));
    }
    if (!v.is_array()) {
        fail(path, "expected a number or an array of numbers");
    }
    if (v.size() != n) {
        fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(as_number(v[k], path + "[" + std::to_string(k) + "]", lo, hi));
    }
    return out;
}

std::vector<double> per_qubit(const json& j, std::string_view key, const std::string& path, std::size_t n,
                              double fallback) {
    const json* v = find(j, key);
    return v ? per_qubit(*v, join(path, key), n, 0.0, 1.0) : std::vector<double>(n, fallback);
}

BitString bits(const json& v, const std::string& path, std::size_t n) {
    if (!v.is_string()) {
        fail(path, "expected a bit string");
    }
    auto s = v.get<std::string>();
    if (s.size() != n || s.find_first_not_of("01") != std::string::npos) {
        fail(path, "expected a string of " + std::to_string(n) + " characters 0/1 (qubit 0 first)");
    }
    return BitString::from_string(s);
}

TwirledChannel parse_channel(const json& j, const std::string& path, std::size_t n, bool quasi, json& out) {
    const json* terms = find(j, "terms");
    if (!terms || !terms->is_array() || terms->empty()) {
        fail(join(path, "terms"), "expected a non-empty array of {mask, weight}");
    }
    std::vector<TwirledChannel::Term> parsed;
    double total = 0;
    bool has_zero = false;
    for (std::size_t i = 0; i < terms->size(); ++i) {
        std::string tp = join(path, "terms") + "[" + std::to_string(i) + "]";
        const json& t = (*terms)[i];
        require_object(t, tp, {"mask", "weight"});
        if (!find(t, "mask") || !find(t, "weight")) {
            fail(tp, "needs mask and weight");
        }
        BitString mask = bits(t["mask"], join(tp, "mask"), n);
        double w = quasi ? as_number(t["weight"], join(tp, "weight"), -1e6, 1e6)
                         : as_number(t["weight"], join(tp, "weight"), 0.0, 1.0);
        has_zero = has_zero || mask.none();
        total += w;
        parsed.push_back({mask, w});
    }
    // The identity weight may be left implicit.
    if (!has_zero) {
        parsed.push_back({BitString(n), 1.0 - total});
    }
    try {
        TwirledChannel c(n, parsed, quasi, 1e-9);
        json canon = json::array();
        for (const auto& t : c.terms()) {
            canon.push_back({{"mask", t.mask.str()}, {"weight", t.weight}});
        }
        out = {{"terms", canon}};
        return c;
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

json load_json_file(const std::filesystem::path& file, const std::string& path) {
    std::ifstream in(file);
    if (!in) {
        fail(path, "cannot open " + file.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(path, std::string("invalid JSON in ") + file.string() + ": " + e.what());
    }
}

ReadoutModel parse_readout(const json& j, const std::string& path, std::size_t n,
                           const std::filesystem::path& base_dir, json& out) {
    if (j.is_object() && find(j, "file")) {
        require_object(j, path, {"file"});
        json inner = load_json_file(base_dir / string(j, "file", path, ""), join(path, "file"));
        return parse_readout(inner, path, n, base_dir, out);
    }
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    std::string model = string(j, "model", path, "");
    try {
        if (model == "symmetric") {
            require_object(j, path, {"model", "epsilon"});
            if (!find(j, "epsilon")) {
                fail(path, "symmetric readout needs epsilon");
            }
            auto eps = per_qubit(j["epsilon"], join(path, "epsilon"), n, 0.0, 1.0);
            out = {{"model", "symmetric"}, {"epsilon", eps}};
            return ReadoutModel::symmetric(eps);
        }
        if (model == "local") {
            require_object(j, path, {"model", "eps01", "eps10"});
            auto e01 = per_qubit(j, "eps01", path, n, 0.0);
            auto e10 = per_qubit(j, "eps10", path, n, 0.0);
            out = {{"model", "local"}, {"eps01", e01}, {"eps10", e10}};
            return ReadoutModel::local(e01, e10);
        }
        if (model == "channel") {
            require_object(j, path, {"model", "terms"});
            json canon;
            auto c = parse_channel(j, path, n, false, canon);
            out = canon;
            out["model"] = "channel";
            return ReadoutModel::twirled(c);
        }
        if (model == "dense") {
            require_object(j, path, {"model", "matrix"});
            if (n > 12) {
                fail(path, "dense readout supports at most 12 qubits");
            }
            const json* rows = find(j, "matrix");
            std::size_t dim = std::size_t{1} << n;
            if (!rows || !rows->is_array() || rows->size() != dim) {
                fail(join(path, "matrix"), "expected " + std::to_string(dim) + " rows");
            }
            Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            for (std::size_t r = 0; r < dim; ++r) {
                std::string rp = join(path, "matrix") + "[" + std::to_string(r) + "]";
                if (!(*rows)[r].is_array() || (*rows)[r].size() != dim) {
                    fail(rp, "expected " + std::to_string(dim) + " entries");
                }
                for (std::size_t c = 0; c < dim; ++c) {
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                        as_number((*rows)[r][c], rp + "[" + std::to_string(c) + "]", 0.0, 1.0);
                }
            }
            auto am = AssignmentMatrix::from_matrix(m, 1e-9);
            out = {{"model", "dense"}, {"matrix", *rows}};
            return ReadoutModel::dense(am);
        }
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(join(path, "model"), "expected one of symmetric, local, channel, dense");
}

NoiseOverride parse_override(const json& j, const std::string& path, std::size_t n, json& out) {
    require_object(j, path, {"epsilon", "eps01", "eps10", "gamma_down", "gamma_up", "channel"});
    NoiseOverride o;
    out = json::object();
    auto take = [&](std::string_view key, std::optional<std::vector<double>>& slot) {
        if (const json* v = find(j, key)) {
            slot = per_qubit(*v, join(path, key), n, 0.0, 1.0);
            out[std::string(key)] = *slot;
        }
    };
    take("epsilon", o.epsilon);
    take("eps01", o.eps01);
    take("eps10", o.eps10);
    take("gamma_down", o.gamma_down);
    take("gamma_up", o.gamma_up);
    if (const json* c = find(j, "channel")) {
        require_object(*c, join(path, "channel"), {"terms"});
        json canon;
        o.channel = parse_channel(*c, join(path, "channel"), n, false, canon);
        out["channel"] = canon;
    }
    return o;
}

DriftSchedule parse_drift(const json& j, const std::string& path, std::size_t n, std::size_t n_shots, json& out) {
    require_object(j, path, {"interpolation", "segments", "ramp", "step"});
    int forms = (find(j, "segments") ? 1 : 0) + (find(j, "ramp") ? 1 : 0) + (find(j, "step") ? 1 : 0);
    if (forms != 1) {
        fail(path, "give exactly one of segments, ramp, step");
    }
    std::vector<DriftSegment> segments;
    Interpolation interp = Interpolation::linear;
    if (const json* shorthand = find(j, "ramp") ? find(j, "ramp") : find(j, "step")) {
        bool ramp = find(j, "ramp") != nullptr;
        std::string sp = join(path, ramp ? "ramp" : "step");
        if (find(j, "interpolation")) {
            fail(join(path, "interpolation"), "implied by the ramp/step shorthand");
        }
        require_object(*shorthand, sp, {"epsilon", "eps01", "eps10", "gamma_down", "gamma_up"});
        if (shorthand->empty()) {
            fail(sp, "names no parameter");
        }
        json first = json::object(), second = json::object();
        for (const auto& [key, v] : shorthand->items()) {
            if (!v.is_array() || v.size() != 2) {
                fail(join(sp, key), "expected [first, second]");
            }
            first[key] = v[0];
            second[key] = v[1];
        }
        json o1, o2;
        if (ramp) {
            DriftSegment seg{0, n_shots, parse_override(first, sp, n, o1), parse_override(second, sp, n, o2)};
            segments.push_back(seg);
        } else {
            interp = Interpolation::step;
            segments.push_back({0, n_shots / 2, parse_override(first, sp, n, o1), {}});
            segments.push_back({n_shots / 2, n_shots, parse_override(second, sp, n, o2), {}});
        }
    } else {
        interp = enum_value(j, "interpolation", path, "linear", interpolation_from_string);
        const json& segs = j["segments"];
        if (!segs.is_array() || segs.empty()) {
            fail(join(path, "segments"), "expected a non-empty array");
        }
        for (std::size_t i = 0; i < segs.size(); ++i) {
            std::string sp = join(path, "segments") + "[" + std::to_string(i) + "]";
            require_object(segs[i], sp, {"begin", "end", "start", "finish"});
            DriftSegment seg;
            seg.begin = static_cast<std::size_t>(integer(segs[i], "begin", sp, 0, 0, INT64_MAX));
            seg.end = static_cast<std::size_t>(integer(segs[i], "end", sp, static_cast<std::int64_t>(n_shots), 0,
                                                       INT64_MAX));
            json ignored;
            if (const json* s = find(segs[i], "start")) {
                seg.start = parse_override(*s, join(sp, "start"), n, ignored);
            }
            if (const json* f = find(segs[i], "finish")) {
                seg.finish = parse_override(*f, join(sp, "finish"), n, ignored);
            }
            segments.push_back(seg);
        }
    }
    DriftSchedule schedule(segments, interp);
    try {
        schedule.validate(n_shots, n);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    json canon = json::array();
    for (const auto& seg : schedule.segments()) {
        json s = {{"begin", seg.begin}, {"end", seg.end}};
        auto dump_override = [](const NoiseOverride& o) {
            json r = json::object();
            auto put = [&](const char* key, const std::optional<std::vector<double>>& v) {
                if (v) {
                    r[key] = *v;
                }
            };
            put("epsilon", o.epsilon);
            put("eps01", o.eps01);
            put("eps10", o.eps10);
            put("gamma_down", o.gamma_down);
            put("gamma_up", o.gamma_up);
            if (o.channel) {
                json terms = json::array();
                for (const auto& t : o.channel->terms()) {
                    terms.push_back({{"mask", t.mask.str()}, {"weight", t.weight}});
                }
                r["channel"] = {{"terms", terms}};
            }
            return r;
        };
        s["start"] = dump_override(seg.start);
        s["finish"] = dump_override(seg.finish);
        canon.push_back(s);
    }
    out = {{"interpolation", to_string(interp)}, {"segments", canon}};
    return schedule;
}

void set_hybrid_inverse(const ReadoutModel& approx, const std::string& path, MitigationSettings& ms) {
    try {
        if (approx.kind == ReadoutModel::Kind::local) {
            ms.hybrid_local_inverse = LocalTwirledChannel::twirled(approx.eps01, approx.eps10).inverse();
            return;
        }
        if (approx.num_qubits() > 12) {
            fail(path, "a non-local approximate model supports at most 12 qubits");
        }
        ms.hybrid_inverse = twirl_inverse(approx.to_matrix());
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

}  // namespace

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir,
                              std::optional<std::uint64_t> seed_override) {
    const std::string root = "config";
    require_object(doc, root,
                   {"name", "description", "num_qubits", "initial_state", "readout", "twirl", "decay", "prep",
                    "drift", "plan", "feedforward", "mitigation", "run", "diagnose", "drift_experiment", "oracle",
                    "output"});
    ExperimentConfig cfg;
    json& r = cfg.resolved;
    r = json::object();
    cfg.name = string(doc, "name", root, "unnamed");
    r["name"] = cfg.name;
    if (find(doc, "description")) {
        r["description"] = string(doc, "description", root, "");
    }
    if (!find(doc, "num_qubits")) {
        fail(root, "num_qubits is required");
    }
    std::size_t n = static_cast<std::size_t>(integer(doc, "num_qubits", root, 1, 1, 64));
    r["num_qubits"] = n;
    auto& sim = cfg.sim;
    sim.num_qubits = n;
    sim.initial_state = find(doc, "initial_state") ? bits(doc["initial_state"], join(root, "initial_state"), n)
                                                   : BitString(n);
    r["initial_state"] = sim.initial_state.str();

    // Run block first: drift segments default to the shot count.
    const json empty = json::object();
    const json& run = find(doc, "run") ? doc["run"] : empty;
    const std::string run_path = join(root, "run");
    require_object(run, run_path, {"n_shots", "seed"});
    if (!find(run, "n_shots")) {
        fail(run_path, "n_shots is required");
    }
    cfg.n_shots = static_cast<std::size_t>(integer(run, "n_shots", run_path, 1, 1, 1'000'000'000));
    cfg.seed = seed_override ? *seed_override : unsigned_integer(run, "seed", run_path, 0);
    r["run"] = {{"n_shots", cfg.n_shots}, {"seed", cfg.seed}};

    if (!find(doc, "readout")) {
        fail(root, "readout is required");
    }
    json readout_out;
    sim.readout = parse_readout(doc["readout"], join(root, "readout"), n, base_dir, readout_out);
    r["readout"] = readout_out;
    sim.twirl = boolean(doc, "twirl", root, false);
    r["twirl"] = sim.twirl;

    const json& decay = find(doc, "decay") ? doc["decay"] : empty;
    const std::string decay_path = join(root, "decay");
    require_object(decay, decay_path, {"gamma_down", "gamma_up"});
    sim.noise = QubitNoise{per_qubit(decay, "gamma_down", decay_path, n, 0.0),
                           per_qubit(decay, "gamma_up", decay_path, n, 0.0)};
    r["decay"] = {{"gamma_down", sim.noise.gamma_down}, {"gamma_up", sim.noise.gamma_up}};

    const json& prep = find(doc, "prep") ? doc["prep"] : empty;
    const std::string prep_path = join(root, "prep");
    require_object(prep, prep_path, {"x", "mode", "parity_j", "postselect_k"});
    sim.prep.x = per_qubit(prep, "x", prep_path, n, 0.0);
    sim.prep.mode = enum_value(prep, "mode", prep_path, "native", prep_mode_from_string);
    sim.prep.parity_j = static_cast<int>(integer(prep, "parity_j", prep_path, 0, 0, 15));
    sim.prep.postselect_k = static_cast<int>(integer(prep, "postselect_k", prep_path, 0, 0, 16));
    if (sim.prep.mode == PrepMode::post_selected && sim.prep.postselect_k == 0) {
        fail(prep_path, "post-selected mode needs postselect_k >= 1");
    }
    r["prep"] = {{"x", sim.prep.x},
                 {"mode", to_string(sim.prep.mode)},
                 {"parity_j", sim.prep.parity_j},
                 {"postselect_k", sim.prep.postselect_k}};

    const json& plan = find(doc, "plan") ? doc["plan"] : empty;
    const std::string plan_path = join(root, "plan");
    require_object(plan, plan_path, {"scheme", "j_max", "layout", "order", "reset_infidelity"});
    sim.plan.scheme = enum_value(plan, "scheme", plan_path, "basic", scheme_from_string);
    sim.plan.j_max = static_cast<int>(integer(plan, "j_max", plan_path, 0, 0, 15));
    sim.plan.layout = enum_value(plan, "layout", plan_path, "shared", layout_from_string);
    sim.plan.order = enum_value(plan, "order", plan_path, "interleaved", order_from_string);
    sim.reset_infidelity = number(plan, "reset_infidelity", plan_path, 0.0, 0.0, 1.0);
    r["plan"] = {{"scheme", to_string(sim.plan.scheme)},
                 {"j_max", sim.plan.j_max},
                 {"layout", to_string(sim.plan.layout)},
                 {"order", to_string(sim.plan.order)},
                 {"reset_infidelity", sim.reset_infidelity}};

    if (const json* ff = find(doc, "feedforward")) {
        if (!ff->is_array() || ff->size() != 2) {
            fail(join(root, "feedforward"), "expected [A0, A1]");
        }
        sim.feedforward = std::array<double, 2>{as_number((*ff)[0], join(root, "feedforward[0]"), -1e12, 1e12),
                                                as_number((*ff)[1], join(root, "feedforward[1]"), -1e12, 1e12)};
        r["feedforward"] = *ff;
    }

    if (const json* drift = find(doc, "drift")) {
        json drift_out;
        sim.drift = parse_drift(*drift, join(root, "drift"), n, cfg.n_shots, drift_out);
        r["drift"] = drift_out;
    }

    try {
        sim.validate(cfg.n_shots);
    } catch (const std::invalid_argument& e) {
        fail(root, e.what());
    }

    const json& mit = find(doc, "mitigation") ? doc["mitigation"] : empty;
    const std::string mit_path = join(root, "mitigation");
    require_object(mit, mit_path,
                   {"m", "target", "statistic", "hybrid", "postselect_k", "bootstrap_resamples", "bootstrap_seed",
                    "extrapolate_to"});
    auto& ms = cfg.mitigation;
    ms.m = static_cast<int>(integer(mit, "m", mit_path, sim.plan.j_max, 0, sim.plan.j_max));
    ms.target = find(mit, "target") ? bits(mit["target"], join(mit_path, "target"), n) : sim.initial_state;
    if (find(mit, "statistic")) {
        ms.statistic = enum_value(mit, "statistic", mit_path, "", statistic_from_string);
    }
    int default_k = sim.prep.mode == PrepMode::post_selected ? sim.prep.postselect_k : 0;
    ms.postselect_k = static_cast<int>(integer(mit, "postselect_k", mit_path, default_k, 0, default_k));
    ms.bootstrap_resamples = static_cast<int>(integer(mit, "bootstrap_resamples", mit_path, 200, 100, 100000));
    ms.bootstrap_seed = unsigned_integer(mit, "bootstrap_seed", mit_path, 0);
    r["mitigation"] = {{"m", ms.m},
                       {"target", ms.target.str()},
                       {"statistic", to_string(ms.statistic.value_or(statistic_for(sim.plan.scheme)))},
                       {"postselect_k", ms.postselect_k},
                       {"bootstrap_resamples", ms.bootstrap_resamples},
                       {"bootstrap_seed", ms.bootstrap_seed}};
    if (find(mit, "extrapolate_to")) {
        ms.extrapolate_to = number(mit, "extrapolate_to", mit_path, 0.0, 0.0, 100.0);
        if (ms.m < 2) {
            fail(join(mit_path, "extrapolate_to"), "extrapolation needs m >= 2 (three orders)");
        }
        r["mitigation"]["extrapolate_to"] = *ms.extrapolate_to;
    }
    if (const json* h = find(mit, "hybrid")) {
        const std::string hp = join(mit_path, "hybrid");
        require_object(*h, hp, {"approx"});
        if (!find(*h, "approx")) {
            fail(hp, "needs approx (the approximate assignment model)");
        }
        json approx_out;
        ReadoutModel approx = parse_readout((*h)["approx"], join(hp, "approx"), n, base_dir, approx_out);
        set_hybrid_inverse(approx, hp, ms);
        r["mitigation"]["hybrid"] = {{"approx", approx_out}};
    }

    const json& diag = find(doc, "diagnose") ? doc["diagnose"] : empty;
    const std::string diag_path = join(root, "diagnose");
    require_object(diag, diag_path, {"post_select_bit", "flag_ratio"});
    cfg.diagnose_bit = static_cast<int>(integer(diag, "post_select_bit", diag_path, 1, 0, 1));
    cfg.flag_ratio = number(diag, "flag_ratio", diag_path, 5.0, 1.0, 1e6);
    r["diagnose"] = {{"post_select_bit", cfg.diagnose_bit}, {"flag_ratio", cfg.flag_ratio}};

    const json& de = find(doc, "drift_experiment") ? doc["drift_experiment"] : empty;
    const std::string de_path = join(root, "drift_experiment");
    require_object(de, de_path, {"oracle_samples"});
    cfg.drift_oracle_samples = static_cast<std::size_t>(integer(de, "oracle_samples", de_path, 4096, 1, 1 << 24));
    r["drift_experiment"] = {{"oracle_samples", cfg.drift_oracle_samples}};

    const json& orc = find(doc, "oracle") ? doc["oracle"] : empty;
    const std::string orc_path = join(root, "oracle");
    require_object(orc, orc_path, {"exact"});
    cfg.oracle_exact = boolean(orc, "exact", orc_path, false);
    r["oracle"] = {{"exact", cfg.oracle_exact}};

    const json& output = find(doc, "output") ? doc["output"] : empty;
    const std::string out_path = join(root, "output");
    require_object(output, out_path, {"format"});
    cfg.format = enum_value(output, "format", out_path, "jsonl", record_format_from_string);
    r["output"] = {{"format", to_string(cfg.format)}};

    cfg.hash = fnv1a64(r.dump());
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
    json doc = load_json_file(path, "config");
    return parse_config(doc, path.parent_path(), seed_override);
}

std::filesystem::path preset_dir() {
    if (const char* env = std::getenv("DRIFTMIT_PRESET_DIR")) {
        return env;
    }
    return DRIFTMIT_PRESET_DIR;
}

std::filesystem::path preset_path(std::string_view name) {
    auto names = preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::string known;
        for (const auto& p : names) {
            known += (known.empty() ? "" : ", ") + p;
        }
        throw ConfigError("unknown preset '" + std::string(name) + "' (available: " + known + ")");
    }
    return preset_dir() / (std::string(name) + ".json");
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(preset_dir(), ec)) {
        auto file = entry.path().filename().string();
        const std::string suffix = ".json";
        if (file.size() > suffix.size() && file.ends_with(suffix) && !file.ends_with(".expected.json")) {
            names.push_back(file.substr(0, file.size() - suffix.size()));
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace driftmit::cli
