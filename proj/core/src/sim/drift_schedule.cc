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

#include "driftmit/sim/drift_schedule.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace driftmit {

namespace {

std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b, double t) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("drift override endpoints have different lengths");
    }
    std::vector<double> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = (1.0 - t) * a[k] + t * b[k];
    }
    return out;
}

template <typename T>
std::optional<T> blend(const std::optional<T>& start, const std::optional<T>& finish, double t) {
    if (!start) {
        return std::nullopt;
    }
    if (!finish || t == 0.0) {
        return start;
    }
    if constexpr (std::is_same_v<T, TwirledChannel>) {
        return mix(*start, *finish, t);
    } else {
        return lerp(*start, *finish, t);
    }
}

void check_length(const std::optional<std::vector<double>>& v, std::size_t n, const char* name) {
    if (!v) {
        return;
    }
    if (v->size() != n) {
        throw std::invalid_argument(std::string("drift override ") + name + " needs one entry per qubit");
    }
    // Endpoints in [0, 1] keep every interpolated value in range too.
    for (double x : *v) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::invalid_argument(std::string("drift override ") + name + " must lie in [0, 1]");
        }
    }
}

void check_pairing(const NoiseOverride& start, const NoiseOverride& finish) {
    bool orphan = (finish.epsilon && !start.epsilon) || (finish.eps01 && !start.eps01) ||
                  (finish.eps10 && !start.eps10) || (finish.gamma_down && !start.gamma_down) ||
                  (finish.gamma_up && !start.gamma_up) || (finish.channel && !start.channel);
    if (orphan) {
        throw std::invalid_argument("drift segment sets a finish value without a start value");
    }
}

void check_override(const NoiseOverride& o, std::size_t n) {
    check_length(o.epsilon, n, "epsilon");
    check_length(o.eps01, n, "eps01");
    check_length(o.eps10, n, "eps10");
    check_length(o.gamma_down, n, "gamma_down");
    check_length(o.gamma_up, n, "gamma_up");
    if (o.channel && o.channel->num_qubits() != n) {
        throw std::invalid_argument("drift override channel has the wrong qubit count");
    }
    if (o.channel && (o.epsilon || o.eps01 || o.eps10)) {
        throw std::invalid_argument("drift override sets both a channel and per-qubit error rates");
    }
    if (o.epsilon && (o.eps01 || o.eps10)) {
        throw std::invalid_argument("drift override sets epsilon together with eps01/eps10");
    }
}

void apply(const NoiseOverride& o, ShotNoise& noise) {
    if (o.channel) {
        noise.readout = ReadoutModel::twirled(*o.channel);
    }
    if (o.epsilon) {
        noise.readout = ReadoutModel::symmetric(*o.epsilon);
    }
    if (o.eps01 || o.eps10) {
        if (noise.readout.kind != ReadoutModel::Kind::local) {
            throw std::invalid_argument("eps01/eps10 drift overrides need a local readout model");
        }
        if (o.eps01) {
            noise.readout.eps01 = *o.eps01;
        }
        if (o.eps10) {
            noise.readout.eps10 = *o.eps10;
        }
        noise.readout.validate();
    }
    if (o.gamma_down) {
        noise.decay.gamma_down = *o.gamma_down;
    }
    if (o.gamma_up) {
        noise.decay.gamma_up = *o.gamma_up;
    }
    noise.decay.validate();
}

}  // namespace

bool NoiseOverride::empty() const noexcept {
    return !epsilon && !eps01 && !eps10 && !gamma_down && !gamma_up && !channel;
}

std::string_view to_string(Interpolation interp) {
    return interp == Interpolation::step ? "step" : "linear";
}

Interpolation interpolation_from_string(std::string_view name) {
    if (name == "step") {
        return Interpolation::step;
    }
    if (name == "linear") {
        return Interpolation::linear;
    }
    throw std::invalid_argument("unknown interpolation: " + std::string(name));
}

DriftSchedule::DriftSchedule(std::vector<DriftSegment> segments, Interpolation interp)
    : segments_(std::move(segments)), interp_(interp) {
    std::sort(segments_.begin(), segments_.end(),
              [](const DriftSegment& a, const DriftSegment& b) { return a.begin < b.begin; });
}

DriftSchedule DriftSchedule::linear_epsilon_ramp(std::size_t n_shots, std::size_t num_qubits, double from,
                                                 double to) {
    DriftSegment seg;
    seg.begin = 0;
    seg.end = n_shots;
    seg.start.epsilon = std::vector<double>(num_qubits, from);
    seg.finish.epsilon = std::vector<double>(num_qubits, to);
    return DriftSchedule({seg}, Interpolation::linear);
}

DriftSchedule DriftSchedule::epsilon_step(std::size_t n_shots, std::size_t num_qubits, double first,
                                          double second) {
    DriftSegment a, b;
    a.begin = 0;
    a.end = n_shots / 2;
    a.start.epsilon = std::vector<double>(num_qubits, first);
    b.begin = n_shots / 2;
    b.end = n_shots;
    b.start.epsilon = std::vector<double>(num_qubits, second);
    return DriftSchedule({a, b}, Interpolation::step);
}

void DriftSchedule::validate(std::size_t n_shots, std::size_t num_qubits) const {
    if (segments_.empty()) {
        return;
    }
    std::size_t expected = 0;
    for (const auto& seg : segments_) {
        if (seg.begin != expected) {
            throw std::invalid_argument("drift schedule leaves shots uncovered or overlapping at shot " +
                                        std::to_string(expected));
        }
        if (seg.end <= seg.begin) {
            throw std::invalid_argument("drift segment must have end > begin");
        }
        check_override(seg.start, num_qubits);
        check_override(seg.finish, num_qubits);
        check_pairing(seg.start, seg.finish);
        expected = seg.end;
    }
    if (expected != n_shots) {
        throw std::invalid_argument("drift schedule covers " + std::to_string(expected) + " shots, run has " +
                                    std::to_string(n_shots));
    }
}

std::size_t DriftSchedule::segment_of(std::size_t shot) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), shot,
                               [](std::size_t s, const DriftSegment& seg) { return s < seg.begin; });
    if (it == segments_.begin() || shot >= (it - 1)->end) {
        throw std::out_of_range("shot " + std::to_string(shot) + " is not covered by the drift schedule");
    }
    return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

bool DriftSchedule::varies_within(std::size_t segment) const {
    return interp_ == Interpolation::linear && !segments_.at(segment).finish.empty();
}

ShotNoise DriftSchedule::resolve(const ShotNoise& base, std::size_t shot) const {
    if (segments_.empty()) {
        return base;
    }
    const auto& seg = segments_[segment_of(shot)];
    double t = 0.0;
    // Linear segments reach `finish` exactly at their last shot.
    if (interp_ == Interpolation::linear && seg.end - seg.begin > 1) {
        t = static_cast<double>(shot - seg.begin) / static_cast<double>(seg.end - seg.begin - 1);
    }
    NoiseOverride o;
    o.epsilon = blend(seg.start.epsilon, seg.finish.epsilon, t);
    o.eps01 = blend(seg.start.eps01, seg.finish.eps01, t);
    o.eps10 = blend(seg.start.eps10, seg.finish.eps10, t);
    o.gamma_down = blend(seg.start.gamma_down, seg.finish.gamma_down, t);
    o.gamma_up = blend(seg.start.gamma_up, seg.finish.gamma_up, t);
    o.channel = blend(seg.start.channel, seg.finish.channel, t);
    ShotNoise out = base;
    apply(o, out);
    return out;
}

TwirledChannel mix(const TwirledChannel& a, const TwirledChannel& b, double t) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("cannot mix channels of different sizes");
    }
    std::map<BitString, double> acc;
    for (const auto& term : a.terms()) {
        acc[term.mask] += (1.0 - t) * term.weight;
    }
    for (const auto& term : b.terms()) {
        acc[term.mask] += t * term.weight;
    }
    std::vector<TwirledChannel::Term> terms;
    for (auto& [mask, w] : acc) {
        terms.push_back({mask, w});
    }
    return TwirledChannel(a.num_qubits(), std::move(terms), a.is_quasi() || b.is_quasi(), 1e-9);
}

}  // namespace driftmit
