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
#include <optional>
#include <string_view>
#include <vector>

#include "driftmit/core/noise.h"
#include "driftmit/core/twirled_channel.h"
#include "driftmit/sim/readout_model.h"

namespace driftmit {

/// Parameters a drift segment may replace. Unset fields keep the base value.
/// `epsilon` is shorthand for eps01 = eps10.
struct NoiseOverride {
    std::optional<std::vector<double>> epsilon;
    std::optional<std::vector<double>> eps01;
    std::optional<std::vector<double>> eps10;
    std::optional<std::vector<double>> gamma_down;
    std::optional<std::vector<double>> gamma_up;
    std::optional<TwirledChannel> channel;

    bool empty() const noexcept;
};

struct DriftSegment {
    std::size_t begin = 0;
    std::size_t end = 0;
    NoiseOverride start;
    /// Values reached at the last shot of the segment under linear interpolation.
    /// Fields left unset hold the start value across the segment.
    NoiseOverride finish;
};

enum class Interpolation { step, linear };
std::string_view to_string(Interpolation interp);
Interpolation interpolation_from_string(std::string_view name);

/// Noise in force for one shot.
struct ShotNoise {
    ReadoutModel readout;
    QubitNoise decay;
};

/// Time-dependent noise over shot index. An empty schedule means constant
/// noise. Otherwise segments must be disjoint and cover [0, n_shots).
class DriftSchedule {
   public:
    DriftSchedule() = default;
    DriftSchedule(std::vector<DriftSegment> segments, Interpolation interp);

    static DriftSchedule linear_epsilon_ramp(std::size_t n_shots, std::size_t num_qubits, double from, double to);
    static DriftSchedule epsilon_step(std::size_t n_shots, std::size_t num_qubits, double first, double second);

    bool empty() const noexcept { return segments_.empty(); }
    Interpolation interpolation() const noexcept { return interp_; }
    const std::vector<DriftSegment>& segments() const noexcept { return segments_; }

    void validate(std::size_t n_shots, std::size_t num_qubits) const;
    /// Index of the segment containing `shot`.
    std::size_t segment_of(std::size_t shot) const;
    /// True if noise may differ between shots inside a segment.
    bool varies_within(std::size_t segment) const;
    /// Applies the overrides in force at `shot` on top of the base noise.
    ShotNoise resolve(const ShotNoise& base, std::size_t shot) const;

   private:
    std::vector<DriftSegment> segments_;
    Interpolation interp_ = Interpolation::step;
};

/// Convex combination (1 - t) a + t b of two mask distributions.
TwirledChannel mix(const TwirledChannel& a, const TwirledChannel& b, double t);

}  // namespace driftmit
