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

#include <array>
#include <cstdint>

namespace driftmit {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// What a random draw is used for. Part of the counter, so streams for
/// different purposes never overlap.
enum class RngPurpose : std::uint8_t {
    prep_error = 1,
    twirl_mask = 2,
    decay = 3,
    readout = 4,
    reset = 5,
    bootstrap = 6,
};

/// Sequential draws from the Philox stream addressed by
/// (seed, shot, slot, purpose). The fourth counter word holds the purpose in
/// its top byte and a block index in the low 24 bits.
class CounterStream {
   public:
    CounterStream(std::uint64_t seed, std::uint64_t shot, std::uint32_t slot, RngPurpose purpose);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform();
    bool bernoulli(double p) { return p > 0.0 && uniform() < p; }
    /// Uniform integer in [0, bound), bound > 0, rejection-sampled.
    std::uint64_t below(std::uint64_t bound);

   private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

}  // namespace driftmit
