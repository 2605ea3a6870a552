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
#include <vector>

#include "driftmit/core/assignment_matrix.h"
#include "driftmit/core/bitstring.h"
#include "driftmit/core/twirled_channel.h"
#include "driftmit/sim/philox.h"

namespace driftmit {

/// Readout noise in one of three forms:
///   local   - independent per-qubit flips, P(1|0) = eps01[k], P(0|1) = eps10[k]
///   dense   - full assignment matrix (n <= 12), correlated errors allowed
///   channel - bit-flip mask distribution (the twirled form), any n
struct ReadoutModel {
    enum class Kind { local, dense, channel };

    Kind kind = Kind::local;
    std::vector<double> eps01;
    std::vector<double> eps10;
    std::optional<AssignmentMatrix> matrix;
    std::optional<TwirledChannel> channel;

    static ReadoutModel local(std::vector<double> eps01, std::vector<double> eps10);
    static ReadoutModel symmetric(std::vector<double> epsilon);
    static ReadoutModel dense(AssignmentMatrix m);
    static ReadoutModel twirled(TwirledChannel c);

    std::size_t num_qubits() const;
    /// P(observed | actual).
    double probability(const BitString& observed, const BitString& actual) const;
    /// Dense matrix form, n <= 12.
    AssignmentMatrix to_matrix() const;
    /// Twirl of this model as a mask distribution.
    TwirledChannel to_channel() const;
    void validate() const;
};

/// Precomputed sampling tables for a ReadoutModel.
class ReadoutSampler {
   public:
    explicit ReadoutSampler(const ReadoutModel& model);

    std::size_t num_qubits() const noexcept { return n_; }
    BitString sample(const BitString& actual, CounterStream& rng) const;

   private:
    ReadoutModel::Kind kind_;
    std::size_t n_ = 0;
    std::vector<double> eps01_;
    std::vector<double> eps10_;
    std::optional<AssignmentMatrix> matrix_;
    std::vector<BitString> masks_;
    std::vector<double> mask_cdf_;
};

}  // namespace driftmit
