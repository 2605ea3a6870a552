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
#include <cstddef>
#include <cstdint>
#include <optional>

#include "driftmit/core/assignment_matrix.h"
#include "driftmit/core/bitstring.h"
#include "driftmit/core/noise.h"
#include "driftmit/sim/drift_schedule.h"
#include "driftmit/sim/readout_model.h"
#include "driftmit/sim/sequence_plan.h"
#include "driftmit/sim/shot_record.h"

namespace driftmit {

struct SimulationConfig {
    std::size_t num_qubits = 1;
    ReadoutModel readout;
    QubitNoise noise;
    PrepModel prep;
    /// Target computational state q.
    BitString initial_state;
    SequencePlan plan;
    /// Random X mask before each measurement, undone on state and outcome.
    bool twirl = false;
    /// Probability that a reset round leaves the qubit flipped (reset scheme only).
    double reset_infidelity = 0.0;
    /// Observable values (A0, A1) selected by the parity of qubit 0.
    std::optional<std::array<double, 2>> feedforward;
    DriftSchedule drift;

    /// Fills default-sized noise/prep/state vectors and checks consistency.
    void validate(std::size_t n_shots) const;
    ShotNoise base_noise() const { return {readout, noise}; }
};

/// Builds a config with per-qubit symmetric readout and decay.
SimulationConfig make_config(std::size_t num_qubits, double epsilon, double gamma_down, const BitString& q,
                             SequencePlan plan);

/// Runs one shot. Per slot: optional twirl pre-flip, decay/excitation on the
/// physical state, readout, then the twirl mask is undone on both state and
/// outcome. Random draws come from counter streams keyed by
/// (seed, shot, slot, purpose), so the result does not depend on scheduling.
ShotRecord simulate_shot(const SimulationConfig& config, const ShotNoise& noise, const ReadoutSampler& sampler,
                         std::uint64_t seed, std::uint64_t shot, int level);

/// Runs n_shots shots split across `threads` workers.
RecordSet run_shots(const SimulationConfig& config, std::size_t n_shots, std::uint64_t seed, unsigned threads = 1);

/// Measure, reset to 0, conditional X on the outcome; 2 j_max + 1 rounds in a
/// shared record. Round 2j is the readout for level j.
RecordSet run_reset_scheme(const AssignmentMatrix& m, const QubitNoise& noise, const BitString& q, int j_max,
                           std::size_t n_shots, std::uint64_t seed, double reset_infidelity = 0.0,
                           unsigned threads = 1);

/// Single qubit whose incoming state is |1> with probability x, reset by the
/// parity of 2j+1 measurements. ShotRecord::prep holds the post-reset state
/// (target |0>), followed by one ordinary readout slot.
RecordSet run_prep_parity(double epsilon, double gamma, double x, int j, std::size_t n_shots, std::uint64_t seed,
                          unsigned threads = 1);

}  // namespace driftmit
