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
#include "driftmit/core/noise.h"
#include "driftmit/core/taylor.h"
#include "driftmit/mitigation/parity.h"
#include "driftmit/sim/readout_model.h"
#include "driftmit/sim/sequence_plan.h"
#include "driftmit/sim/simulator.h"

namespace driftmit {

/// Physics of one measurement slot, shared by every oracle routine. The
/// slot semantics match the simulator exactly: optional twirl pre-flip,
/// decay/excitation, readout, undo of the twirl mask, and for the reset
/// scheme a reset of the state to the (corrected) outcome.
struct OracleModel {
    ReadoutModel readout;
    QubitNoise noise;
    bool twirl = false;
    bool reset = false;
    double reset_infidelity = 0.0;

    std::size_t num_qubits() const { return readout.num_qubits(); }

    static OracleModel from_config(const SimulationConfig& config);
    static OracleModel from_config(const SimulationConfig& config, const ShotNoise& noise);
};

/// Largest register the oracle accepts (the slot kernel has 2^(3n) entries).
inline constexpr std::size_t kMaxOracleQubits = 5;
/// Limit on enumerated outcome sequences, 2^(n * slots).
inline constexpr std::size_t kMaxOracleSequenceBits = 24;

/// Slot transition kernel K[s][o][s'] = P(outcome o, next state s' | state s).
class SlotKernel {
   public:
    explicit SlotKernel(const OracleModel& model);
    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t s, std::size_t o, std::size_t next) const {
        return k_[(s * dim_ + o) * dim_ + next];
    }

   private:
    std::size_t dim_;
    std::vector<double> k_;
};

/// Distribution of physical states entering the main sequence, after the
/// preparation model and the target flip q. For post-selected preparation
/// the result is conditioned on all-zero leading readouts and
/// `acceptance` receives the probability of that event.
Vector initial_distribution(const OracleModel& model, const PrepModel& prep, const BitString& q,
                            double* acceptance = nullptr);
std::vector<Rational> initial_distribution_exact(const OracleModel& model, const PrepModel& prep,
                                                 const BitString& q, Rational* acceptance = nullptr);

/// Exact table of outcome-sequence probabilities.
class OracleResult {
   public:
    OracleResult(std::size_t num_qubits, int slots, std::vector<double> table,
                 std::optional<std::vector<Rational>> exact);

    std::size_t num_qubits() const noexcept { return n_; }
    int slots() const noexcept { return slots_; }
    std::size_t size() const noexcept { return table_.size(); }
    /// Sequence index: slot i occupies bits [i n, (i+1) n).
    double probability(std::size_t index) const { return table_[index]; }
    double probability(const std::vector<BitString>& sequence) const;
    std::vector<BitString> sequence(std::size_t index) const;
    const std::vector<double>& table() const noexcept { return table_; }
    bool has_exact() const noexcept { return exact_.has_value(); }
    const std::vector<Rational>& exact_table() const;

    /// Kahan-summed total probability.
    double total() const;
    /// Distribution of the multi-qubit statistic over the window.
    Vector parity_distribution(Window w) const;
    Vector majority_distribution(Window w) const;
    /// Per parity outcome, sum of P(sequence) times the product of per-qubit weights.
    Vector weighted_distribution(Window w) const;
    Vector statistic_distribution(Window w, Statistic s) const;
    Vector slot_marginal(int slot) const;
    /// E[A_par W] for one qubit's parity over the window.
    double feedforward(Window w, std::size_t qubit, double a0, double a1, bool weighted) const;
    std::vector<Rational> parity_distribution_exact(Window w) const;

   private:
    std::size_t n_;
    int slots_;
    std::vector<double> table_;
    std::optional<std::vector<Rational>> exact_;
};

/// Enumerates every outcome sequence of `slots` measurements starting from
/// the physical-state distribution `initial`. With `exact`, a rational table
/// is computed alongside (n * slots <= 12).
OracleResult oracle_enumerate(const OracleModel& model, const Vector& initial, int slots, bool exact = false);

/// Convenience form: standalone run of level j of the plan from basis state q.
OracleResult oracle_enumerate(const OracleModel& model, const BitString& q, const SequencePlan& plan, int j,
                              bool exact = false);

/// Parity distribution over window w of a `slots`-long sequence, computed by
/// dynamic programming over (physical state, running parity). Scales to any
/// sequence length.
Vector oracle_parity(const OracleModel& model, const Vector& initial, int slots, Window w);
std::vector<Rational> oracle_parity_exact(const OracleModel& model, const std::vector<Rational>& initial, int slots,
                                          Window w);

/// Exact probability of `target` under the level-j statistic of the plan
/// (standalone run). Uses the parity DP where possible.
double oracle_level_value(const OracleModel& model, const Vector& initial, const SequencePlan& plan, int j,
                          Statistic statistic, const BitString& target);

/// Taylor combination of oracle level values j = 0..m.
double oracle_mitigated(const OracleModel& model, const Vector& initial, const SequencePlan& plan, int m,
                        Statistic statistic, const BitString& target);

/// Entry of a (quasi-)distribution at the target outcome.
double fidelity(const Vector& dist, const BitString& target);
double fidelity(const QuasiDistribution& dist, const BitString& target);

}  // namespace driftmit
