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

#include "driftmit/sim/simulator.h"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "driftmit/analysis/oracle.h"
#include "driftmit/sim/record_io.h"
#include "reference.h"

namespace driftmit {
namespace {

const BitString kOne = BitString::from_string("1");
const BitString kZero = BitString::from_string("0");

std::map<std::string, std::size_t> sequence_counts(const RecordSet& set, std::size_t qubit = 0) {
    std::map<std::string, std::size_t> counts;
    for (const auto& r : set.records) {
        ++counts[r.qubit_sequence(qubit).str()];
    }
    return counts;
}

TEST(Simulator, NoiselessRecordsAreExact) {
    auto c = make_config(1, 0.0, 0.0, kOne, SequencePlan{Scheme::basic, 1, Layout::shared});
    auto set = run_shots(c, 500, 1);
    ASSERT_EQ(set.records.size(), 500u);
    for (const auto& r : set.records) {
        EXPECT_EQ(r.qubit_sequence(0).str(), "111");
        EXPECT_EQ(r.level, -1);
        EXPECT_EQ(r.prep, kOne);
    }
}

TEST(Simulator, SymmetricReadoutSequenceFrequencies) {
    auto c = make_config(1, 0.1, 0.0, kOne, SequencePlan{Scheme::basic, 1, Layout::shared});
    const std::size_t shots = 200000;
    auto counts = sequence_counts(run_shots(c, shots, 2));
    for (const auto& [seq, p] : std::map<std::string, double>{{"111", 0.729},
                                                               {"011", 0.081},
                                                               {"101", 0.081},
                                                               {"110", 0.081},
                                                               {"100", 0.009},
                                                               {"010", 0.009},
                                                               {"001", 0.009},
                                                               {"000", 0.001}}) {
        EXPECT_TRUE(testing::within_binomial(counts[seq], shots, p)) << seq << " " << counts[seq];
    }
}

TEST(Simulator, DecayParityMatchesOracleAndFirstOrderForm) {
    auto c = make_config(1, 0.05, 0.01, kOne, SequencePlan{Scheme::basic, 1, Layout::shared});
    const std::size_t shots = 200000;
    auto set = run_shots(c, shots, 3);
    std::size_t ones = 0;
    for (const auto& r : set.records) {
        ones += r.qubit_sequence(0).parity();
    }
    OracleModel model = OracleModel::from_config(c);
    double exact = oracle_enumerate(model, kOne, c.plan, 1).parity_distribution(Window{0, 3})(1);
    EXPECT_TRUE(testing::within_binomial(ones, shots, exact));
    // The first-order law shifts the decay-free parity probability by -2 gamma.
    double decay_free = std::pow(0.95, 3) + 3 * 0.05 * 0.05 * 0.95;
    EXPECT_NEAR(std::pow(0.95, 3) - 2 * 0.01, 0.837375, 1e-12);
    EXPECT_LE(std::abs(exact - (decay_free - 2 * 0.01)), 10 * (0.01 * 0.01 + 0.01 * 0.05));
}

TEST(Simulator, DeterministicAcrossThreadCounts) {
    auto c = make_config(2, 0.05, 0.02, BitString::from_string("10"),
                         SequencePlan{Scheme::weighted, 2, Layout::separate, ExecutionOrder::interleaved});
    c.twirl = true;
    c.feedforward = std::array<double, 2>{1.0, -1.0};
    c.drift = DriftSchedule::linear_epsilon_ramp(3001, 2, 0.02, 0.08);
    auto one = serialize_records(run_shots(c, 3001, 77, 1), RecordFormat::bin);
    for (unsigned threads : {2u, 4u, 16u}) {
        EXPECT_EQ(serialize_records(run_shots(c, 3001, 77, threads), RecordFormat::bin), one);
    }
    EXPECT_NE(serialize_records(run_shots(c, 3001, 78, 1), RecordFormat::bin), one);
}

TEST(Simulator, TwirlLeavesSymmetricMarginalsUnchanged) {
    auto c = make_config(2, 0.08, 0.0, BitString::from_string("10"), SequencePlan{Scheme::basic, 1, Layout::shared});
    const std::size_t shots = 100000;
    auto plain = run_shots(c, shots, 4);
    c.twirl = true;
    auto twirled = run_shots(c, shots, 5);
    for (int slot = 0; slot < 3; ++slot) {
        for (std::size_t q = 0; q < 2; ++q) {
            std::size_t a = 0;
            std::size_t b = 0;
            for (std::size_t i = 0; i < shots; ++i) {
                a += plain.records[i].slots[slot].get(q);
                b += twirled.records[i].slots[slot].get(q);
            }
            double pa = static_cast<double>(a) / shots;
            double pb = static_cast<double>(b) / shots;
            double sigma = std::sqrt(2 * 0.08 * 0.92 / shots);
            EXPECT_LE(std::abs(pa - pb), 4 * sigma) << "slot " << slot << " qubit " << q;
        }
    }
}

TEST(Simulator, TwirledMaskFrequenciesMatchTwirlWeights) {
    Matrix m(4, 4);
    m << 0.90, 0.05, 0.04, 0.02,  //
        0.04, 0.88, 0.01, 0.05,   //
        0.03, 0.02, 0.91, 0.03,   //
        0.03, 0.05, 0.04, 0.90;
    auto am = AssignmentMatrix::from_matrix(m, 1e-12);
    SimulationConfig c = make_config(2, 0.0, 0.0, BitString::from_string("10"), SequencePlan{});
    c.readout = ReadoutModel::dense(am);
    c.twirl = true;
    const std::size_t shots = 100000;
    auto set = run_shots(c, shots, 6);
    std::map<std::uint64_t, std::size_t> masks;
    for (const auto& r : set.records) {
        ++masks[(r.slots[0] ^ r.prep).to_index()];
    }
    auto ch = twirl(am);
    for (std::uint64_t f = 0; f < 4; ++f) {
        EXPECT_TRUE(testing::within_binomial(masks[f], shots, ch.weight(BitString::from_index(f, 2))));
    }
}

TEST(Simulator, DecayPopulationIsNonIncreasing) {
    auto c = make_config(3, 0.02, 0.03, BitString::from_string("111"),
                         SequencePlan{Scheme::dummy, 3, Layout::shared});
    const std::size_t shots = 20000;
    auto set = run_shots(c, shots, 8);
    int slots = c.plan.slots(3);
    std::vector<double> pop(slots, 0.0);
    for (const auto& r : set.records) {
        for (int i = 0; i < slots; ++i) {
            pop[i] += r.slots[i].popcount() / 3.0;
        }
    }
    double mean_x = (slots - 1) / 2.0;
    double sxy = 0;
    double sxx = 0;
    double mean_y = 0;
    for (double& p : pop) {
        p /= shots;
        mean_y += p / slots;
    }
    for (int i = 0; i < slots; ++i) {
        sxy += (i - mean_x) * (pop[i] - mean_y);
        sxx += (i - mean_x) * (i - mean_x);
    }
    EXPECT_LT(sxy / sxx, 0.0);
    for (int i = 1; i < slots; ++i) {
        EXPECT_LE(pop[i], pop[i - 1] + 4 * std::sqrt(0.25 / (3.0 * shots)));
    }
}

TEST(Simulator, StepDriftIsRealisedPerHalf) {
    auto c = make_config(1, 0.05, 0.0, kZero, SequencePlan{});
    const std::size_t shots = 100000;
    c.drift = DriftSchedule::epsilon_step(shots, 1, 0.05, 0.10);
    auto set = run_shots(c, shots, 9);
    std::size_t first = 0;
    std::size_t second = 0;
    for (std::size_t i = 0; i < shots; ++i) {
        (i < shots / 2 ? first : second) += set.records[i].slots[0].get(0);
    }
    EXPECT_TRUE(testing::within_binomial(first, shots / 2, 0.05));
    EXPECT_TRUE(testing::within_binomial(second, shots / 2, 0.10));
}

TEST(Simulator, SeparateLayoutRecordsOneLevel) {
    auto c = make_config(1, 0.0, 0.0, kOne, SequencePlan{Scheme::dummy, 2, Layout::separate, ExecutionOrder::blocked});
    auto set = run_shots(c, 9, 1);
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(set.records[i].level, static_cast<int>(i / 3));
        EXPECT_EQ(static_cast<int>(set.records[i].slots.size()), c.plan.slots(set.records[i].level));
    }
}

TEST(Simulator, ConfigValidation) {
    auto c = make_config(2, 0.1, 0.0, BitString::from_string("1"), SequencePlan{});
    EXPECT_THROW(run_shots(c, 10, 1), std::invalid_argument);
    c = make_config(1, 0.1, 0.0, kOne, SequencePlan{});
    EXPECT_THROW(run_shots(c, 0, 1), std::invalid_argument);
    c.reset_infidelity = 0.1;
    EXPECT_THROW(run_shots(c, 10, 1), std::invalid_argument);
    c.reset_infidelity = 0.0;
    c.drift = DriftSchedule::epsilon_step(5, 1, 0.1, 0.2);
    EXPECT_THROW(run_shots(c, 10, 1), std::invalid_argument);
}

TEST(ResetScheme, NoiselessSingleRoundReadsTarget) {
    auto set = run_reset_scheme(AssignmentMatrix::symmetric(0.0), QubitNoise::none(1), kOne, 0, 100, 1);
    for (const auto& r : set.records) {
        EXPECT_EQ(r.slots[0], kOne);
    }
}

TEST(ResetScheme, AsymmetricMatrixCubed) {
    Matrix m(2, 2);
    m << 0.98, 0.10, 0.02, 0.90;
    auto am = AssignmentMatrix::from_matrix(m);
    const std::size_t shots = 200000;
    auto set = run_reset_scheme(am, QubitNoise::none(1), kOne, 1, shots, 2);
    std::size_t ones = 0;
    for (const auto& r : set.records) {
        ones += r.slots[2].get(0);
    }
    auto cube = testing::naive_power(testing::to_dense(m), 3);
    EXPECT_TRUE(testing::within_binomial(ones, shots, cube[1][1]));
}

TEST(ResetScheme, SymmetricFifthPower) {
    const std::size_t shots = 200000;
    auto set = run_reset_scheme(AssignmentMatrix::symmetric(0.1), QubitNoise::none(1), kOne, 2, shots, 3);
    std::size_t ones = 0;
    for (const auto& r : set.records) {
        ones += r.slots[4].get(0);
    }
    double p = std::pow(0.9, 5) + 10 * std::pow(0.9, 3) * 0.01 + 5 * 0.9 * 1e-4;
    EXPECT_NEAR(apply_power(AssignmentMatrix::symmetric(0.1), 5, basis_vector(2, 1))(1), p, 1e-12);
    EXPECT_TRUE(testing::within_binomial(ones, shots, p));
}

double prep_wrong_rate(double eps, double x, int j, std::size_t shots, std::uint64_t seed) {
    auto set = run_prep_parity(eps, 0.0, x, j, shots, seed);
    std::size_t wrong = 0;
    for (const auto& r : set.records) {
        wrong += r.prep.get(0);
    }
    return static_cast<double>(wrong);
}

TEST(PrepParity, ResetErrorFollowsParityMisclassification) {
    EXPECT_EQ(prep_wrong_rate(0.0, 0.0, 1, 1000, 1), 0.0);
    const std::size_t shots = 100000;
    for (double x : {0.0, 0.3, 1.0}) {
        EXPECT_TRUE(testing::within_binomial(static_cast<std::size_t>(prep_wrong_rate(0.1, x, 0, shots, 2)), shots,
                                             0.1))
            << "x=" << x;
    }
    double p3 = 3 * 0.1 * 0.81 + 0.001;
    EXPECT_NEAR(p3, 0.244, 1e-12);
    EXPECT_TRUE(
        testing::within_binomial(static_cast<std::size_t>(prep_wrong_rate(0.1, 0.4, 1, shots, 3)), shots, p3));
}

}  // namespace
}  // namespace driftmit
