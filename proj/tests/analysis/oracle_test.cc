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

#include "driftmit/analysis/oracle.h"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "driftmit/sim/simulator.h"
#include "reference.h"

namespace driftmit {
namespace {

const BitString kOne = BitString::from_string("1");

OracleModel symmetric_model(std::size_t n, double eps, double gamma_down, double gamma_up = 0.0) {
    OracleModel m;
    m.readout = ReadoutModel::symmetric(std::vector<double>(n, eps));
    m.noise = QubitNoise::decay(n, gamma_down, gamma_up);
    return m;
}

double seq_probability(const OracleResult& r, const char* seq) {
    std::vector<BitString> s;
    for (const char* c = seq; *c; ++c) {
        s.push_back(BitString::from_string(std::string(1, *c)));
    }
    return r.probability(s);
}

TEST(Oracle, TableOneProbabilities) {
    auto model = symmetric_model(1, 0.1, 0.0);
    SequencePlan plan{Scheme::basic, 1};
    auto r = oracle_enumerate(model, kOne, plan, 1, true);
    std::map<std::string, double> expected = {{"111", 0.729}, {"011", 0.081}, {"101", 0.081}, {"110", 0.081},
                                              {"100", 0.009}, {"010", 0.009}, {"001", 0.009}, {"000", 0.001}};
    for (const auto& [seq, p] : expected) {
        EXPECT_NEAR(seq_probability(r, seq.c_str()), p, 1e-12) << seq;
    }
    EXPECT_NEAR(r.total(), 1.0, 1e-15);
    ASSERT_TRUE(r.has_exact());
    for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_NEAR(static_cast<double>(r.exact_table()[i]), r.probability(i), 1e-15);
    }
}

// Full trajectory sums for one qubit starting in 1: no decay, or a single
// decay before slot k (decayed qubits stay in 0 since gamma_up = 0).
double table_two_exact(const std::string& seq, double e, double g) {
    auto r = [&](char o, int actual) { return (o - '0') == actual ? 1 - e : e; };
    double total = std::pow(1 - g, 3);
    for (char o : seq) {
        total *= r(o, 1);
    }
    for (int k = 0; k < 3; ++k) {
        double p = std::pow(1 - g, k) * g;
        for (int i = 0; i < 3; ++i) {
            p *= r(seq[i], i < k ? 1 : 0);
        }
        total += p;
    }
    return total;
}

TEST(Oracle, TableTwoProbabilities) {
    double e = 0.05;
    double g = 0.01;
    auto model = symmetric_model(1, e, g);
    auto r = oracle_enumerate(model, kOne, SequencePlan{Scheme::weighted, 1}, 1, true);
    double a = 1 - g;
    std::map<std::string, double> printed = {
        {"111", a * a * a * std::pow(1 - e, 3)},
        {"100", a * a * a * (1 - e) * e * e + a * g * std::pow(1 - e, 3)},
        {"010", a * a * a * (1 - e) * e * e},
        {"001", a * a * a * (1 - e) * e * e},
        {"000", a * a * a * e * e * e + g * std::pow(1 - e, 3)},
        {"011", a * a * a * (1 - e) * (1 - e) * e},
        {"101", a * a * a * (1 - e) * (1 - e) * e},
        {"110", a * a * a * (1 - e) * (1 - e) * e + a * a * g * std::pow(1 - e, 3)},
    };
    for (const auto& [seq, p] : printed) {
        double got = seq_probability(r, seq.c_str());
        EXPECT_NEAR(got, table_two_exact(seq, e, g), 1e-12) << seq;
        // The printed forms keep first-order decay terms only.
        EXPECT_NEAR(got, p, 2 * (g * g + g * e)) << seq;
    }
}

TEST(Oracle, NoiselessIsDeterministic) {
    auto model = symmetric_model(2, 0.0, 0.0);
    auto r = oracle_enumerate(model, BitString::from_string("10"), SequencePlan{Scheme::basic, 1}, 1);
    int nonzero = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r.probability(i) != 0) {
            ++nonzero;
            EXPECT_EQ(r.probability(i), 1.0);
            for (const auto& s : r.sequence(i)) {
                EXPECT_EQ(s, BitString::from_string("10"));
            }
        }
    }
    EXPECT_EQ(nonzero, 1);
}

TEST(Oracle, MatchesBruteForceEnumeration) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 0.2);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 2;
        int slots = 1 + trial % 4;
        testing::BruteModel b;
        b.n = n;
        for (std::size_t k = 0; k < n; ++k) {
            b.eps01.push_back(u(rng));
            b.eps10.push_back(u(rng));
            b.gamma_down.push_back(u(rng));
            b.gamma_up.push_back(u(rng) / 2);
        }
        b.twirl = trial % 3 == 0;
        b.reset = trial % 5 == 1;
        b.reset_infidelity = b.reset ? u(rng) / 4 : 0.0;
        OracleModel model;
        model.readout = ReadoutModel::local(b.eps01, b.eps10);
        model.noise = QubitNoise{b.gamma_down, b.gamma_up};
        model.twirl = b.twirl;
        model.reset = b.reset;
        model.reset_infidelity = b.reset_infidelity;
        std::uint64_t state = rng() % (std::uint64_t{1} << n);
        Vector init = basis_vector(std::size_t{1} << n, state);
        auto r = oracle_enumerate(model, init, slots, n * slots <= 6);
        auto ref = testing::brute_force_sequences(b, state, slots);
        ASSERT_EQ(r.size(), ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            EXPECT_NEAR(r.probability(i), ref[i], 1e-12) << "trial " << trial << " seq " << i;
            if (r.has_exact()) {
                EXPECT_NEAR(static_cast<double>(r.exact_table()[i]), ref[i], 1e-14);
            }
        }
        EXPECT_NEAR(r.total(), 1.0, 1e-12);
    }
}

TEST(Oracle, ParityDpMatchesEnumeration) {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        OracleModel model;
        model.readout = ReadoutModel::twirled(testing::random_channel(2, 0.7, rng));
        model.noise = QubitNoise::decay(2, 0.03, 0.01);
        model.twirl = trial % 2 == 0;
        Vector init = basis_vector(4, trial % 4);
        int slots = 5;
        auto table = oracle_enumerate(model, init, slots);
        for (Window w : {Window{0, 1}, Window{0, 3}, Window{1, 4}, Window{0, 5}}) {
            Vector a = table.parity_distribution(w);
            Vector b = oracle_parity(model, init, slots, w);
            EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(Oracle, ParityEqualsMatrixPowerWithoutDecay) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 24; ++trial) {
        std::size_t n = 1 + trial % 3;
        int j = trial % 4;
        auto channel = testing::random_channel(n, 0.6, rng);
        OracleModel model;
        model.readout = ReadoutModel::twirled(channel);
        model.noise = QubitNoise::none(n);
        std::size_t dim = std::size_t{1} << n;
        std::size_t q = rng() % dim;
        Vector par = oracle_parity(model, basis_vector(dim, q), 2 * j + 1, Window{0, 2 * j + 1});
        auto ref = testing::naive_power(testing::to_dense(channel.induced_matrix()), 2 * j + 1);
        for (std::size_t o = 0; o < dim; ++o) {
            EXPECT_NEAR(par(static_cast<Eigen::Index>(o)), ref[o][q], 1e-12);
        }
        if (n * (2 * j + 1) <= 12 && j <= 1) {
            auto exact = oracle_parity_exact(model, initial_distribution_exact(model, PrepModel::ideal(n),
                                                                               BitString::from_index(q, n)),
                                             2 * j + 1, Window{0, 2 * j + 1});
            for (std::size_t o = 0; o < dim; ++o) {
                EXPECT_NEAR(static_cast<double>(exact[o]), ref[o][q], 1e-14);
            }
        }
    }
}

TEST(Oracle, ResetSchemeIsMatrixPowerForAnyMatrix) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 1 + trial % 2;
        std::size_t dim = std::size_t{1} << n;
        auto m = AssignmentMatrix::from_matrix(testing::random_stochastic(dim, 0.6, rng), 1e-12);
        OracleModel model;
        model.readout = ReadoutModel::dense(m);
        model.noise = QubitNoise::none(n);
        model.reset = true;
        std::size_t q = trial % dim;
        for (int j = 0; j <= 3; ++j) {
            Vector last = oracle_parity(model, basis_vector(dim, q), 2 * j + 1, Window{2 * j, 2 * j + 1});
            Vector ref = apply_power(m, 2 * j + 1, basis_vector(dim, q));
            EXPECT_LT((last - ref).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Oracle, RejectsOversizedProblems) {
    auto model = symmetric_model(6, 0.1, 0.0);
    EXPECT_THROW(oracle_enumerate(model, basis_vector(64, 0), 1), std::invalid_argument);
    auto small = symmetric_model(2, 0.1, 0.0);
    EXPECT_THROW(oracle_enumerate(small, basis_vector(4, 0), 13), std::invalid_argument);
    EXPECT_THROW(oracle_enumerate(small, basis_vector(4, 0), 7, true), std::invalid_argument);
}

TEST(Oracle, MajorityClosedForms) {
    auto plain = symmetric_model(1, 0.1, 0.0);
    Vector init = basis_vector(2, 1);
    SequencePlan plan{Scheme::majority, 1};
    EXPECT_NEAR(oracle_level_value(plain, init, plan, 1, Statistic::majority, kOne), 0.729 + 3 * 0.081, 1e-12);
    auto decay = symmetric_model(1, 0.0, 0.02);
    EXPECT_NEAR(oracle_level_value(decay, init, plan, 1, Statistic::majority, kOne), 1 - 2 * 0.02 + 0.0004,
                1e-12);
}

TEST(Oracle, FeedforwardFirstOrderForms) {
    double e = 0.05;
    double g = 0.01;
    auto model = symmetric_model(1, e, g);
    auto r = oracle_enumerate(model, kOne, SequencePlan{Scheme::weighted, 1}, 1);
    Window w{0, 3};
    double a0 = 0.3;
    double a1 = -1.7;
    // Dropped terms: gamma*eps with coefficient up to 12 per unit of |A|, and eps^3.
    double tol = (15 * (g * g + g * e) + 4 * e * e * e) * (std::abs(a0) + std::abs(a1));
    double p1_plain = 1 - 3 * e - 2 * g + 6 * e * e;
    EXPECT_NEAR(r.feedforward(w, 0, a0, a1, false), a0 * (1 - p1_plain) + a1 * p1_plain, tol);
    double p1_weighted = 1 - 3 * e - 3 * g + 6 * e * e;
    EXPECT_NEAR(r.feedforward(w, 0, a0, a1, true), a0 * (3 * e + 3 * g - 6 * e * e) + a1 * p1_weighted, tol);
}

double ff_slope(double e, bool weighted) {
    double h = 1e-4;
    auto value = [&](double g) {
        auto r = oracle_enumerate(symmetric_model(1, e, g), kOne, SequencePlan{Scheme::weighted, 1}, 1);
        return r.feedforward(Window{0, 3}, 0, 0.0, 1.0, weighted);
    };
    return (value(2 * h) - value(0.0)) / (2 * h);
}

TEST(Oracle, DecayCoefficientScalesWithWindow) {
    for (double e : {0.005, 0.01, 0.02}) {
        EXPECT_NEAR(ff_slope(e, false), -2.0, 15 * e);
        EXPECT_NEAR(ff_slope(e, true), -3.0, 15 * e);
    }
}

double decay_free_parity(double e, int j) {
    return 0.5 * (1 + std::pow(1 - 2 * e, 2 * j + 1));
}

TEST(Oracle, DecayBiasLawFirstOrder) {
    SequencePlan plan{Scheme::basic, 3};
    Vector init = basis_vector(2, 1);
    auto ratio = [&](int j, double e, double g) {
        double p = oracle_level_value(symmetric_model(1, e, g), init, plan, j, Statistic::parity, kOne);
        return std::abs(p - (decay_free_parity(e, j) - (j + 1) * g)) / (g * g + g * e);
    };
    for (int j = 0; j <= 3; ++j) {
        for (double e : {0.01, 0.03, 0.05}) {
            for (double g : {0.01, 0.03, 0.05}) {
                if (j <= 1) {
                    EXPECT_LE(ratio(j, e, g), 10.0) << "j=" << j << " e=" << e << " g=" << g;
                }
            }
            // The remainder is second order: the ratio converges as gamma -> 0.
            double r4 = ratio(j, e, 1e-4);
            double r5 = ratio(j, e, 1e-5);
            EXPECT_LE(r5, 60.0);
            EXPECT_NEAR(r4, r5, 0.05 * r5) << "j=" << j << " e=" << e;
        }
    }
}

TEST(Oracle, AgreesWithSimulatorAcrossSchemes) {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(0.0, 0.1);
    int trial = 0;
    for (auto scheme : {Scheme::basic, Scheme::dummy, Scheme::dummy_posterior, Scheme::weighted, Scheme::reset,
                        Scheme::majority}) {
        for (std::size_t n = 1; n <= 2; ++n) {
            int j = (trial++) % 3;
            if (n == 2 && scheme == Scheme::dummy_posterior) {
                j = std::min(j, 1);
            }
            SequencePlan plan{scheme, j, Layout::shared};
            auto c = make_config(n, 0.0, 0.0, BitString::from_index(rng() % (1u << n), n), plan);
            c.readout = ReadoutModel::local({u(rng), u(rng)}, {u(rng), u(rng)});
            c.readout.eps01.resize(n);
            c.readout.eps10.resize(n);
            c.noise = QubitNoise{std::vector<double>(n, u(rng)), std::vector<double>(n, u(rng) / 3)};
            c.twirl = trial % 2 == 0;
            const std::size_t shots = 20000;
            auto set = run_shots(c, shots, 100 + trial);
            auto oracle = oracle_enumerate(OracleModel::from_config(c), c.initial_state, plan, j);
            std::vector<std::size_t> counts(oracle.size(), 0);
            for (const auto& rec : set.records) {
                std::size_t idx = 0;
                for (std::size_t i = 0; i < rec.slots.size(); ++i) {
                    idx |= static_cast<std::size_t>(rec.slots[i].to_index()) << (i * n);
                }
                ++counts[idx];
            }
            for (std::size_t i = 0; i < oracle.size(); ++i) {
                EXPECT_TRUE(testing::within_binomial(counts[i], shots, oracle.probability(i), 4.5))
                    << to_string(scheme) << " n=" << n << " j=" << j << " seq " << i << " count " << counts[i]
                    << " p " << oracle.probability(i);
            }
        }
    }
}

TEST(Oracle, PostSelectedInitialDistribution) {
    OracleModel model = symmetric_model(1, 0.05, 0.0);
    PrepModel prep{{0.05}, PrepMode::post_selected, 0, 3};
    double acceptance = 0;
    Vector init = initial_distribution(model, prep, BitString::from_string("0"), &acceptance);
    EXPECT_NEAR(acceptance, 0.95 * std::pow(0.95, 3) + 0.05 * std::pow(0.05, 3), 1e-15);
    EXPECT_NEAR(init(1), std::pow(0.05, 4) / acceptance, 1e-15);
}

double mitigated_slope(Scheme scheme, int m, double e) {
    const double h = 1e-4;
    SequencePlan plan{scheme, m};
    auto f = [&](double g) {
        return oracle_mitigated(symmetric_model(1, e, g), basis_vector(2, 1), plan, m, statistic_for(scheme), kOne);
    };
    // Centred at gamma = h so no negative rate is evaluated.
    return (f(2 * h) - f(0.0)) / (2 * h);
}

TEST(MitigationLaw, BasicSchemeKeepsHalfGammaResidual) {
    for (int m : {1, 2}) {
        EXPECT_NEAR(mitigated_slope(Scheme::basic, m, 0.01), -0.5, 0.05) << m;
    }
}

TEST(MitigationLaw, DummyAndWeightedCancelFirstOrderDecay) {
    for (double e : {0.005, 0.01, 0.02}) {
        for (int m : {1, 2}) {
            EXPECT_LE(std::abs(mitigated_slope(Scheme::dummy, m, e)), 10 * e);
            EXPECT_LE(std::abs(mitigated_slope(Scheme::dummy_posterior, m, e)), 10 * e);
            EXPECT_LE(std::abs(mitigated_slope(Scheme::weighted, m, e)), 10 * e);
        }
    }
}

TEST(MitigationLaw, MajorityBiasGrowsLinearly) {
    double e = 0.02;
    double g = 0.01;
    Vector init = basis_vector(2, 1);
    for (int m = 0; m <= 3; ++m) {
        SequencePlan plan{Scheme::majority, m};
        double noisy = oracle_level_value(symmetric_model(1, e, g), init, plan, m, Statistic::majority, kOne);
        double clean = oracle_level_value(symmetric_model(1, e, 0), init, plan, m, Statistic::majority, kOne);
        EXPECT_NEAR((noisy - clean) / (-(m + 1) * g), 1.0, 0.15) << m;
    }
}

double residual(const OracleModel& model, const Vector& init, int m, const BitString& target) {
    return std::abs(1 - oracle_mitigated(model, init, SequencePlan{Scheme::basic, m}, m, Statistic::parity, target));
}

TEST(MitigationLaw, ResidualScalesAsNextOrder) {
    const std::vector<double> eps = {0.02, 0.04, 0.08};
    for (int m = 0; m <= 3; ++m) {
        std::vector<double> r;
        for (double e : eps) {
            OracleModel model = symmetric_model(1, e, 0.0);
            r.push_back(residual(model, basis_vector(2, 1), m, kOne));
        }
        EXPECT_NEAR(testing::loglog_slope(eps, r), m + 1, 0.2) << m;
    }
}

TEST(MitigationLaw, NonTwirledReadoutStillScales) {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    const std::vector<double> eps = {0.02, 0.04, 0.08};
    for (int trial = 0; trial < 6; ++trial) {
        std::size_t n = 1 + trial % 2;
        std::size_t dim = std::size_t{1} << n;
        std::size_t q = rng() % dim;
        Matrix base = testing::random_stochastic(dim, 0.9, rng);
        std::vector<double> dir(dim, 0.0);
        double total = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            if (i != q) {
                dir[i] = u(rng);
                total += dir[i];
            }
        }
        for (int m = 0; m <= 3; ++m) {
            std::vector<double> r;
            for (double e : eps) {
                // Column q has correct-outcome probability exp(-e).
                Matrix a = base;
                double p1 = std::exp(-e);
                for (std::size_t i = 0; i < dim; ++i) {
                    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q)) =
                        i == q ? p1 : (1 - p1) * dir[i] / total;
                }
                OracleModel model;
                model.readout = ReadoutModel::dense(AssignmentMatrix::from_matrix(a, 1e-12));
                model.noise = QubitNoise::none(n);
                r.push_back(residual(model, basis_vector(dim, q), m, BitString::from_index(q, n)));
            }
            EXPECT_GE(testing::loglog_slope(eps, r), m + 0.7) << "trial " << trial << " m " << m;
        }
    }
}

TEST(MitigationLaw, WeightedTallyFactorsOverIndependentQubits) {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(0.0, 0.1);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<double> e01 = {u(rng), u(rng)}, e10 = {u(rng), u(rng)};
        std::vector<double> gd = {u(rng), u(rng)}, gu = {u(rng) / 4, u(rng) / 4};
        OracleModel pair;
        pair.readout = ReadoutModel::local(e01, e10);
        pair.noise = QubitNoise{gd, gu};
        pair.twirl = trial % 2 == 1;
        int j = 1 + trial % 2;
        SequencePlan plan{Scheme::weighted, j};
        std::size_t state = rng() % 4;
        std::size_t target = rng() % 4;
        double joint = oracle_level_value(pair, basis_vector(4, state), plan, j, Statistic::weighted_parity,
                                          BitString::from_index(target, 2));
        double product = 1;
        for (std::size_t k = 0; k < 2; ++k) {
            OracleModel single;
            single.readout = ReadoutModel::local({e01[k]}, {e10[k]});
            single.noise = QubitNoise{{gd[k]}, {gu[k]}};
            single.twirl = pair.twirl;
            product *= oracle_level_value(single, basis_vector(2, (state >> k) & 1), plan, j, Statistic::weighted_parity,
                                          BitString::from_index((target >> k) & 1, 1));
        }
        EXPECT_NEAR(joint, product, 1e-13);
    }
}

TEST(Fidelity, ReadsTargetEntry) {
    Vector v(4);
    v << 0.1, -0.05, 0.9, 0.05;
    EXPECT_EQ(fidelity(v, BitString::from_string("01")), 0.9);
    QuasiDistribution d = {{BitString::from_string("1"), 0.97}};
    EXPECT_EQ(fidelity(d, BitString::from_string("1")), 0.97);
    EXPECT_EQ(fidelity(d, BitString::from_string("0")), 0.0);
    Vector ideal = basis_vector(2, 1);
    EXPECT_EQ(fidelity(ideal, kOne), 1.0);
}

}  // namespace
}  // namespace driftmit
