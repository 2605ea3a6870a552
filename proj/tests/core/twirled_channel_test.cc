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

#include "driftmit/core/twirled_channel.h"

#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "reference.h"

namespace driftmit {
namespace {

bool is_bistochastic_symmetric(const Matrix& m, double tol) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (std::abs(m.row(i).sum() - 1) > tol || std::abs(m.col(i).sum() - 1) > tol) {
            return false;
        }
    }
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

TEST(TwirledChannel, ValidatesWeights) {
    using T = TwirledChannel::Term;
    auto z = BitString::from_string("0");
    auto o = BitString::from_string("1");
    EXPECT_THROW(TwirledChannel(1, {T{z, 0.5}, T{o, 0.4}}), std::invalid_argument);
    EXPECT_THROW(TwirledChannel(1, {T{z, 0.5}, T{z, 0.5}}), std::invalid_argument);
    EXPECT_THROW(TwirledChannel(1, {T{z, 1.2}, T{o, -0.2}}), std::invalid_argument);
    EXPECT_NO_THROW(TwirledChannel(1, {T{z, 1.2}, T{o, -0.2}}, true));
    EXPECT_THROW(TwirledChannel(2, {T{z, 1.0}}), std::invalid_argument);
}

TEST(TwirledChannel, TwirlOfSymmetricIsItself) {
    auto c = twirl(AssignmentMatrix::symmetric(0.1));
    EXPECT_NEAR(c.weight(BitString::from_string("0")), 0.9, 1e-15);
    EXPECT_NEAR(c.weight(BitString::from_string("1")), 0.1, 1e-15);
}

TEST(TwirledChannel, TwirlOfAsymmetricAveragesDiagonals) {
    Matrix m(2, 2);
    m << 1.0, 0.2, 0.0, 0.8;
    auto c = twirl(AssignmentMatrix::from_matrix(m));
    EXPECT_NEAR(c.weight(BitString::from_string("0")), 0.9, 1e-15);
    EXPECT_NEAR(c.weight(BitString::from_string("1")), 0.1, 1e-15);
}

TEST(TwirledChannel, TwirlIsIdempotent) {
    std::mt19937_64 rng(13);
    for (std::size_t dim : {2u, 4u, 8u}) {
        for (int trial = 0; trial < 20; ++trial) {
            auto m = AssignmentMatrix::from_matrix(testing::random_stochastic(dim, 0.5, rng), 1e-12);
            auto once = twirl(m);
            auto twice = twirl(AssignmentMatrix::from_matrix(once.induced_matrix(), 1e-12));
            ASSERT_EQ(once.terms().size(), twice.terms().size());
            for (std::size_t k = 0; k < once.terms().size(); ++k) {
                EXPECT_EQ(once.terms()[k].mask, twice.terms()[k].mask);
                EXPECT_NEAR(once.terms()[k].weight, twice.terms()[k].weight, 1e-12);
            }
            EXPECT_TRUE(is_bistochastic_symmetric(once.induced_matrix(), 1e-12));
        }
    }
}

TEST(TwirledChannel, TwirlEqualsPauliAverage) {
    // Average of X^f M X^f over all masks f, computed by permuting indices.
    std::mt19937_64 rng(17);
    auto m = AssignmentMatrix::from_matrix(testing::random_stochastic(4, 0.5, rng), 1e-12);
    Matrix avg = Matrix::Zero(4, 4);
    for (std::size_t f = 0; f < 4; ++f) {
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                avg(i, j) += m(i ^ f, j ^ f) / 4.0;
            }
        }
    }
    EXPECT_LT((twirl(m).induced_matrix() - avg).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TwirledChannel, CompositionIsMatrixProduct) {
    std::mt19937_64 rng(19);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            auto a = testing::random_channel(n, 0.5, rng);
            auto b = testing::random_channel(n, 0.5, rng);
            Matrix lhs = a.compose(b).induced_matrix();
            Matrix rhs = a.induced_matrix() * b.induced_matrix();
            EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(TwirledChannel, PowerMatchesNaiveMatrixPower) {
    std::mt19937_64 rng(23);
    for (int k = 1; k <= 9; ++k) {
        auto c = testing::random_channel(2, 0.7, rng);
        auto ref = testing::naive_power(testing::to_dense(c.induced_matrix()), k);
        Matrix got = c.power(k).induced_matrix();
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                EXPECT_NEAR(got(i, j), ref[i][j], 1e-13);
            }
        }
    }
    EXPECT_THROW(TwirledChannel::symmetric(0.1).power(0), std::invalid_argument);
}

TEST(TwirledChannel, ApplyMatchesInducedMatrix) {
    std::mt19937_64 rng(29);
    auto c = testing::random_channel(3, 0.5, rng);
    QuasiDistribution d = {{BitString::from_string("101"), 0.7}, {BitString::from_string("000"), 0.3}};
    Vector via_matrix = c.induced_matrix() * to_dense(d, 3);
    Vector via_apply = to_dense(c.apply(d), 3);
    EXPECT_LT((via_matrix - via_apply).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LocalTwirledChannel, PowerAndInverseMatchExpandedForm) {
    std::vector<double> eps = {0.05, 0.1, 0.2};
    auto local = LocalTwirledChannel::symmetric(eps);
    auto full = local.expand();
    for (int k : {1, 3, 5}) {
        Matrix a = local.power(k).expand().induced_matrix();
        Matrix b = full.power(k).induced_matrix();
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
    }
    Matrix inv = local.inverse().expand().induced_matrix();
    EXPECT_TRUE((inv * full.induced_matrix()).isIdentity(1e-13));
    auto single = LocalTwirledChannel::symmetric_inverse(std::vector<double>{0.1});
    EXPECT_NEAR(single.qubits()[0].keep, 0.9 / 0.8, 1e-15);
    EXPECT_NEAR(single.qubits()[0].flip, -0.1 / 0.8, 1e-15);
    EXPECT_TRUE(single.is_quasi());
    EXPECT_THROW(LocalTwirledChannel::symmetric(std::vector<double>{0.5}).inverse(), std::invalid_argument);
}

TEST(LocalTwirledChannel, TwirledAsymmetricUsesMeanFlip) {
    auto c = LocalTwirledChannel::twirled(std::vector<double>{0.02}, std::vector<double>{0.10});
    EXPECT_NEAR(c.qubits()[0].flip, 0.06, 1e-15);
    auto dense = twirl(AssignmentMatrix::single_qubit(0.02, 0.10));
    EXPECT_NEAR(dense.weight(BitString::from_string("1")), 0.06, 1e-15);
}

TEST(Distributions, DenseRoundTrip) {
    QuasiDistribution d = {{BitString::from_string("10"), -0.25}, {BitString::from_string("01"), 1.25}};
    auto back = from_dense(to_dense(d, 2), 2);
    EXPECT_EQ(back, d);
    EXPECT_THROW(to_dense(d, 3), std::invalid_argument);
}

}  // namespace
}  // namespace driftmit
