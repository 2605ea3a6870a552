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

#include "driftmit/core/assignment_matrix.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "reference.h"

namespace driftmit {
namespace {

TEST(AssignmentMatrix, Symmetric) {
    auto id = AssignmentMatrix::symmetric(0.0);
    EXPECT_TRUE(id.matrix().isIdentity());
    auto m = AssignmentMatrix::symmetric(0.1);
    EXPECT_DOUBLE_EQ(m(0, 0), 0.9);
    EXPECT_DOUBLE_EQ(m(1, 0), 0.1);
    EXPECT_DOUBLE_EQ(m(0, 1), 0.1);
    EXPECT_DOUBLE_EQ(m(1, 1), 0.9);
    auto half = AssignmentMatrix::symmetric(0.5);
    EXPECT_TRUE((half.matrix().array() == 0.5).all());
    EXPECT_THROW(AssignmentMatrix::symmetric(-0.01), std::invalid_argument);
    EXPECT_THROW(AssignmentMatrix::symmetric(1.01), std::invalid_argument);
}

TEST(AssignmentMatrix, FromMatrixValidates) {
    Matrix bad(2, 2);
    bad << 0.9, 0.1, 0.2, 0.9;
    EXPECT_THROW(AssignmentMatrix::from_matrix(bad), std::invalid_argument);
    EXPECT_THROW(AssignmentMatrix::from_matrix(Matrix::Identity(3, 3)), std::invalid_argument);
    Matrix neg(2, 2);
    neg << 1.1, 0.0, -0.1, 1.0;
    EXPECT_THROW(AssignmentMatrix::from_matrix(neg), std::invalid_argument);
}

TEST(AssignmentMatrix, TensorPutsQubitZeroLowest) {
    std::vector<AssignmentMatrix> per = {AssignmentMatrix::single_qubit(0.1, 0.0),
                                         AssignmentMatrix::single_qubit(0.0, 0.0)};
    auto m = AssignmentMatrix::tensor(per);
    // True state 00 reads 01 (qubit 0 flipped, index 1) with probability 0.1.
    EXPECT_DOUBLE_EQ(m(1, 0), 0.1);
    EXPECT_DOUBLE_EQ(m(2, 0), 0.0);
}

TEST(AssignmentMatrix, ApplyPowerWorkedExample) {
    auto m = AssignmentMatrix::symmetric(0.1);
    auto p = apply_power(m, 3, basis_vector(2, 1));
    EXPECT_NEAR(p(1), 0.729 + 3 * 0.01 * 0.9, 1e-15);
    EXPECT_NEAR(p(1), 0.756, 1e-12);
    auto p0 = apply_power(m, 3, basis_vector(2, 0));
    EXPECT_NEAR(p0(0), 0.756, 1e-12);
}

TEST(AssignmentMatrix, ApplyPowerPreconditions) {
    auto m = AssignmentMatrix::symmetric(0.1);
    EXPECT_THROW(apply_power(m, 2, basis_vector(2, 0)), std::invalid_argument);
    EXPECT_THROW(apply_power(m, 3, basis_vector(4, 0)), std::invalid_argument);
    Vector not_prob(2);
    not_prob << 0.5, 0.6;
    EXPECT_THROW(apply_power(m, 1, not_prob), std::invalid_argument);
}

TEST(AssignmentMatrix, ApplyPowerMatchesNaivePower) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = AssignmentMatrix::from_matrix(testing::random_stochastic(4, 0.6, rng), 1e-12);
        std::size_t idx = trial % 4;
        auto ref = testing::naive_power(testing::to_dense(m.matrix()), 5);
        auto p = apply_power(m, 5, basis_vector(4, idx));
        double col_sum = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_NEAR(p(static_cast<Eigen::Index>(i)), ref[i][idx], 1e-14);
            col_sum += p(static_cast<Eigen::Index>(i));
        }
        EXPECT_NEAR(col_sum, 1.0, 1e-12);
        EXPECT_TRUE(apply_power(m, 1, basis_vector(4, idx)).isApprox(m.matrix().col(idx)));
    }
}

TEST(AssignmentMatrix, PowersStayStochastic) {
    std::mt19937_64 rng(5);
    auto m = AssignmentMatrix::from_matrix(testing::random_stochastic(8, 0.5, rng), 1e-12);
    Matrix p = m.matrix();
    for (int k = 0; k < 6; ++k) {
        p = p * m.matrix();
        auto checked = AssignmentMatrix::from_matrix(p, 1e-12);
        EXPECT_EQ(checked.dim(), 8u);
    }
}

TEST(AssignmentMatrix, MitigatedMatrixWorkedExamples) {
    auto m = AssignmentMatrix::symmetric(0.1);
    Matrix m1 = mitigated_matrix(m, 1);
    EXPECT_NEAR(m1(0, 0), 0.972, 1e-12);
    EXPECT_NEAR(m1(1, 0), 0.028, 1e-12);
    Matrix m2 = mitigated_matrix(m, 2);
    EXPECT_NEAR(m2(1, 0), 10e-3 - 15e-4 + 6e-5, 1e-12);
    EXPECT_NEAR(m2(1, 0), 0.00856, 1e-12);
    EXPECT_TRUE(mitigated_matrix(AssignmentMatrix::symmetric(0.0), 3).isIdentity(1e-15));
}

TEST(AssignmentMatrix, MitigatedResidualScalesAsOrderPlusOne) {
    std::vector<double> eps = {0.02, 0.04, 0.08};
    for (int m = 0; m <= 3; ++m) {
        std::vector<double> residual;
        for (double e : eps) {
            Matrix r = mitigated_matrix(AssignmentMatrix::symmetric(e), m) - Matrix::Identity(2, 2);
            residual.push_back(r.cwiseAbs().maxCoeff());
            EXPECT_LT(residual.back() / std::pow(e, m + 1), 100.0);
        }
        EXPECT_NEAR(testing::loglog_slope(eps, residual), m + 1, 0.2) << "m=" << m;
    }
}

}  // namespace
}  // namespace driftmit
