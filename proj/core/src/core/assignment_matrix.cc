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
#include <stdexcept>
#include <string>

#include "driftmit/core/taylor.h"

namespace driftmit {

namespace {

std::size_t qubits_for_dim(Eigen::Index dim) {
    std::size_t n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    if ((Eigen::Index{1} << n) != dim) {
        throw std::invalid_argument("assignment matrix dimension must be a power of two");
    }
    return n;
}

void require_rate(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
    }
}

}  // namespace

AssignmentMatrix AssignmentMatrix::from_matrix(Matrix m, double tolerance) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("assignment matrix must be square and non-empty");
    }
    std::size_t n = qubits_for_dim(m.rows());
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument("dense assignment matrices support at most 12 qubits");
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        double sum = 0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            double v = m(i, j);
            if (!(v >= -tolerance && v <= 1.0 + tolerance)) {
                throw std::invalid_argument("assignment matrix entries must lie in [0, 1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > tolerance) {
            throw std::invalid_argument("assignment matrix column " + std::to_string(j) + " sums to " +
                                        std::to_string(sum) + ", not 1");
        }
    }
    return AssignmentMatrix(n, std::move(m));
}

AssignmentMatrix AssignmentMatrix::symmetric(double epsilon) {
    return single_qubit(epsilon, epsilon);
}

AssignmentMatrix AssignmentMatrix::single_qubit(double eps01, double eps10) {
    require_rate(eps01, "eps01");
    require_rate(eps10, "eps10");
    Matrix m(2, 2);
    m << 1.0 - eps01, eps10, eps01, 1.0 - eps10;
    return AssignmentMatrix(1, std::move(m));
}

AssignmentMatrix AssignmentMatrix::tensor(std::span<const AssignmentMatrix> per_qubit) {
    if (per_qubit.empty()) {
        throw std::invalid_argument("tensor product of zero matrices");
    }
    std::size_t n = 0;
    for (const auto& m : per_qubit) {
        n += m.num_qubits();
    }
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument("dense assignment matrices support at most 12 qubits");
    }
    // Qubit 0 is the least significant index, so later factors sit to the left.
    Matrix acc = per_qubit[0].matrix();
    for (std::size_t k = 1; k < per_qubit.size(); ++k) {
        const Matrix& left = per_qubit[k].matrix();
        Matrix next(left.rows() * acc.rows(), left.cols() * acc.cols());
        for (Eigen::Index i = 0; i < left.rows(); ++i) {
            for (Eigen::Index j = 0; j < left.cols(); ++j) {
                next.block(i * acc.rows(), j * acc.cols(), acc.rows(), acc.cols()) = left(i, j) * acc;
            }
        }
        acc = std::move(next);
    }
    return AssignmentMatrix(n, std::move(acc));
}

AssignmentMatrix AssignmentMatrix::operator*(const AssignmentMatrix& rhs) const {
    if (rhs.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("assignment matrix dimension mismatch");
    }
    return AssignmentMatrix(num_qubits_, m_ * rhs.m_);
}

Vector apply_power(const AssignmentMatrix& m, int k, const Vector& q) {
    if (k <= 0 || k % 2 == 0) {
        throw std::invalid_argument("apply_power requires an odd positive power");
    }
    if (static_cast<std::size_t>(q.size()) != m.dim()) {
        throw std::invalid_argument("apply_power: vector has dimension " + std::to_string(q.size()) +
                                    ", matrix has " + std::to_string(m.dim()));
    }
    require_probability_vector(q, 1e-9);
    Vector v = q;
    for (int r = 0; r < k; ++r) {
        v = m.matrix() * v;
    }
    return v;
}

Matrix mitigated_matrix(const AssignmentMatrix& m, int order) {
    auto coeffs = taylor_coefficients(order).as_double();
    const Matrix& base = m.matrix();
    Matrix square = base * base;
    Matrix power = base;
    Matrix result = Matrix::Zero(base.rows(), base.cols());
    for (int k = 0; k <= order; ++k) {
        result += coeffs[k] * power;
        power = square * power;
    }
    return result;
}

void require_probability_vector(const Vector& q, double tolerance) {
    double sum = 0;
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        if (q(i) < -tolerance) {
            throw std::invalid_argument("probability vector has a negative entry");
        }
        sum += q(i);
    }
    if (std::abs(sum - 1.0) > tolerance) {
        throw std::invalid_argument("probability vector sums to " + std::to_string(sum));
    }
}

Vector basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

}  // namespace driftmit
