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
#include <span>

#include <Eigen/Dense>

namespace driftmit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense 2^n x 2^n matrices are only supported up to this many qubits.
inline constexpr std::size_t kMaxDenseQubits = 12;

/// Column-stochastic readout confusion matrix over 2^n outcomes.
///
/// Entry (i, j) is the probability of reading outcome i when the true state is
/// j, so an observed distribution is p = M q. Outcome indices use qubit 0 as
/// the least significant bit.
class AssignmentMatrix {
   public:
    /// Validates shape (2^n square, n <= kMaxDenseQubits), entries in [0, 1]
    /// and unit column sums within `tolerance`.
    static AssignmentMatrix from_matrix(Matrix m, double tolerance = 1e-12);
    /// [[1-e, e], [e, 1-e]].
    static AssignmentMatrix symmetric(double epsilon);
    /// Single qubit with P(read 1 | 0) = eps01 and P(read 0 | 1) = eps10.
    static AssignmentMatrix single_qubit(double eps01, double eps10);
    /// Uncorrelated readout; per_qubit[k] acts on qubit k.
    static AssignmentMatrix tensor(std::span<const AssignmentMatrix> per_qubit);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const Matrix& matrix() const noexcept { return m_; }
    double operator()(std::size_t observed, std::size_t actual) const { return m_(observed, actual); }

    AssignmentMatrix operator*(const AssignmentMatrix& rhs) const;

   private:
    AssignmentMatrix(std::size_t n, Matrix m) : num_qubits_(n), m_(std::move(m)) {}

    std::size_t num_qubits_ = 0;
    Matrix m_;
};

/// Returns M^k q. Requires k odd and positive, q a probability vector of
/// matching dimension.
Vector apply_power(const AssignmentMatrix& m, int k, const Vector& q);

/// sum_k a_k^(m) M^(2k+1).
Matrix mitigated_matrix(const AssignmentMatrix& m, int order);

/// Throws if entries are negative or the sum differs from 1 by more than tolerance.
void require_probability_vector(const Vector& q, double tolerance = 1e-12);

/// Basis vector e_index of dimension dim.
Vector basis_vector(std::size_t dim, std::size_t index);

}  // namespace driftmit
