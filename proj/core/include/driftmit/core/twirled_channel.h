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
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "driftmit/core/assignment_matrix.h"
#include "driftmit/core/bitstring.h"

namespace driftmit {

/// Sparse (quasi-)probability distribution over outcome strings, ordered by
/// outcome index so iteration and serialization are deterministic.
using QuasiDistribution = std::map<BitString, double>;

/// Dense view of a distribution over 2^n outcomes (n <= 24).
Vector to_dense(const QuasiDistribution& dist, std::size_t num_qubits);
QuasiDistribution from_dense(const Vector& dense, std::size_t num_qubits);

/// Half the L1 distance over the union of supports. Negative entries are
/// used as they are.
double total_variation(const QuasiDistribution& a, const QuasiDistribution& b);

/// A readout channel made only of bit flips: outcome = state XOR mask, with
/// the mask drawn from a distribution.
///
/// This is the form any assignment matrix takes after measurement twirling.
/// The quasi flag admits negative weights, which is needed to represent
/// inverses of such channels; weights must still sum to 1.
class TwirledChannel {
   public:
    struct Term {
        BitString mask;
        double weight = 0;
    };

    TwirledChannel() = default;
    TwirledChannel(std::size_t num_qubits, std::vector<Term> terms, bool quasi = false, double tolerance = 1e-12);

    static TwirledChannel identity(std::size_t num_qubits);
    /// Single qubit {0: 1-e, 1: e}.
    static TwirledChannel symmetric(double epsilon);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    bool is_quasi() const noexcept { return quasi_; }
    /// Sorted by mask.
    const std::vector<Term>& terms() const noexcept { return terms_; }
    double weight(const BitString& mask) const;

    /// XOR convolution of the mask distributions. Its induced matrix is the
    /// product of the two induced matrices.
    TwirledChannel compose(const TwirledChannel& other) const;
    /// k-fold composition, k >= 1.
    TwirledChannel power(int k) const;
    /// Applies the channel to a (quasi-)distribution over outcomes.
    QuasiDistribution apply(const QuasiDistribution& dist) const;
    /// Dense 2^n x 2^n matrix with entry (s ^ f, s) = weight(f). n <= 12.
    Matrix induced_matrix() const;

   private:
    std::size_t num_qubits_ = 0;
    std::vector<Term> terms_;
    bool quasi_ = false;
};

/// Projects M onto bit-flip channels: weight(f) = 2^-n sum_s M[s ^ f, s].
TwirledChannel twirl(const AssignmentMatrix& m);

/// Tensor product of single-qubit bit-flip channels, stored per qubit so
/// that it scales to registers far beyond dense limits.
class LocalTwirledChannel {
   public:
    struct Qubit {
        double keep = 1;  // weight of mask bit 0
        double flip = 0;  // weight of mask bit 1
    };

    LocalTwirledChannel() = default;
    explicit LocalTwirledChannel(std::vector<Qubit> qubits, bool quasi = false, double tolerance = 1e-12);

    /// Twirled symmetric readout with per-qubit flip probability.
    static LocalTwirledChannel symmetric(std::span<const double> epsilon);
    /// Twirl of per-qubit asymmetric readout: flip weight (eps01 + eps10) / 2.
    static LocalTwirledChannel twirled(std::span<const double> eps01, std::span<const double> eps10);
    /// Quasi-probability inverse of symmetric(epsilon):
    /// {0: (1-e)/(1-2e), 1: -e/(1-2e)}. Requires e != 1/2.
    static LocalTwirledChannel symmetric_inverse(std::span<const double> epsilon);

    std::size_t num_qubits() const noexcept { return qubits_.size(); }
    bool is_quasi() const noexcept { return quasi_; }
    const std::vector<Qubit>& qubits() const noexcept { return qubits_; }

    LocalTwirledChannel power(int k) const;
    /// Inverse channel (quasi). Requires keep != flip on every qubit.
    LocalTwirledChannel inverse() const;
    double weight(const BitString& mask) const;
    /// Expands into the sparse mask form. Limited to 20 qubits.
    TwirledChannel expand() const;

   private:
    std::vector<Qubit> qubits_;
    bool quasi_ = false;
};

}  // namespace driftmit
