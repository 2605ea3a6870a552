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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace driftmit {

double total_variation(const QuasiDistribution& a, const QuasiDistribution& b) {
    double sum = 0;
    for (const auto& [s, p] : a) {
        auto it = b.find(s);
        sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [s, q] : b) {
        if (!a.contains(s)) {
            sum += std::abs(q);
        }
    }
    return 0.5 * sum;
}

Vector to_dense(const QuasiDistribution& dist, std::size_t num_qubits) {
    if (num_qubits > 24) {
        throw std::invalid_argument("dense distributions support at most 24 qubits");
    }
    Vector out = Vector::Zero(Eigen::Index{1} << num_qubits);
    for (const auto& [s, p] : dist) {
        if (s.width() != num_qubits) {
            throw std::invalid_argument("distribution key width does not match qubit count");
        }
        out(static_cast<Eigen::Index>(s.to_index())) += p;
    }
    return out;
}

QuasiDistribution from_dense(const Vector& dense, std::size_t num_qubits) {
    if ((Eigen::Index{1} << num_qubits) != dense.size()) {
        throw std::invalid_argument("dense vector size does not match qubit count");
    }
    QuasiDistribution out;
    for (Eigen::Index i = 0; i < dense.size(); ++i) {
        if (dense(i) != 0.0) {
            out.emplace(BitString::from_index(static_cast<std::uint64_t>(i), num_qubits), dense(i));
        }
    }
    return out;
}

TwirledChannel::TwirledChannel(std::size_t num_qubits, std::vector<Term> terms, bool quasi, double tolerance)
    : num_qubits_(num_qubits), terms_(std::move(terms)), quasi_(quasi) {
    if (terms_.empty()) {
        throw std::invalid_argument("twirled channel needs at least one term");
    }
    double sum = 0;
    for (const auto& t : terms_) {
        if (t.mask.width() != num_qubits_) {
            throw std::invalid_argument("twirled channel mask width does not match qubit count");
        }
        if (!std::isfinite(t.weight)) {
            throw std::invalid_argument("twirled channel weight is not finite");
        }
        if (!quasi_ && t.weight < 0) {
            throw std::invalid_argument("negative twirled channel weight requires the quasi-probability flag");
        }
        sum += t.weight;
    }
    if (std::abs(sum - 1.0) > tolerance) {
        throw std::invalid_argument("twirled channel weights sum to " + std::to_string(sum) + ", not 1");
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mask < b.mask; });
    for (std::size_t k = 1; k < terms_.size(); ++k) {
        if (terms_[k].mask == terms_[k - 1].mask) {
            throw std::invalid_argument("twirled channel masks must be distinct: " + terms_[k].mask.str());
        }
    }
}

TwirledChannel TwirledChannel::identity(std::size_t num_qubits) {
    return TwirledChannel(num_qubits, {{BitString(num_qubits), 1.0}});
}

TwirledChannel TwirledChannel::symmetric(double epsilon) {
    if (!(epsilon >= 0 && epsilon <= 1)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
    return TwirledChannel(1, {{BitString::from_string("0"), 1.0 - epsilon}, {BitString::from_string("1"), epsilon}});
}

double TwirledChannel::weight(const BitString& mask) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                               [](const Term& t, const BitString& m) { return t.mask < m; });
    if (it != terms_.end() && it->mask == mask) {
        return it->weight;
    }
    return 0.0;
}

TwirledChannel TwirledChannel::compose(const TwirledChannel& other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("cannot compose twirled channels of different sizes");
    }
    std::map<BitString, double> acc;
    for (const auto& a : terms_) {
        for (const auto& b : other.terms_) {
            acc[a.mask ^ b.mask] += a.weight * b.weight;
        }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [mask, w] : acc) {
        terms.push_back({mask, w});
    }
    return TwirledChannel(num_qubits_, std::move(terms), quasi_ || other.quasi_, 1e-9);
}

TwirledChannel TwirledChannel::power(int k) const {
    if (k < 1) {
        throw std::invalid_argument("twirled channel power must be >= 1");
    }
    TwirledChannel result = *this;
    TwirledChannel base = *this;
    int remaining = k - 1;
    while (remaining > 0) {
        if (remaining & 1) {
            result = result.compose(base);
        }
        remaining >>= 1;
        if (remaining > 0) {
            base = base.compose(base);
        }
    }
    return result;
}

QuasiDistribution TwirledChannel::apply(const QuasiDistribution& dist) const {
    QuasiDistribution out;
    for (const auto& [s, p] : dist) {
        if (s.width() != num_qubits_) {
            throw std::invalid_argument("distribution width does not match channel");
        }
        for (const auto& t : terms_) {
            out[s ^ t.mask] += p * t.weight;
        }
    }
    return out;
}

Matrix TwirledChannel::induced_matrix() const {
    if (num_qubits_ > kMaxDenseQubits) {
        throw std::invalid_argument("induced matrix supports at most 12 qubits");
    }
    std::size_t dim = std::size_t{1} << num_qubits_;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < dim; ++s) {
        for (const auto& t : terms_) {
            auto observed = s ^ t.mask.to_index();
            m(static_cast<Eigen::Index>(observed), static_cast<Eigen::Index>(s)) += t.weight;
        }
    }
    return m;
}

TwirledChannel twirl(const AssignmentMatrix& m) {
    std::size_t dim = m.dim();
    std::size_t n = m.num_qubits();
    std::vector<TwirledChannel::Term> terms;
    terms.reserve(dim);
    double norm = 1.0 / static_cast<double>(dim);
    for (std::size_t f = 0; f < dim; ++f) {
        double w = 0;
        for (std::size_t s = 0; s < dim; ++s) {
            w += m(s ^ f, s);
        }
        w *= norm;
        if (w != 0.0) {
            terms.push_back({BitString::from_index(f, n), w});
        }
    }
    return TwirledChannel(n, std::move(terms), false, 1e-9);
}

LocalTwirledChannel::LocalTwirledChannel(std::vector<Qubit> qubits, bool quasi, double tolerance)
    : qubits_(std::move(qubits)), quasi_(quasi) {
    for (const auto& q : qubits_) {
        if (!std::isfinite(q.keep) || !std::isfinite(q.flip)) {
            throw std::invalid_argument("local channel weight is not finite");
        }
        if (!quasi_ && (q.keep < 0 || q.flip < 0)) {
            throw std::invalid_argument("negative local channel weight requires the quasi-probability flag");
        }
        if (std::abs(q.keep + q.flip - 1.0) > tolerance) {
            throw std::invalid_argument("local channel weights must sum to 1 per qubit");
        }
    }
}

LocalTwirledChannel LocalTwirledChannel::symmetric(std::span<const double> epsilon) {
    std::vector<Qubit> qubits;
    for (double e : epsilon) {
        if (!(e >= 0 && e <= 1)) {
            throw std::invalid_argument("epsilon must lie in [0, 1]");
        }
        qubits.push_back({1.0 - e, e});
    }
    return LocalTwirledChannel(std::move(qubits));
}

LocalTwirledChannel LocalTwirledChannel::twirled(std::span<const double> eps01, std::span<const double> eps10) {
    if (eps01.size() != eps10.size()) {
        throw std::invalid_argument("eps01 and eps10 must have one entry per qubit");
    }
    std::vector<double> flip(eps01.size());
    for (std::size_t k = 0; k < eps01.size(); ++k) {
        flip[k] = 0.5 * (eps01[k] + eps10[k]);
    }
    return symmetric(flip);
}

LocalTwirledChannel LocalTwirledChannel::symmetric_inverse(std::span<const double> epsilon) {
    return symmetric(epsilon).inverse();
}

LocalTwirledChannel LocalTwirledChannel::power(int k) const {
    if (k < 1) {
        throw std::invalid_argument("local channel power must be >= 1");
    }
    // Eigenvalues of the 2x2 flip channel are keep + flip (= 1) and keep - flip.
    std::vector<Qubit> out;
    out.reserve(qubits_.size());
    for (const auto& q : qubits_) {
        double sum_k = std::pow(q.keep + q.flip, k);
        double diff_k = std::pow(q.keep - q.flip, k);
        out.push_back({0.5 * (sum_k + diff_k), 0.5 * (sum_k - diff_k)});
    }
    return LocalTwirledChannel(std::move(out), quasi_, 1e-9);
}

LocalTwirledChannel LocalTwirledChannel::inverse() const {
    std::vector<Qubit> out;
    out.reserve(qubits_.size());
    for (const auto& q : qubits_) {
        double det = q.keep - q.flip;
        if (std::abs(det) < 1e-15) {
            throw std::invalid_argument("local channel with keep == flip is not invertible");
        }
        out.push_back({q.keep / det, -q.flip / det});
    }
    return LocalTwirledChannel(std::move(out), true, 1e-9);
}

double LocalTwirledChannel::weight(const BitString& mask) const {
    if (mask.width() != qubits_.size()) {
        throw std::invalid_argument("mask width does not match local channel");
    }
    double w = 1.0;
    for (std::size_t k = 0; k < qubits_.size(); ++k) {
        w *= mask.get(k) ? qubits_[k].flip : qubits_[k].keep;
    }
    return w;
}

TwirledChannel LocalTwirledChannel::expand() const {
    std::size_t n = qubits_.size();
    if (n > 20) {
        throw std::invalid_argument("expanding a local channel supports at most 20 qubits");
    }
    std::vector<TwirledChannel::Term> terms;
    std::size_t dim = std::size_t{1} << n;
    terms.reserve(dim);
    for (std::size_t f = 0; f < dim; ++f) {
        auto mask = BitString::from_index(f, n);
        double w = weight(mask);
        if (w != 0.0) {
            terms.push_back({std::move(mask), w});
        }
    }
    return TwirledChannel(n, std::move(terms), quasi_, 1e-9);
}

}  // namespace driftmit
