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

#include "driftmit/sim/readout_model.h"

#include <algorithm>
#include <stdexcept>

namespace driftmit {

namespace {

std::size_t pick(const std::vector<double>& cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        // Round-off can leave the last cumulative value a hair below 1.
        --it;
        while (it != cdf.begin() && *it == *(it - 1)) {
            --it;
        }
    }
    return static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace

ReadoutModel ReadoutModel::local(std::vector<double> eps01, std::vector<double> eps10) {
    ReadoutModel m;
    m.kind = Kind::local;
    m.eps01 = std::move(eps01);
    m.eps10 = std::move(eps10);
    m.validate();
    return m;
}

ReadoutModel ReadoutModel::symmetric(std::vector<double> epsilon) {
    auto copy = epsilon;
    return local(std::move(epsilon), std::move(copy));
}

ReadoutModel ReadoutModel::dense(AssignmentMatrix matrix) {
    ReadoutModel m;
    m.kind = Kind::dense;
    m.matrix = std::move(matrix);
    return m;
}

ReadoutModel ReadoutModel::twirled(TwirledChannel c) {
    if (c.is_quasi()) {
        throw std::invalid_argument("a quasi-probability channel cannot be sampled as readout noise");
    }
    ReadoutModel m;
    m.kind = Kind::channel;
    m.channel = std::move(c);
    return m;
}

std::size_t ReadoutModel::num_qubits() const {
    switch (kind) {
        case Kind::local:
            return eps01.size();
        case Kind::dense:
            return matrix->num_qubits();
        case Kind::channel:
            return channel->num_qubits();
    }
    return 0;
}

double ReadoutModel::probability(const BitString& observed, const BitString& actual) const {
    if (observed.width() != num_qubits() || actual.width() != num_qubits()) {
        throw std::invalid_argument("readout probability: width mismatch");
    }
    switch (kind) {
        case Kind::local: {
            double p = 1.0;
            for (std::size_t k = 0; k < eps01.size(); ++k) {
                double flip = actual.get(k) ? eps10[k] : eps01[k];
                p *= observed.get(k) != actual.get(k) ? flip : 1.0 - flip;
            }
            return p;
        }
        case Kind::dense:
            return (*matrix)(observed.to_index(), actual.to_index());
        case Kind::channel:
            return channel->weight(observed ^ actual);
    }
    return 0.0;
}

AssignmentMatrix ReadoutModel::to_matrix() const {
    std::size_t n = num_qubits();
    switch (kind) {
        case Kind::dense:
            return *matrix;
        case Kind::channel:
            return AssignmentMatrix::from_matrix(channel->induced_matrix(), 1e-9);
        case Kind::local: {
            std::vector<AssignmentMatrix> factors;
            for (std::size_t k = 0; k < n; ++k) {
                factors.push_back(AssignmentMatrix::single_qubit(eps01[k], eps10[k]));
            }
            return AssignmentMatrix::tensor(factors);
        }
    }
    throw std::logic_error("unreachable");
}

TwirledChannel ReadoutModel::to_channel() const {
    switch (kind) {
        case Kind::channel:
            return *channel;
        case Kind::dense:
            return twirl(*matrix);
        case Kind::local:
            return LocalTwirledChannel::twirled(eps01, eps10).expand();
    }
    throw std::logic_error("unreachable");
}

void ReadoutModel::validate() const {
    switch (kind) {
        case Kind::local:
            if (eps01.size() != eps10.size() || eps01.empty()) {
                throw std::invalid_argument("local readout needs matching, non-empty eps01 and eps10");
            }
            for (std::size_t k = 0; k < eps01.size(); ++k) {
                if (!(eps01[k] >= 0 && eps01[k] <= 1 && eps10[k] >= 0 && eps10[k] <= 1)) {
                    throw std::invalid_argument("readout error rates must lie in [0, 1]");
                }
            }
            break;
        case Kind::dense:
            if (!matrix) {
                throw std::invalid_argument("dense readout model without a matrix");
            }
            break;
        case Kind::channel:
            if (!channel || channel->is_quasi()) {
                throw std::invalid_argument("channel readout model needs a non-quasi channel");
            }
            break;
    }
}

ReadoutSampler::ReadoutSampler(const ReadoutModel& model) : kind_(model.kind), n_(model.num_qubits()) {
    model.validate();
    switch (kind_) {
        case ReadoutModel::Kind::local:
            eps01_ = model.eps01;
            eps10_ = model.eps10;
            break;
        case ReadoutModel::Kind::dense:
            matrix_ = model.matrix;
            break;
        case ReadoutModel::Kind::channel: {
            double acc = 0;
            for (const auto& t : model.channel->terms()) {
                acc += t.weight;
                masks_.push_back(t.mask);
                mask_cdf_.push_back(acc);
            }
            break;
        }
    }
}

BitString ReadoutSampler::sample(const BitString& actual, CounterStream& rng) const {
    switch (kind_) {
        case ReadoutModel::Kind::local: {
            BitString out = actual;
            for (std::size_t k = 0; k < n_; ++k) {
                double p = actual.get(k) ? eps10_[k] : eps01_[k];
                if (rng.bernoulli(p)) {
                    out.flip(k);
                }
            }
            return out;
        }
        case ReadoutModel::Kind::dense: {
            const auto& m = *matrix_;
            std::size_t col = actual.to_index();
            double u = rng.uniform();
            double acc = 0;
            std::size_t last = 0;
            for (std::size_t row = 0; row < m.dim(); ++row) {
                double p = m(row, col);
                if (p <= 0) {
                    continue;
                }
                acc += p;
                last = row;
                if (u < acc) {
                    return BitString::from_index(row, n_);
                }
            }
            return BitString::from_index(last, n_);
        }
        case ReadoutModel::Kind::channel:
            return actual ^ masks_[pick(mask_cdf_, rng.uniform() * mask_cdf_.back())];
    }
    throw std::logic_error("unreachable");
}

}  // namespace driftmit
