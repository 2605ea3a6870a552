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

#include "driftmit/analysis/bootstrap.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "driftmit/sim/philox.h"

namespace driftmit {

namespace {

void check(std::size_t n_items, int resamples) {
    if (n_items == 0) {
        throw std::invalid_argument("bootstrap over an empty record set");
    }
    if (resamples < 100) {
        throw std::invalid_argument("bootstrap needs at least 100 resamples");
    }
    if (n_items > 0xFFFFFFFFu) {
        throw std::invalid_argument("bootstrap supports at most 2^32 - 1 items");
    }
}

double stddev(const std::vector<double>& xs) {
    double mean = 0;
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    double ss = 0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

double bootstrap_stderr(std::size_t n_items, const std::function<double(std::span<const std::uint32_t>)>& estimator,
                        int resamples, std::uint64_t seed) {
    check(n_items, resamples);
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(resamples));
    std::vector<std::uint32_t> idx(n_items);
    for (int b = 0; b < resamples; ++b) {
        CounterStream rng(seed, static_cast<std::uint64_t>(b), 0, RngPurpose::bootstrap);
        for (auto& i : idx) {
            i = static_cast<std::uint32_t>(rng.below(n_items));
        }
        stats.push_back(estimator(idx));
    }
    return stddev(stats);
}

double bootstrap_mean_stderr(std::span<const double> values, int resamples, std::uint64_t seed) {
    return bootstrap_stderr(
        values.size(),
        [&](std::span<const std::uint32_t> idx) {
            double s = 0;
            for (auto i : idx) {
                s += values[i];
            }
            return s / static_cast<double>(idx.size());
        },
        resamples, seed);
}

double bootstrap_stderr(const RecordSet& set, const std::function<double(const RecordSet&)>& estimator,
                        int resamples, std::uint64_t seed) {
    return bootstrap_stderr(
        set.records.size(),
        [&](std::span<const std::uint32_t> idx) {
            RecordSet sample;
            sample.info = set.info;
            sample.records.reserve(idx.size());
            for (auto i : idx) {
                sample.records.push_back(set.records[i]);
            }
            return estimator(sample);
        },
        resamples, seed);
}

}  // namespace driftmit
