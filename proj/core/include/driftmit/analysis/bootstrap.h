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

#include <cstdint>
#include <functional>
#include <span>

#include "driftmit/sim/shot_record.h"

namespace driftmit {

/// Standard deviation of `estimator` over B resamples (with replacement) of
/// the indices 0..n_items-1. Resample b draws its indices from the counter
/// stream (seed, b), so the result is deterministic. Requires B >= 100 and
/// n_items >= 1.
double bootstrap_stderr(std::size_t n_items, const std::function<double(std::span<const std::uint32_t>)>& estimator,
                        int resamples, std::uint64_t seed);

/// Bootstrap standard error of the mean of per-shot values.
double bootstrap_mean_stderr(std::span<const double> values, int resamples, std::uint64_t seed);

/// Record-level form: the estimator sees a resampled record set.
double bootstrap_stderr(const RecordSet& set, const std::function<double(const RecordSet&)>& estimator,
                        int resamples, std::uint64_t seed);

}  // namespace driftmit
