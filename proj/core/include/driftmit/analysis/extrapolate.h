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

#include <span>

namespace driftmit {

/// Fit of F(m) = F_inf - c r^m with r in (0, 1).
struct Extrapolation {
    double f_inf = 0;
    double c = 0;
    double r = 0;
    double value = 0;   // F(target order)
    double stderr_ = 0; // propagated from the fit covariance
    double rss = 0;     // residual sum of squares (weighted if stderrs given)
    bool monotone = true;
};

/// Least-squares fit over (orders, fidelities), evaluated at `target_order`.
/// With `stderrs` the fit is weighted and their scale sets the covariance;
/// otherwise the residual variance does. Needs at least three points.
/// Data the model cannot follow still yields a value; check `monotone` and `rss`.
Extrapolation extrapolate(std::span<const double> orders, std::span<const double> fidelities, double target_order,
                          std::span<const double> stderrs = {});

}  // namespace driftmit
