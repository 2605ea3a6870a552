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

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace driftmit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Highest supported mitigation order.
inline constexpr int kMaxTaylorOrder = 15;

/// Signed combination weights for amplification levels j = 0..m.
///
/// a_j = (-1)^j (2m+1)!! / (2^m (2j+1) j! (m-j)!), kept as exact rationals so
/// that sum_j a_j = 1 and sum_j a_j (2j+1)^l = 0 (l = 1..m) hold exactly.
struct TaylorCoefficients {
    int order = 0;
    std::vector<Rational> a;

    /// Conversion happens only here, at the final combination step.
    std::vector<double> as_double() const;
    /// sum_j a_j (2j+1)^power, exactly.
    Rational moment(int power) const;
};

/// Throws std::invalid_argument for m < 0 or m > kMaxTaylorOrder.
TaylorCoefficients taylor_coefficients(int m);

}  // namespace driftmit
