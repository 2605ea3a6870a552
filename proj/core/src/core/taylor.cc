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

#include "driftmit/core/taylor.h"

#include <stdexcept>
#include <string>

namespace driftmit {

namespace {

BigInt factorial(int n) {
    BigInt r = 1;
    for (int k = 2; k <= n; ++k) {
        r *= k;
    }
    return r;
}

BigInt double_factorial(int n) {
    BigInt r = 1;
    for (int k = n; k > 1; k -= 2) {
        r *= k;
    }
    return r;
}

}  // namespace

TaylorCoefficients taylor_coefficients(int m) {
    if (m < 0 || m > kMaxTaylorOrder) {
        throw std::invalid_argument("mitigation order must be in [0, " + std::to_string(kMaxTaylorOrder) +
                                    "], got " + std::to_string(m));
    }
    TaylorCoefficients result;
    result.order = m;
    result.a.reserve(m + 1);
    BigInt numerator = double_factorial(2 * m + 1);
    BigInt two_pow_m = BigInt(1) << m;
    for (int j = 0; j <= m; ++j) {
        BigInt denominator = two_pow_m * (2 * j + 1) * factorial(j) * factorial(m - j);
        Rational a(numerator, denominator);
        if (j % 2 == 1) {
            a = -a;
        }
        result.a.push_back(a);
    }
    return result;
}

std::vector<double> TaylorCoefficients::as_double() const {
    std::vector<double> out;
    out.reserve(a.size());
    for (const auto& v : a) {
        out.push_back(static_cast<double>(v));
    }
    return out;
}

Rational TaylorCoefficients::moment(int power) const {
    Rational total = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        BigInt base = 2 * static_cast<long>(j) + 1;
        total += a[j] * Rational(boost::multiprecision::pow(base, static_cast<unsigned>(power)));
    }
    return total;
}

}  // namespace driftmit
