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

#include "driftmit/analysis/extrapolate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace driftmit {

namespace {

struct Profile {
    double f_inf = 0;
    double c = 0;
    double rss = 0;
};

// Weighted linear least squares in (F_inf, c) for a fixed r.
Profile profile(std::span<const double> m, std::span<const double> f, const std::vector<double>& w, double r) {
    double s0 = 0, s1 = 0, s11 = 0, sy = 0, s1y = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double b = -std::pow(r, m[i]);
        s0 += w[i];
        s1 += w[i] * b;
        s11 += w[i] * b * b;
        sy += w[i] * f[i];
        s1y += w[i] * b * f[i];
    }
    double det = s0 * s11 - s1 * s1;
    Profile p;
    if (std::abs(det) < 1e-300) {
        p.f_inf = sy / s0;
        p.c = 0;
    } else {
        p.f_inf = (s11 * sy - s1 * s1y) / det;
        p.c = (s0 * s1y - s1 * sy) / det;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        double res = f[i] - (p.f_inf - p.c * std::pow(r, m[i]));
        p.rss += w[i] * res * res;
    }
    return p;
}

}  // namespace

Extrapolation extrapolate(std::span<const double> orders, std::span<const double> fidelities, double target_order,
                          std::span<const double> stderrs) {
    std::size_t n = orders.size();
    if (n < 3 || fidelities.size() != n) {
        throw std::invalid_argument("extrapolation needs at least three (order, fidelity) points");
    }
    if (!stderrs.empty() && stderrs.size() != n) {
        throw std::invalid_argument("extrapolation stderrs must match the data length");
    }
    std::vector<double> w(n, 1.0);
    for (std::size_t i = 0; i < n && !stderrs.empty(); ++i) {
        if (!(stderrs[i] > 0)) {
            throw std::invalid_argument("extrapolation stderrs must be positive");
        }
        w[i] = 1.0 / (stderrs[i] * stderrs[i]);
    }

    // Variable projection: profile out (F_inf, c) and search r on (0, 1).
    const int grid = 2000;
    double best_r = 0.5;
    double best = std::numeric_limits<double>::infinity();
    for (int g = 1; g < grid; ++g) {
        double r = static_cast<double>(g) / grid;
        double rss = profile(orders, fidelities, w, r).rss;
        if (rss < best) {
            best = rss;
            best_r = r;
        }
    }
    double lo = std::max(1e-12, best_r - 1.0 / grid);
    double hi = std::min(1.0 - 1e-12, best_r + 1.0 / grid);
    const double phi = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 300 && hi - lo > 1e-15; ++it) {
        double a = hi - phi * (hi - lo);
        double b = lo + phi * (hi - lo);
        if (profile(orders, fidelities, w, a).rss < profile(orders, fidelities, w, b).rss) {
            hi = b;
        } else {
            lo = a;
        }
    }
    Extrapolation out;
    out.r = 0.5 * (lo + hi);
    auto p = profile(orders, fidelities, w, out.r);
    out.f_inf = p.f_inf;
    out.c = p.c;
    out.rss = p.rss;
    out.value = p.f_inf - p.c * std::pow(out.r, target_order);

    // Covariance of (F_inf, c, r) from the Gauss-Newton normal matrix.
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
        double rm = std::pow(out.r, orders[i]);
        double sw = std::sqrt(w[i]);
        jac(static_cast<Eigen::Index>(i), 0) = sw;
        jac(static_cast<Eigen::Index>(i), 1) = -sw * rm;
        jac(static_cast<Eigen::Index>(i), 2) = orders[i] == 0 ? 0.0 : -sw * p.c * orders[i] * rm / out.r;
    }
    Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::MatrixXd cov = normal.completeOrthogonalDecomposition().pseudoInverse();
    if (stderrs.empty()) {
        double dof = static_cast<double>(n) - 3.0;
        cov *= dof > 0 ? p.rss / dof : 0.0;
    }
    Eigen::Vector3d grad;
    double rt = std::pow(out.r, target_order);
    grad << 1.0, -rt, target_order == 0 ? 0.0 : -p.c * target_order * rt / out.r;
    double var = grad.dot(cov * grad);
    out.stderr_ = std::sqrt(std::max(0.0, var));

    // Monotone when successive differences never change sign.
    int sign = 0;
    for (std::size_t i = 1; i < n; ++i) {
        double d = fidelities[i] - fidelities[i - 1];
        int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (s != 0 && sign != 0 && s != sign) {
            out.monotone = false;
        }
        if (s != 0) {
            sign = s;
        }
    }
    return out;
}

}  // namespace driftmit
