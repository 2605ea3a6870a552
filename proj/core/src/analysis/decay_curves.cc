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

#include "driftmit/analysis/decay_curves.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace driftmit {

namespace {

constexpr std::size_t kFirstFitIndex = 1;
constexpr std::size_t kSlopeSlots = 4;

struct LinearFit {
    double intercept = 0;
    double slope = 0;
    double rss = 0;
};

// Least squares y = a + b x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - f.intercept - f.slope * x[i];
        f.rss += r * r;
    }
    return f;
}

}  // namespace

std::vector<DecayCurve> decay_curves(const RecordSet& set, int post_select_bit) {
    if (post_select_bit != 0 && post_select_bit != 1) {
        throw std::invalid_argument("post-selection bit must be 0 or 1");
    }
    std::size_t n = set.info.num_qubits;
    std::size_t slots = 0;
    for (const auto& rec : set.records) {
        slots = std::max(slots, rec.slots.size());
    }
    if (slots < 2) {
        throw std::invalid_argument("decay curves need records with at least 2 slots");
    }
    std::vector<DecayCurve> curves(n);
    std::vector<std::vector<double>> ones(n, std::vector<double>(slots, 0.0));
    for (std::size_t q = 0; q < n; ++q) {
        curves[q].qubit = q;
        curves[q].n.assign(slots, 0);
    }
    for (const auto& rec : set.records) {
        if (rec.slots.empty()) {
            continue;
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (static_cast<int>(rec.slots[0].get(q)) != post_select_bit) {
                continue;
            }
            for (std::size_t i = 0; i < rec.slots.size(); ++i) {
                ones[q][i] += rec.slots[i].get(q) ? 1.0 : 0.0;
                ++curves[q].n[i];
            }
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (curves[q].n[0] == 0) {
            throw std::runtime_error("qubit " + std::to_string(q) + " has no shots after post-selection");
        }
        curves[q].population.resize(slots);
        for (std::size_t i = 0; i < slots; ++i) {
            curves[q].population[i] = curves[q].n[i] ? ones[q][i] / static_cast<double>(curves[q].n[i]) : 0.0;
        }
    }
    return curves;
}

double curve_slope(const DecayCurve& curve) {
    std::vector<double> x, y;
    std::size_t end = std::min(curve.population.size(), kFirstFitIndex + kSlopeSlots);
    for (std::size_t i = kFirstFitIndex; i < end; ++i) {
        if (curve.n.empty() || curve.n[i] > 0) {
            x.push_back(static_cast<double>(i + 1));
            y.push_back(curve.population[i]);
        }
    }
    if (x.size() < 2) {
        throw std::invalid_argument("slope needs at least two points beyond the first slot");
    }
    return linear_fit(x, y).slope;
}

// Ratios closer to 1 are indistinguishable from a straight line over a short
// record and send the amplitude to infinity.
constexpr double kMaxRatio = 0.999;

ExponentialFit fit_decay(const DecayCurve& curve) {
    std::vector<double> idx, y;
    for (std::size_t i = kFirstFitIndex; i < curve.population.size(); ++i) {
        idx.push_back(static_cast<double>(i + 1));
        y.push_back(curve.population[i]);
    }
    if (idx.size() < 3) {
        throw std::invalid_argument("exponential fit needs at least three points beyond the first slot");
    }
    // For fixed r the model is linear in (c, A); scan r, then refine.
    auto evaluate = [&](double r) {
        std::vector<double> basis(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            basis[k] = std::pow(r, idx[k]);
        }
        return std::pair{linear_fit(basis, y), r};
    };
    double best_r = 0.5;
    double best_rss = INFINITY;
    const int grid = 400;
    for (int g = 1; g < grid; ++g) {
        double r = std::min(kMaxRatio, static_cast<double>(g) / grid);
        auto [fit, rr] = evaluate(r);
        if (fit.rss < best_rss) {
            best_rss = fit.rss;
            best_r = rr;
        }
    }
    double lo = std::max(1e-9, best_r - 1.0 / grid);
    double hi = std::min(kMaxRatio, best_r + 1.0 / grid);
    const double phi = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        double a = hi - phi * (hi - lo);
        double b = lo + phi * (hi - lo);
        if (evaluate(a).first.rss < evaluate(b).first.rss) {
            hi = b;
        } else {
            lo = a;
        }
    }
    auto [fit, r] = evaluate(0.5 * (lo + hi));
    ExponentialFit out;
    out.ratio = r;
    out.rate = 1.0 - r;
    out.offset = fit.intercept;
    out.amplitude = fit.slope;
    out.rms_residual = std::sqrt(fit.rss / static_cast<double>(idx.size()));
    return out;
}

std::vector<std::size_t> flag_defective(const std::vector<DecayCurve>& curves, double ratio) {
    if (curves.empty()) {
        return {};
    }
    std::vector<double> mags;
    for (const auto& c : curves) {
        mags.push_back(std::abs(curve_slope(c)));
    }
    std::vector<double> sorted = mags;
    std::sort(sorted.begin(), sorted.end());
    std::size_t mid = sorted.size() / 2;
    double median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    std::vector<std::size_t> flagged;
    for (std::size_t q = 0; q < curves.size(); ++q) {
        if (mags[q] >= ratio * median && mags[q] > 0) {
            flagged.push_back(curves[q].qubit);
        }
    }
    return flagged;
}

void write_curves_csv(std::ostream& out, const std::vector<DecayCurve>& curves) {
    out << "qubit,slot,population,n\n";
    auto old = out.precision(17);
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.population.size(); ++i) {
            out << c.qubit << ',' << (i + 1) << ',' << c.population[i] << ',' << c.n[i] << '\n';
        }
    }
    out.precision(old);
}

}  // namespace driftmit
