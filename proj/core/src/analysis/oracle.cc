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

#include "driftmit/analysis/oracle.h"

#include "driftmit/mitigation/estimate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace driftmit {

namespace {

template <typename S>
S to_scalar(double v) {
    if constexpr (std::is_same_v<S, Rational>) {
        return Rational(v);
    } else {
        return v;
    }
}

// Compensated summation for probability tallies.
class KahanSum {
   public:
    void add(double x) {
        double y = x - c_;
        double t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

   private:
    double sum_ = 0;
    double c_ = 0;
};

template <typename S>
S readout_prob(const ReadoutModel& r, std::size_t observed, std::size_t actual) {
    switch (r.kind) {
        case ReadoutModel::Kind::local: {
            S p = 1;
            for (std::size_t k = 0; k < r.eps01.size(); ++k) {
                bool a = (actual >> k) & 1;
                bool o = (observed >> k) & 1;
                S flip = to_scalar<S>(a ? r.eps10[k] : r.eps01[k]);
                p *= (a != o) ? flip : S(1) - flip;
            }
            return p;
        }
        case ReadoutModel::Kind::dense:
            return to_scalar<S>((*r.matrix)(observed, actual));
        case ReadoutModel::Kind::channel: {
            std::size_t n = r.num_qubits();
            return to_scalar<S>(r.channel->weight(BitString::from_index(observed ^ actual, n)));
        }
    }
    throw std::logic_error("unreachable");
}

template <typename S>
S decay_prob(const QubitNoise& noise, std::size_t from, std::size_t to) {
    S p = 1;
    for (std::size_t k = 0; k < noise.gamma_down.size(); ++k) {
        bool a = (from >> k) & 1;
        bool b = (to >> k) & 1;
        S rate = to_scalar<S>(a ? noise.gamma_down[k] : noise.gamma_up[k]);
        p *= (a != b) ? rate : S(1) - rate;
    }
    return p;
}

template <typename S>
S flip_prob(double r, std::size_t from, std::size_t to, std::size_t n) {
    S p = 1;
    S rate = to_scalar<S>(r);
    for (std::size_t k = 0; k < n; ++k) {
        bool differ = ((from ^ to) >> k) & 1;
        p *= differ ? rate : S(1) - rate;
    }
    return p;
}

void check_model(const OracleModel& model) {
    model.readout.validate();
    model.noise.validate();
    if (model.noise.num_qubits() != model.num_qubits()) {
        throw std::invalid_argument("oracle: decay rates need one entry per qubit");
    }
    if (model.num_qubits() > kMaxOracleQubits) {
        throw std::invalid_argument("oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
    }
}

// K[(s * D + o) * D + next].
template <typename S>
std::vector<S> build_kernel(const OracleModel& model, bool with_reset) {
    check_model(model);
    std::size_t n = model.num_qubits();
    std::size_t d = std::size_t{1} << n;
    std::vector<S> k(d * d * d, S(0));
    std::vector<S> readout(d * d), decay(d * d), reset(with_reset ? d * d : 0);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            readout[b * d + a] = readout_prob<S>(model.readout, b, a);
            decay[a * d + b] = decay_prob<S>(model.noise, a, b);
            if (with_reset) {
                reset[a * d + b] = flip_prob<S>(model.reset_infidelity, a, b, n);
            }
        }
    }
    std::size_t n_masks = model.twirl ? d : 1;
    S mask_weight = S(1) / S(static_cast<long>(n_masks));
    for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t t = 0; t < n_masks; ++t) {
            std::size_t a = s ^ t;
            for (std::size_t u = 0; u < d; ++u) {
                const S& dp = decay[a * d + u];
                if (dp == S(0)) {
                    continue;
                }
                for (std::size_t raw = 0; raw < d; ++raw) {
                    const S& rp = readout[raw * d + u];
                    if (rp == S(0)) {
                        continue;
                    }
                    std::size_t o = raw ^ t;
                    S w = mask_weight * dp * rp;
                    if (with_reset) {
                        for (std::size_t next = 0; next < d; ++next) {
                            k[(s * d + o) * d + next] += w * reset[o * d + next];
                        }
                    } else {
                        k[(s * d + o) * d + (u ^ t)] += w;
                    }
                }
            }
        }
    }
    return k;
}

template <typename S>
std::vector<S> step(const std::vector<S>& kernel, std::size_t d, const std::vector<S>& v, std::size_t o) {
    std::vector<S> out(d, S(0));
    for (std::size_t s = 0; s < d; ++s) {
        if (v[s] == S(0)) {
            continue;
        }
        for (std::size_t next = 0; next < d; ++next) {
            out[next] += v[s] * kernel[(s * d + o) * d + next];
        }
    }
    return out;
}

// Joint (state, accumulated parity) propagation; entry index s * D + acc.
template <typename S>
std::vector<S> parity_dp(const std::vector<S>& kernel, std::size_t d, const std::vector<S>& initial, int slots,
                         Window w) {
    std::vector<S> v(d * d, S(0));
    for (std::size_t s = 0; s < d; ++s) {
        v[s * d] = initial[s];
    }
    for (int i = 0; i < slots; ++i) {
        bool in_window = i >= w.begin && i < w.end;
        std::vector<S> next(d * d, S(0));
        for (std::size_t s = 0; s < d; ++s) {
            for (std::size_t acc = 0; acc < d; ++acc) {
                const S& p = v[s * d + acc];
                if (p == S(0)) {
                    continue;
                }
                for (std::size_t o = 0; o < d; ++o) {
                    std::size_t acc2 = in_window ? acc ^ o : acc;
                    for (std::size_t s2 = 0; s2 < d; ++s2) {
                        const S& kv = kernel[(s * d + o) * d + s2];
                        if (kv != S(0)) {
                            next[s2 * d + acc2] += p * kv;
                        }
                    }
                }
            }
        }
        v = std::move(next);
    }
    return v;
}

template <typename S>
std::vector<S> prep_distribution(const OracleModel& model, const PrepModel& prep, const BitString& q,
                                 S* acceptance) {
    prep.validate();
    std::size_t n = model.num_qubits();
    if (prep.num_qubits() != n || q.width() != n) {
        throw std::invalid_argument("oracle: preparation model does not match the qubit count");
    }
    std::size_t d = std::size_t{1} << n;
    std::vector<S> dist(d);
    for (std::size_t s = 0; s < d; ++s) {
        S p = 1;
        for (std::size_t k = 0; k < n; ++k) {
            S x = to_scalar<S>(prep.x[k]);
            p *= ((s >> k) & 1) ? x : S(1) - x;
        }
        dist[s] = p;
    }
    S accepted = 1;
    if (prep.mode != PrepMode::native) {
        auto kernel = build_kernel<S>(model, false);
        switch (prep.mode) {
            case PrepMode::conditional_reset:
            case PrepMode::parity_amplified_reset: {
                int rounds = prep.mode == PrepMode::conditional_reset ? 1 : 2 * prep.parity_j + 1;
                auto joint = parity_dp(kernel, d, dist, rounds, Window{0, rounds});
                std::vector<S> out(d, S(0));
                for (std::size_t s = 0; s < d; ++s) {
                    for (std::size_t acc = 0; acc < d; ++acc) {
                        out[s ^ acc] += joint[s * d + acc];
                    }
                }
                dist = std::move(out);
                break;
            }
            case PrepMode::post_selected: {
                for (int i = 0; i < prep.postselect_k; ++i) {
                    dist = step(kernel, d, dist, 0);
                }
                accepted = 0;
                for (const auto& p : dist) {
                    accepted += p;
                }
                if (accepted == S(0)) {
                    throw std::domain_error("post-selection accepts no shots");
                }
                for (auto& p : dist) {
                    p /= accepted;
                }
                break;
            }
            case PrepMode::native:
                break;
        }
    }
    if (acceptance) {
        *acceptance = accepted;
    }
    std::vector<S> out(d, S(0));
    std::size_t qi = q.to_index();
    for (std::size_t s = 0; s < d; ++s) {
        out[s ^ qi] = dist[s];
    }
    return out;
}

template <typename S>
std::vector<S> enumerate_table(const OracleModel& model, const std::vector<S>& initial, int slots) {
    std::size_t n = model.num_qubits();
    std::size_t d = std::size_t{1} << n;
    auto kernel = build_kernel<S>(model, model.reset);
    std::vector<S> table(std::size_t{1} << (n * static_cast<std::size_t>(slots)), S(0));
    std::vector<std::vector<S>> stack(static_cast<std::size_t>(slots) + 1);
    stack[0] = initial;
    std::vector<std::size_t> outcome(static_cast<std::size_t>(slots), 0);
    // Iterative depth-first walk over outcome prefixes.
    int depth = 0;
    std::vector<std::size_t> cursor(static_cast<std::size_t>(slots) + 1, 0);
    while (depth >= 0) {
        if (depth == slots) {
            S total = 0;
            for (const auto& p : stack[depth]) {
                total += p;
            }
            std::size_t idx = 0;
            for (int i = 0; i < slots; ++i) {
                idx |= outcome[i] << (static_cast<std::size_t>(i) * n);
            }
            table[idx] = total;
            --depth;
            continue;
        }
        std::size_t& o = cursor[depth];
        if (o == d) {
            o = 0;
            --depth;
            continue;
        }
        outcome[depth] = o;
        stack[depth + 1] = step(kernel, d, stack[depth], o);
        ++o;
        bool any = false;
        for (const auto& p : stack[depth + 1]) {
            if (p != S(0)) {
                any = true;
                break;
            }
        }
        if (any) {
            ++depth;
        }
    }
    return table;
}

std::vector<double> to_vector(const Vector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

OracleModel OracleModel::from_config(const SimulationConfig& config) {
    return from_config(config, config.base_noise());
}

OracleModel OracleModel::from_config(const SimulationConfig& config, const ShotNoise& noise) {
    OracleModel m;
    m.readout = noise.readout;
    m.noise = noise.decay;
    m.twirl = config.twirl;
    m.reset = config.plan.scheme == Scheme::reset;
    m.reset_infidelity = config.reset_infidelity;
    return m;
}

SlotKernel::SlotKernel(const OracleModel& model)
    : dim_(std::size_t{1} << model.num_qubits()), k_(build_kernel<double>(model, model.reset)) {}

Vector initial_distribution(const OracleModel& model, const PrepModel& prep, const BitString& q,
                            double* acceptance) {
    auto v = prep_distribution<double>(model, prep, q, acceptance);
    return Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<Rational> initial_distribution_exact(const OracleModel& model, const PrepModel& prep,
                                                 const BitString& q, Rational* acceptance) {
    return prep_distribution<Rational>(model, prep, q, acceptance);
}

OracleResult::OracleResult(std::size_t num_qubits, int slots, std::vector<double> table,
                           std::optional<std::vector<Rational>> exact)
    : n_(num_qubits), slots_(slots), table_(std::move(table)), exact_(std::move(exact)) {}

double OracleResult::probability(const std::vector<BitString>& sequence) const {
    if (static_cast<int>(sequence.size()) != slots_) {
        throw std::invalid_argument("sequence length does not match the oracle table");
    }
    std::size_t idx = 0;
    for (int i = 0; i < slots_; ++i) {
        if (sequence[i].width() != n_) {
            throw std::invalid_argument("sequence width does not match the oracle table");
        }
        idx |= sequence[i].to_index() << (static_cast<std::size_t>(i) * n_);
    }
    return table_[idx];
}

std::vector<BitString> OracleResult::sequence(std::size_t index) const {
    std::vector<BitString> out;
    std::size_t mask = (std::size_t{1} << n_) - 1;
    for (int i = 0; i < slots_; ++i) {
        out.push_back(BitString::from_index((index >> (static_cast<std::size_t>(i) * n_)) & mask, n_));
    }
    return out;
}

const std::vector<Rational>& OracleResult::exact_table() const {
    if (!exact_) {
        throw std::logic_error("oracle result was computed without the exact table");
    }
    return *exact_;
}

double OracleResult::total() const {
    KahanSum sum;
    for (double p : table_) {
        sum.add(p);
    }
    return sum.value();
}

namespace {

void check_window(Window w, int slots) {
    if (w.begin < 0 || w.end > slots || w.begin >= w.end) {
        throw std::invalid_argument("window [" + std::to_string(w.begin) + ", " + std::to_string(w.end) +
                                    ") outside the oracle sequence");
    }
}

}  // namespace

Vector OracleResult::statistic_distribution(Window w, Statistic stat) const {
    check_window(w, slots_);
    std::size_t d = std::size_t{1} << n_;
    std::size_t mask = d - 1;
    std::vector<KahanSum> acc(d);
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
        double p = table_[idx];
        if (p == 0.0) {
            continue;
        }
        std::size_t out = 0;
        double weight_product = 1.0;
        if (stat == Statistic::majority) {
            for (std::size_t q = 0; q < n_; ++q) {
                int ones = 0;
                for (int i = w.begin; i < w.end; ++i) {
                    ones += static_cast<int>((idx >> (static_cast<std::size_t>(i) * n_ + q)) & 1);
                }
                if (2 * ones > w.size()) {
                    out |= std::size_t{1} << q;
                }
            }
        } else {
            for (int i = w.begin; i < w.end; ++i) {
                out ^= (idx >> (static_cast<std::size_t>(i) * n_)) & mask;
            }
            if (stat == Statistic::weighted_parity) {
                for (std::size_t q = 0; q < n_; ++q) {
                    BitString seq(static_cast<std::size_t>(w.size()));
                    for (int i = w.begin; i < w.end; ++i) {
                        if ((idx >> (static_cast<std::size_t>(i) * n_ + q)) & 1) {
                            seq.set(static_cast<std::size_t>(i - w.begin), true);
                        }
                    }
                    weight_product *= weight(seq);
                }
            }
        }
        acc[out].add(p * weight_product);
    }
    Vector v(static_cast<Eigen::Index>(d));
    for (std::size_t s = 0; s < d; ++s) {
        v(static_cast<Eigen::Index>(s)) = acc[s].value();
    }
    return v;
}

Vector OracleResult::parity_distribution(Window w) const {
    return statistic_distribution(w, Statistic::parity);
}

Vector OracleResult::majority_distribution(Window w) const {
    return statistic_distribution(w, Statistic::majority);
}

Vector OracleResult::weighted_distribution(Window w) const {
    return statistic_distribution(w, Statistic::weighted_parity);
}

Vector OracleResult::slot_marginal(int slot) const {
    return statistic_distribution(Window{slot, slot + 1}, Statistic::parity);
}

double OracleResult::feedforward(Window w, std::size_t qubit, double a0, double a1, bool weighted) const {
    check_window(w, slots_);
    if (qubit >= n_) {
        throw std::out_of_range("feedforward qubit out of range");
    }
    KahanSum sum;
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
        double p = table_[idx];
        if (p == 0.0) {
            continue;
        }
        BitString seq(static_cast<std::size_t>(w.size()));
        for (int i = w.begin; i < w.end; ++i) {
            if ((idx >> (static_cast<std::size_t>(i) * n_ + qubit)) & 1) {
                seq.set(static_cast<std::size_t>(i - w.begin), true);
            }
        }
        double v = seq.parity() ? a1 : a0;
        if (weighted) {
            v *= weight(seq);
        }
        sum.add(p * v);
    }
    return sum.value();
}

std::vector<Rational> OracleResult::parity_distribution_exact(Window w) const {
    check_window(w, slots_);
    const auto& ex = exact_table();
    std::size_t d = std::size_t{1} << n_;
    std::vector<Rational> out(d, Rational(0));
    for (std::size_t idx = 0; idx < ex.size(); ++idx) {
        if (ex[idx] == 0) {
            continue;
        }
        std::size_t par = 0;
        for (int i = w.begin; i < w.end; ++i) {
            par ^= (idx >> (static_cast<std::size_t>(i) * n_)) & (d - 1);
        }
        out[par] += ex[idx];
    }
    return out;
}

OracleResult oracle_enumerate(const OracleModel& model, const Vector& initial, int slots, bool exact) {
    check_model(model);
    std::size_t n = model.num_qubits();
    if (slots < 1) {
        throw std::invalid_argument("oracle needs at least one slot");
    }
    if (n * static_cast<std::size_t>(slots) > kMaxOracleSequenceBits) {
        throw std::invalid_argument("oracle state space too large: 2^" + std::to_string(n * slots) +
                                    " sequences exceed 2^" + std::to_string(kMaxOracleSequenceBits));
    }
    if (static_cast<std::size_t>(initial.size()) != (std::size_t{1} << n)) {
        throw std::invalid_argument("initial distribution has the wrong dimension");
    }
    auto table = enumerate_table<double>(model, to_vector(initial), slots);
    std::optional<std::vector<Rational>> ex;
    if (exact) {
        if (n * static_cast<std::size_t>(slots) > 12) {
            throw std::invalid_argument("exact oracle mode supports n * slots <= 12");
        }
        std::vector<Rational> init;
        for (Eigen::Index i = 0; i < initial.size(); ++i) {
            init.push_back(Rational(initial(i)));
        }
        ex = enumerate_table<Rational>(model, init, slots);
    }
    return OracleResult(n, slots, std::move(table), std::move(ex));
}

OracleResult oracle_enumerate(const OracleModel& model, const BitString& q, const SequencePlan& plan, int j,
                              bool exact) {
    std::size_t d = std::size_t{1} << model.num_qubits();
    if (q.width() != model.num_qubits()) {
        throw std::invalid_argument("initial state width does not match the oracle model");
    }
    Vector init = basis_vector(d, q.to_index());
    return oracle_enumerate(model, init, plan.slots(j), exact);
}

Vector oracle_parity(const OracleModel& model, const Vector& initial, int slots, Window w) {
    check_model(model);
    check_window(w, slots);
    std::size_t d = std::size_t{1} << model.num_qubits();
    if (static_cast<std::size_t>(initial.size()) != d) {
        throw std::invalid_argument("initial distribution has the wrong dimension");
    }
    auto kernel = build_kernel<double>(model, model.reset);
    auto joint = parity_dp(kernel, d, to_vector(initial), std::min(slots, w.end), w);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t acc = 0; acc < d; ++acc) {
            out(static_cast<Eigen::Index>(acc)) += joint[s * d + acc];
        }
    }
    return out;
}

std::vector<Rational> oracle_parity_exact(const OracleModel& model, const std::vector<Rational>& initial, int slots,
                                          Window w) {
    check_model(model);
    check_window(w, slots);
    std::size_t d = std::size_t{1} << model.num_qubits();
    if (initial.size() != d) {
        throw std::invalid_argument("initial distribution has the wrong dimension");
    }
    auto kernel = build_kernel<Rational>(model, model.reset);
    auto joint = parity_dp(kernel, d, initial, std::min(slots, w.end), w);
    std::vector<Rational> out(d, Rational(0));
    for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t acc = 0; acc < d; ++acc) {
            out[acc] += joint[s * d + acc];
        }
    }
    return out;
}

double oracle_level_value(const OracleModel& model, const Vector& initial, const SequencePlan& plan, int j,
                          Statistic statistic, const BitString& target) {
    // Slots after the window cannot influence it, so the sequence is cut there.
    Window w = statistic == Statistic::majority && plan.scheme != Scheme::majority ? Window{0, 2 * j + 1}
                                                                                      : plan.window(j);
    if (statistic == Statistic::parity) {
        return fidelity(oracle_parity(model, initial, w.end, w), target);
    }
    auto result = oracle_enumerate(model, initial, w.end);
    return fidelity(result.statistic_distribution(w, statistic), target);
}

double oracle_mitigated(const OracleModel& model, const Vector& initial, const SequencePlan& plan, int m,
                        Statistic statistic, const BitString& target) {
    std::vector<double> values;
    for (int j = 0; j <= m; ++j) {
        values.push_back(oracle_level_value(model, initial, plan, j, statistic, target));
    }
    return combine(values, m);
}

double fidelity(const Vector& dist, const BitString& target) {
    auto idx = target.to_index();
    if (idx >= static_cast<std::uint64_t>(dist.size())) {
        throw std::out_of_range("target outcome outside the distribution");
    }
    return dist(static_cast<Eigen::Index>(idx));
}

double fidelity(const QuasiDistribution& dist, const BitString& target) {
    auto it = dist.find(target);
    return it == dist.end() ? 0.0 : it->second;
}

}  // namespace driftmit
