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

#include "driftmit/sim/simulator.h"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "driftmit/sim/philox.h"

namespace driftmit {

namespace {

constexpr std::uint32_t kPrepSlot = 0xFFFFFFFFu;

BitString random_mask(std::size_t n, CounterStream& rng) {
    BitString mask(n);
    std::uint32_t word = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k % 32 == 0) {
            word = rng.next_u32();
        }
        if ((word >> (k % 32)) & 1u) {
            mask.set(k, true);
        }
    }
    return mask;
}

class ShotRunner {
   public:
    ShotRunner(const SimulationConfig& config, const ShotNoise& noise, const ReadoutSampler& sampler,
               std::uint64_t seed, std::uint64_t shot)
        : config_(config), noise_(noise), sampler_(sampler), seed_(seed), shot_(shot),
          has_decay_(!noise.decay.is_zero()) {}

    BitString measure(BitString& state) {
        std::uint32_t slot = next_slot_++;
        std::size_t n = config_.num_qubits;
        BitString mask;
        if (config_.twirl) {
            CounterStream rng(seed_, shot_, slot, RngPurpose::twirl_mask);
            mask = random_mask(n, rng);
            state ^= mask;
        }
        if (has_decay_) {
            CounterStream rng(seed_, shot_, slot, RngPurpose::decay);
            for (std::size_t k = 0; k < n; ++k) {
                double p = state.get(k) ? noise_.decay.gamma_down[k] : noise_.decay.gamma_up[k];
                if (rng.bernoulli(p)) {
                    state.flip(k);
                }
            }
        }
        CounterStream rng(seed_, shot_, slot, RngPurpose::readout);
        BitString outcome = sampler_.sample(state, rng);
        if (config_.twirl) {
            state ^= mask;
            outcome ^= mask;
        }
        return outcome;
    }

    void reset_to(BitString& state, const BitString& outcome) {
        state = outcome;
        if (config_.reset_infidelity > 0) {
            CounterStream rng(seed_, shot_, next_slot_ - 1, RngPurpose::reset);
            for (std::size_t k = 0; k < config_.num_qubits; ++k) {
                if (rng.bernoulli(config_.reset_infidelity)) {
                    state.flip(k);
                }
            }
        }
    }

    ShotRecord run(int level) {
        std::size_t n = config_.num_qubits;
        ShotRecord rec;
        rec.shot = shot_;
        rec.level = level;

        BitString state(n);
        {
            CounterStream rng(seed_, shot_, kPrepSlot, RngPurpose::prep_error);
            for (std::size_t k = 0; k < n; ++k) {
                if (rng.bernoulli(config_.prep.x[k])) {
                    state.set(k, true);
                }
            }
        }
        switch (config_.prep.mode) {
            case PrepMode::native:
                break;
            case PrepMode::conditional_reset:
                state ^= measure(state);
                break;
            case PrepMode::parity_amplified_reset: {
                BitString parity(n);
                for (int i = 0; i < 2 * config_.prep.parity_j + 1; ++i) {
                    parity ^= measure(state);
                }
                state ^= parity;
                break;
            }
            case PrepMode::post_selected:
                for (int i = 0; i < config_.prep.postselect_k; ++i) {
                    rec.postselect.push_back(measure(state));
                }
                break;
        }
        state ^= config_.initial_state;
        rec.prep = state;

        const auto& plan = config_.plan;
        int length = plan.record_slots(level);
        rec.slots.reserve(static_cast<std::size_t>(length));
        for (int i = 0; i < length; ++i) {
            BitString outcome = measure(state);
            if (plan.scheme == Scheme::reset) {
                reset_to(state, outcome);
            }
            rec.slots.push_back(std::move(outcome));
        }

        if (config_.feedforward) {
            Window w = plan.window(level < 0 ? plan.j_max : level);
            bool parity = rec.qubit_window(0, w).parity();
            rec.ff_value = (*config_.feedforward)[parity ? 1 : 0];
        }
        return rec;
    }

   private:
    const SimulationConfig& config_;
    const ShotNoise& noise_;
    const ReadoutSampler& sampler_;
    std::uint64_t seed_;
    std::uint64_t shot_;
    bool has_decay_;
    std::uint32_t next_slot_ = 0;
};

}  // namespace

void SimulationConfig::validate(std::size_t n_shots) const {
    if (num_qubits == 0) {
        throw std::invalid_argument("simulation needs at least one qubit");
    }
    if (n_shots == 0) {
        throw std::invalid_argument("n_shots must be >= 1");
    }
    readout.validate();
    if (readout.num_qubits() != num_qubits) {
        throw std::invalid_argument("readout model qubit count does not match the config");
    }
    noise.validate();
    if (noise.num_qubits() != num_qubits) {
        throw std::invalid_argument("decay rates need one entry per qubit");
    }
    prep.validate();
    if (prep.num_qubits() != num_qubits) {
        throw std::invalid_argument("preparation error x needs one entry per qubit");
    }
    if (initial_state.width() != num_qubits) {
        throw std::invalid_argument("initial state width does not match the qubit count");
    }
    plan.validate();
    if (!(reset_infidelity >= 0 && reset_infidelity <= 1)) {
        throw std::invalid_argument("reset infidelity must lie in [0, 1]");
    }
    if (reset_infidelity > 0 && plan.scheme != Scheme::reset) {
        throw std::invalid_argument("reset infidelity only applies to the reset scheme");
    }
    drift.validate(n_shots, num_qubits);
}

SimulationConfig make_config(std::size_t num_qubits, double epsilon, double gamma_down, const BitString& q,
                             SequencePlan plan) {
    SimulationConfig c;
    c.num_qubits = num_qubits;
    c.readout = ReadoutModel::symmetric(std::vector<double>(num_qubits, epsilon));
    c.noise = QubitNoise::decay(num_qubits, gamma_down);
    c.prep = PrepModel::ideal(num_qubits);
    c.initial_state = q;
    c.plan = plan;
    return c;
}

ShotRecord simulate_shot(const SimulationConfig& config, const ShotNoise& noise, const ReadoutSampler& sampler,
                         std::uint64_t seed, std::uint64_t shot, int level) {
    ShotRunner runner(config, noise, sampler, seed, shot);
    return runner.run(level);
}

RecordSet run_shots(const SimulationConfig& config, std::size_t n_shots, std::uint64_t seed, unsigned threads) {
    config.validate(n_shots);
    RecordSet out;
    out.info.num_qubits = config.num_qubits;
    out.info.plan = config.plan;
    out.info.postselect_k = config.prep.mode == PrepMode::post_selected ? config.prep.postselect_k : 0;
    out.info.seed = seed;
    out.records.resize(n_shots);

    // Noise and samplers that stay fixed within a drift segment are built once.
    const ShotNoise base = config.base_noise();
    const DriftSchedule& drift = config.drift;
    std::size_t n_segments = drift.empty() ? 1 : drift.segments().size();
    std::vector<std::unique_ptr<ShotNoise>> seg_noise(n_segments);
    std::vector<std::unique_ptr<ReadoutSampler>> seg_sampler(n_segments);
    for (std::size_t s = 0; s < n_segments; ++s) {
        if (drift.empty()) {
            seg_noise[s] = std::make_unique<ShotNoise>(base);
        } else if (!drift.varies_within(s)) {
            seg_noise[s] = std::make_unique<ShotNoise>(drift.resolve(base, drift.segments()[s].begin));
        } else {
            continue;
        }
        seg_sampler[s] = std::make_unique<ReadoutSampler>(seg_noise[s]->readout);
    }

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::size_t s = drift.empty() ? 0 : drift.segment_of(i);
            int level = config.plan.level_for_shot(i, n_shots);
            if (seg_sampler[s]) {
                out.records[i] = simulate_shot(config, *seg_noise[s], *seg_sampler[s], seed, i, level);
            } else {
                ShotNoise noise = drift.resolve(base, i);
                ReadoutSampler sampler(noise.readout);
                out.records[i] = simulate_shot(config, noise, sampler, seed, i, level);
            }
        }
    };

    unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_shots)));
    if (workers == 1) {
        worker(0, n_shots);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = n_shots * w / workers;
        std::size_t end = n_shots * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                worker(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

RecordSet run_reset_scheme(const AssignmentMatrix& m, const QubitNoise& noise, const BitString& q, int j_max,
                           std::size_t n_shots, std::uint64_t seed, double reset_infidelity, unsigned threads) {
    SimulationConfig c;
    c.num_qubits = m.num_qubits();
    c.readout = ReadoutModel::dense(m);
    c.noise = noise;
    c.prep = PrepModel::ideal(c.num_qubits);
    c.initial_state = q;
    c.plan = SequencePlan{Scheme::reset, j_max, Layout::shared, ExecutionOrder::interleaved};
    c.reset_infidelity = reset_infidelity;
    return run_shots(c, n_shots, seed, threads);
}

RecordSet run_prep_parity(double epsilon, double gamma, double x, int j, std::size_t n_shots, std::uint64_t seed,
                          unsigned threads) {
    SimulationConfig c = make_config(1, epsilon, gamma, BitString(1), SequencePlan{});
    c.prep.x = {x};
    c.prep.mode = j == 0 ? PrepMode::conditional_reset : PrepMode::parity_amplified_reset;
    c.prep.parity_j = j;
    return run_shots(c, n_shots, seed, threads);
}

}  // namespace driftmit
