// Copyright 2026 The evq contributors.
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
#include "evq/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

namespace evq {

namespace {

ShotRecord make_record(uint64_t bits, unsigned ancilla, char basis) {
    const uint64_t low = bits & ((1ULL << ancilla) - 1);
    const uint64_t high = (bits >> (ancilla + 1)) << ancilla;
    return ShotRecord{low | high, (bits >> ancilla) & 1 ? -1 : +1, basis};
}

}  // namespace

NoisyCircuit with_depolarizing_noise(const Circuit &circuit, double p1, double p2) {
    NoisyCircuit out{circuit, {}};
    out.channels.reserve(circuit.gates.size());
    for (const GateOp &g : circuit.gates) {
        if (g.arity() == 2) {
            out.channels.push_back(
                PauliChannel::two_qubit_depolarizing(circuit.n_qubits, g.q0, g.q1, p2));
        } else {
            out.channels.push_back(PauliChannel::single_qubit_depolarizing(circuit.n_qubits, g.q0, p1));
        }
    }
    return out;
}

void append_basis_rotation(Circuit &circuit, unsigned ancilla, char basis) {
    switch (basis) {
        case 'Z': return;
        case 'X': circuit.h(ancilla); return;
        case 'Y': circuit.sdg(ancilla).h(ancilla); return;
        default: throw std::invalid_argument("basis must be one of X, Y, Z");
    }
}

std::vector<ShotRecord> measure_shots(const Statevector &state, unsigned ancilla, char basis,
                                      std::size_t n_shots, uint64_t seed, uint64_t stream) {
    Statevector rotated = state;
    Circuit rot(state.n_qubits());
    append_basis_rotation(rot, ancilla, basis);
    rotated.apply(rot);
    const std::vector<double> cum = rotated.cumulative_distribution();
    SplitMix64 rng(seed, stream);
    std::vector<ShotRecord> records;
    records.reserve(n_shots);
    for (std::size_t i = 0; i < n_shots; ++i) {
        records.push_back(make_record(Statevector::sample(cum, rng), ancilla, basis));
    }
    return records;
}

std::vector<ShotRecord> sample_trajectories(const NoisyCircuit &noisy, unsigned ancilla,
                                            char basis, std::size_t n_shots, uint64_t seed,
                                            uint64_t stream0, unsigned n_threads) {
    const Circuit &circuit = noisy.circuit;
    if (!noisy.channels.empty() && noisy.channels.size() != circuit.gates.size()) {
        throw std::invalid_argument("channel list must be empty or match the gate count");
    }

    // Locations that actually consume a random draw.
    std::vector<std::size_t> noisy_locations;
    for (std::size_t i = 0; i < noisy.channels.size(); ++i) {
        if (!noisy.channels[i].is_identity()) {
            noisy_locations.push_back(i);
        }
    }

    // Phase 1: draw every trajectory's error pattern, keeping each
    // generator alive for its measurement draw.
    using Pattern = std::vector<std::pair<std::size_t, std::size_t>>;  // (location, error index)
    std::vector<SplitMix64> generators;
    std::vector<std::size_t> pattern_of(n_shots);
    std::map<Pattern, std::size_t> pattern_ids;
    std::vector<Pattern> patterns;
    generators.reserve(n_shots);
    for (std::size_t t = 0; t < n_shots; ++t) {
        SplitMix64 rng(seed, stream0 + t);
        Pattern pat;
        for (std::size_t loc : noisy_locations) {
            const std::size_t idx = noisy.channels[loc].sample(rng);
            if (!noisy.channels[loc].errors()[idx].pauli.is_identity_bits()) {
                pat.emplace_back(loc, idx);
            }
        }
        auto [it, inserted] = pattern_ids.try_emplace(std::move(pat), patterns.size());
        if (inserted) {
            patterns.push_back(it->first);
        }
        pattern_of[t] = it->second;
        generators.push_back(rng);
    }

    // Phase 2: one simulation per unique pattern. Every pattern shares the
    // noiseless prefix up to its first error, so patterns are processed in
    // ascending first-error order against a rolling prefix state; each
    // worker owns a contiguous chunk and replays its prefix at most once.
    const std::size_t n_gates = circuit.gates.size();
    Circuit rot(circuit.n_qubits);
    append_basis_rotation(rot, ancilla, basis);
    std::vector<std::vector<double>> distributions(patterns.size());
    std::vector<std::size_t> order(patterns.size());
    for (std::size_t p = 0; p < order.size(); ++p) {
        order[p] = p;
    }
    auto first_error = [&](std::size_t p) {
        return patterns[p].empty() ? n_gates : patterns[p].front().first;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return first_error(a) < first_error(b);
    });
    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        Statevector prefix(circuit.n_qubits);
        std::size_t prefix_gates = 0;  // gates [0, prefix_gates) applied
        for (std::size_t k = begin; k < end; ++k) {
            const std::size_t p = order[k];
            const std::size_t f = first_error(p);
            for (; prefix_gates < f; ++prefix_gates) {
                prefix.apply(circuit.gates[prefix_gates]);
            }
            Statevector psi = prefix;
            auto next_err = patterns[p].begin();
            for (std::size_t i = f; i < n_gates; ++i) {
                psi.apply(circuit.gates[i]);
                if (next_err != patterns[p].end() && next_err->first == i) {
                    psi.apply_pauli(noisy.channels[i].errors()[next_err->second].pauli);
                    ++next_err;
                }
            }
            psi.apply(rot);
            distributions[p] = psi.cumulative_distribution();
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        std::min<std::size_t>(n_threads == 0 ? hw : n_threads, patterns.size());
    if (workers <= 1) {
        run_chunk(0, patterns.size());
    } else {
        // Balance chunks by remaining-suffix work.
        std::vector<std::size_t> cuts{0};
        std::size_t total = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            total += n_gates + 1 - first_error(order[k]);
        }
        std::size_t acc = 0, next_target = 1;
        for (std::size_t k = 0; k < order.size() && cuts.size() < workers; ++k) {
            acc += n_gates + 1 - first_error(order[k]);
            if (acc * workers >= total * next_target) {
                cuts.push_back(k + 1);
                ++next_target;
            }
        }
        cuts.push_back(order.size());
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
            pool.emplace_back(run_chunk, cuts[w], cuts[w + 1]);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    // Phase 3: finish each trajectory with its own saved generator.
    std::vector<ShotRecord> records;
    records.reserve(n_shots);
    for (std::size_t t = 0; t < n_shots; ++t) {
        const uint64_t bits = Statevector::sample(distributions[pattern_of[t]], generators[t]);
        records.push_back(make_record(bits, ancilla, basis));
    }
    return records;
}

}  // namespace evq
