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
#include "evq/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace evq {

namespace {

constexpr double kPruneTol = 1e-14;

// Nearest multiple of pi/2, as an exponent mod 4; the caller has already
// checked the angle is Clifford within tolerance.
unsigned quarter_turns(double theta) {
    const long k = std::lround(theta / (std::numbers::pi / 2));
    return unsigned(((k % 4) + 4) % 4);
}

struct Bits {
    uint64_t x, z;
    unsigned s;
};

Bits conjugate_one(Bits b, const GateOp &g) {
    const uint64_t m0 = 1ULL << g.q0;
    const uint64_t m1 = 1ULL << g.q1;
    switch (g.kind) {
        case GateKind::H: {
            const uint64_t x0 = b.x & m0, z0 = b.z & m0;
            b.x = (b.x & ~m0) | (z0 ? m0 : 0);
            b.z = (b.z & ~m0) | (x0 ? m0 : 0);
            if (x0 && z0) b.s += 2;
            return b;
        }
        case GateKind::S:
            if (b.x & m0) {
                b.z ^= m0;
                b.s += 1;
            }
            return b;
        case GateKind::Sdg:
            if (b.x & m0) {
                b.z ^= m0;
                b.s += 3;
            }
            return b;
        case GateKind::X:
            if (b.z & m0) b.s += 2;
            return b;
        case GateKind::Y:
            if (bool(b.x & m0) != bool(b.z & m0)) b.s += 2;
            return b;
        case GateKind::Z:
            if (b.x & m0) b.s += 2;
            return b;
        case GateKind::CX:
            if (b.x & m0) b.x ^= m1;
            if (b.z & m1) b.z ^= m0;
            return b;
        case GateKind::CZ:
            if (b.x & m0) b.z ^= m1;
            if (b.x & m1) b.z ^= m0;
            if ((b.x & m0) && (b.x & m1)) b.s += 2;
            return b;
        case GateKind::CY:
            // CY = S_t CX Sdg_t, so conjugate by Sdg_t, CX, S_t in turn.
            b = conjugate_one(b, {GateKind::Sdg, g.q1});
            b = conjugate_one(b, {GateKind::CX, g.q0, g.q1});
            b = conjugate_one(b, {GateKind::S, g.q1});
            return b;
        case GateKind::RZ: {
            const unsigned k = quarter_turns(g.angle);
            for (unsigned i = 0; i < k; ++i) {
                b = conjugate_one(b, {GateKind::S, g.q0});
            }
            return b;
        }
        case GateKind::RX: {
            b = conjugate_one(b, {GateKind::H, g.q0});
            b = conjugate_one(b, {GateKind::RZ, g.q0, 0, g.angle});
            b = conjugate_one(b, {GateKind::H, g.q0});
            return b;
        }
        case GateKind::RZZ: {
            b = conjugate_one(b, {GateKind::CX, g.q0, g.q1});
            b = conjugate_one(b, {GateKind::RZ, g.q1, 0, g.angle});
            b = conjugate_one(b, {GateKind::CX, g.q0, g.q1});
            return b;
        }
    }
    throw std::logic_error("unreachable gate kind");
}

void check_clifford(const GateOp &g) {
    if (is_rotation(g.kind) && !is_clifford_angle(g.angle)) {
        throw std::invalid_argument("non-Clifford rotation passed to stabilizer backend");
    }
}

}  // namespace

PauliString clifford_conjugate(const PauliString &p, const GateOp &gate) {
    check_clifford(gate);
    const Bits b = conjugate_one({p.x_bits(), p.z_bits(), p.phase_power()}, gate);
    return PauliString(p.n_qubits(), b.x, b.z, b.s & 3);
}

PauliString clifford_conjugate(const PauliString &p, const GateOp *first, const GateOp *last) {
    Bits b{p.x_bits(), p.z_bits(), p.phase_power()};
    for (const GateOp *g = first; g != last; ++g) {
        check_clifford(*g);
        b = conjugate_one(b, *g);
    }
    return PauliString(p.n_qubits(), b.x, b.z, b.s & 3);
}

StabilizerTableau::StabilizerTableau(unsigned n_qubits) : n_(n_qubits) {
    rows_.reserve(2 * n_);
    for (unsigned i = 0; i < n_; ++i) {
        rows_.push_back(PauliString::single(n_, i, 'X'));
    }
    for (unsigned i = 0; i < n_; ++i) {
        rows_.push_back(PauliString::single(n_, i, 'Z'));
    }
}

void StabilizerTableau::apply(const GateOp &gate) {
    for (PauliString &row : rows_) {
        row = clifford_conjugate(row, gate);
    }
}

void StabilizerTableau::apply(const Circuit &circuit) {
    if (circuit.n_qubits != n_) {
        throw std::invalid_argument("circuit register size mismatch");
    }
    for (const GateOp &g : circuit.gates) {
        apply(g);
    }
}

uint64_t StabilizerTableau::syndrome(const PauliString &p) const {
    uint64_t syn = 0;
    for (unsigned i = 0; i < n_; ++i) {
        const PauliString &st = rows_[n_ + i];
        const unsigned anti =
            (std::popcount(p.x_bits() & st.z_bits()) + std::popcount(p.z_bits() & st.x_bits())) & 1;
        syn |= uint64_t(anti) << i;
    }
    return syn;
}

std::complex<double> StabilizerTableau::expectation_complex(const PauliString &p) const {
    if (p.n_qubits() != n_) {
        throw std::invalid_argument("Pauli dimension mismatch");
    }
    if (syndrome(p) != 0) {
        return 0.0;
    }
    // p commutes with the full stabilizer group, which is maximal, so its
    // bit pattern is a product of stabilizer rows. The subset is read off
    // the destabilizer pairing, and the phase mismatch is the answer.
    PauliString q(n_);
    for (unsigned i = 0; i < n_; ++i) {
        const PauliString &de = rows_[i];
        const unsigned anti =
            (std::popcount(p.x_bits() & de.z_bits()) + std::popcount(p.z_bits() & de.x_bits())) & 1;
        if (anti) {
            q = q * rows_[n_ + i];
        }
    }
    return p.coefficient() / q.coefficient();
}

int StabilizerTableau::expectation(const PauliString &p) const {
    const std::complex<double> v = expectation_complex(p);
    if (std::abs(v) < 0.5) {
        return 0;
    }
    return v.real() > 0 ? 1 : -1;
}

NearCliffordState expand_non_clifford(const Circuit &circuit,
                                      const std::vector<std::size_t> &free_indices,
                                      unsigned branch_budget) {
    const unsigned L = unsigned(free_indices.size());
    if (L > branch_budget) {
        throw std::invalid_argument("non-Clifford branch budget exceeded");
    }
    std::vector<std::size_t> order = free_indices;
    std::sort(order.begin(), order.end());
    for (std::size_t idx : order) {
        if (idx >= circuit.gates.size() || !is_rotation(circuit.gates[idx].kind)) {
            throw std::invalid_argument("free index does not name a rotation gate");
        }
    }

    // Clifford frame: the circuit with the free rotations removed.
    Circuit frame(circuit.n_qubits);
    std::size_t next = 0;
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        if (next < order.size() && order[next] == i) {
            ++next;
        } else {
            frame.push(circuit.gates[i]);
        }
    }

    NearCliffordState state{StabilizerTableau(circuit.n_qubits), {}, {}};
    state.tableau.apply(frame);

    // Rotation axis of each free gate, pushed through the Clifford gates
    // that come after it (free rotations excluded; their branch Paulis are
    // multiplied in descending order so they never cross each other).
    std::vector<PauliString> pushed;
    std::vector<double> angles;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const GateOp &g = circuit.gates[order[pos]];
        PauliString axis(circuit.n_qubits);
        switch (g.kind) {
            case GateKind::RX: axis = PauliString::single(circuit.n_qubits, g.q0, 'X'); break;
            case GateKind::RZ: axis = PauliString::single(circuit.n_qubits, g.q0, 'Z'); break;
            case GateKind::RZZ:
                axis = PauliString::single(circuit.n_qubits, g.q0, 'Z') *
                       PauliString::single(circuit.n_qubits, g.q1, 'Z');
                break;
            default: throw std::invalid_argument("free index does not name a rotation gate");
        }
        std::vector<GateOp> suffix;
        std::size_t skip = pos + 1;
        for (std::size_t i = order[pos] + 1; i < circuit.gates.size(); ++i) {
            if (skip < order.size() && order[skip] == i) {
                ++skip;
            } else {
                suffix.push_back(circuit.gates[i]);
            }
        }
        pushed.push_back(clifford_conjugate(axis, suffix.data(), suffix.data() + suffix.size()));
        angles.push_back(g.angle);
    }
    state.source_angles = angles;

    // Merge branches by displacement bit pattern; the phase is folded into
    // the amplitude so equal patterns add coherently.
    std::map<std::pair<uint64_t, uint64_t>, std::size_t> index;
    std::vector<NearCliffordBranch> merged;
    const std::complex<double> minus_i(0, -1);
    for (uint64_t mask = 0; mask < (1ULL << L); ++mask) {
        std::complex<double> amp = 1.0;
        PauliString disp(circuit.n_qubits);
        for (unsigned ell = L; ell-- > 0;) {
            if (mask & (1ULL << ell)) {
                amp *= minus_i * std::sin(angles[ell] / 2);
                disp = disp * pushed[ell];
            } else {
                amp *= std::cos(angles[ell] / 2);
            }
        }
        if (std::abs(amp) < kPruneTol) {
            continue;
        }
        // Keep the Hermitian representative (coefficient +1) as the branch
        // displacement and fold the true coefficient into the amplitude.
        const PauliString bare(circuit.n_qubits, disp.x_bits(), disp.z_bits(),
                               unsigned(std::popcount(disp.x_bits() & disp.z_bits()) % 4));
        amp *= disp.coefficient();
        auto [it, inserted] = index.try_emplace(std::make_pair(disp.x_bits(), disp.z_bits()),
                                                merged.size());
        if (inserted) {
            merged.push_back({amp, bare});
        } else {
            merged[it->second].amplitude += amp;
        }
    }
    std::erase_if(merged, [](const NearCliffordBranch &b) {
        return std::abs(b.amplitude) < kPruneTol;
    });
    state.branches = std::move(merged);
    return state;
}

std::complex<double> near_clifford_expectation_raw(const NearCliffordState &state,
                                                   const PauliString &p) {
    const auto &branches = state.branches;
    const std::size_t n_branches = branches.size();
    std::vector<uint64_t> syn(n_branches);
    for (std::size_t j = 0; j < n_branches; ++j) {
        syn[j] = state.tableau.syndrome(branches[j].displacement);
    }
    const uint64_t syn_p = state.tableau.syndrome(p);

    std::unordered_map<uint64_t, std::vector<std::size_t>> buckets;
    for (std::size_t k = 0; k < n_branches; ++k) {
        buckets[syn[k]].push_back(k);
    }

    std::complex<double> total = 0.0;
    for (std::size_t j = 0; j < n_branches; ++j) {
        const auto it = buckets.find(syn[j] ^ syn_p);
        if (it == buckets.end()) {
            continue;
        }
        for (std::size_t k : it->second) {
            const PauliString q = branches[j].displacement.adjoint() * p * branches[k].displacement;
            total += std::conj(branches[j].amplitude) * branches[k].amplitude *
                     state.tableau.expectation_complex(q);
        }
    }
    return total;
}

double near_clifford_expectation(const NearCliffordState &state, const PauliString &p) {
    const std::complex<double> v = near_clifford_expectation_raw(state, p);
    return std::clamp(v.real(), -1.0, 1.0);
}

}  // namespace evq
