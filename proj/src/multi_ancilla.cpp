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
#include "evq/multi_ancilla.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "evq/statevector.hpp"

namespace evq {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const Circuit &u, const MultiAncillaPlan &plan) {
    if (plan.observables.empty() || plan.observables.size() > 4)
        throw std::invalid_argument("plan supports 1 to 4 observables");
    for (const PauliString &p : plan.observables) {
        if (p.n_qubits() != u.n_qubits)
            throw std::invalid_argument("observable register does not match the circuit");
    }
}

// R_y(theta) = S R_x(theta) S^dag.
void ry(Circuit &c, unsigned q, double theta) {
    c.sdg(q);
    c.rx(q, theta);
    c.s(q);
}

// H applied to t iff control is 1, via H = R_y(pi/4) Z R_y(-pi/4).
void controlled_h(Circuit &c, unsigned control, unsigned t) {
    ry(c, t, -kPi / 4);
    c.cz(control, t);
    ry(c, t, kPi / 4);
}

// Uniform superposition over the labels |0..m| on the ancilla qubits.
void prepare_labels(Circuit &c, unsigned n_system, unsigned n_ancilla, unsigned m) {
    const unsigned a0 = n_system;
    if (m == 1) {
        c.h(a0);
        return;
    }
    if (m == 3) {
        c.h(a0);
        c.h(a0 + 1);
        return;
    }
    // m = 2: sqrt(2/3)|0> + sqrt(1/3)|1> on the top label bit, H below when
    // that bit is 0. m = 4: same shape one qubit up.
    const unsigned top = n_system + n_ancilla - 1;
    const double excess = m == 2 ? std::sqrt(1.0 / 3.0) : std::sqrt(1.0 / 5.0);
    ry(c, top, 2 * std::asin(excess));
    c.x(top);
    for (unsigned q = n_system; q < top; ++q) controlled_h(c, top, q);
    c.x(top);
}

// R about the Z-string on `qubits` through a CX ladder onto the last one.
void parity_rotation(Circuit &c, const std::vector<unsigned> &qubits, double theta) {
    const unsigned root = qubits.back();
    for (std::size_t i = 0; i + 1 < qubits.size(); ++i) c.cx(qubits[i], qubits[i + 1]);
    c.rz(root, theta);
    for (std::size_t i = qubits.size() - 1; i-- > 0;) c.cx(qubits[i], qubits[i + 1]);
}

/**
 * Pauli p on the system under an all-ones control pattern across `controls`,
 * as basis change + CX ladder collapsing p to a single Z, then the
 * multi-controlled Z as a parity-phase gadget:
 * prod_i x_i = 2^{-k} sum_{S != 0} (-1)^{|S|+1} XOR_S x over k+1 qubits.
 */
void multicontrolled_pauli(Circuit &c, const std::vector<unsigned> &controls,
                           const PauliString &p) {
    if (p.coefficient() != std::complex<double>(1, 0))
        throw std::invalid_argument("multicontrol observables must carry coefficient +1");
    if (controls.size() == 1) {
        std::vector<unsigned> target_map(p.n_qubits());
        for (unsigned q = 0; q < p.n_qubits(); ++q) target_map[q] = q;
        c.controlled_pauli(controls[0], p, target_map);
        return;
    }

    Circuit basis(c.n_qubits);
    std::vector<unsigned> zs;
    for (unsigned q = 0; q < p.n_qubits(); ++q) {
        const char letter = p.letter(q);
        if (letter == 'I') continue;
        if (letter == 'X') basis.h(q);
        if (letter == 'Y') {
            basis.sdg(q);
            basis.h(q);
        }
        zs.push_back(q);
    }
    if (zs.empty()) return;  // identity observable
    Circuit ladder(c.n_qubits);
    for (std::size_t i = 0; i + 1 < zs.size(); ++i) ladder.cx(zs[i], zs[i + 1]);

    c.append(basis);
    c.append(ladder);
    std::vector<unsigned> gadget = controls;
    gadget.push_back(zs.back());
    const unsigned k = unsigned(controls.size());
    for (uint64_t subset = 1; subset < (uint64_t{1} << gadget.size()); ++subset) {
        std::vector<unsigned> members;
        for (std::size_t j = 0; j < gadget.size(); ++j)
            if (subset >> j & 1) members.push_back(gadget[j]);
        const double sign = members.size() % 2 ? 1.0 : -1.0;
        parity_rotation(c, members, sign * kPi / double(uint64_t{1} << k));
    }
    c.append(ladder.inverted());
    c.append(basis.inverted());
}

}  // namespace

unsigned ancilla_count(const MultiAncillaPlan &plan) {
    const unsigned m = plan.count();
    if (plan.variant == MultiAncillaVariant::tensor_control) return m;
    unsigned bits = 0;
    while ((1u << bits) < m + 1) ++bits;
    return bits;
}

Circuit build_multi_ancilla_circuit(const Circuit &u, const MultiAncillaPlan &plan) {
    validate(u, plan);
    const unsigned n = u.n_qubits;
    const unsigned m = plan.count();
    const unsigned anc = ancilla_count(plan);
    Circuit c(n + anc);
    std::vector<unsigned> target_map(n);
    for (unsigned q = 0; q < n; ++q) target_map[q] = q;

    if (plan.variant == MultiAncillaVariant::tensor_control) {
        for (unsigned a = 0; a < anc; ++a) c.h(n + a);
        c.append(u);
        for (unsigned i = 0; i < m; ++i)
            c.controlled_pauli(n + i, plan.observables[i], target_map);
        c.append(u.inverted());
        for (unsigned a = 0; a < anc; ++a) c.h(n + a);
        return c;
    }

    prepare_labels(c, n, anc, m);
    c.append(u);
    for (unsigned label = 1; label <= m; ++label) {
        std::vector<unsigned> opens;
        for (unsigned a = 0; a < anc; ++a)
            if (!(label >> a & 1)) opens.push_back(n + a);
        std::vector<unsigned> controls;
        for (unsigned a = 0; a < anc; ++a) controls.push_back(n + a);
        for (const unsigned q : opens) c.x(q);
        multicontrolled_pauli(c, controls, plan.observables[label - 1]);
        for (const unsigned q : opens) c.x(q);
    }
    c.append(u.inverted());
    return c;
}

std::pair<std::vector<std::complex<double>>, double> postselected_ancilla_vector(
    const Circuit &circuit, unsigned n_system, unsigned n_ancilla) {
    Statevector psi(circuit.n_qubits);
    psi.apply(circuit);
    std::vector<std::complex<double>> ancilla(std::size_t{1} << n_ancilla);
    double p0 = 0;
    for (std::size_t b = 0; b < ancilla.size(); ++b) {
        ancilla[b] = psi.amplitudes()[b << n_system];
        p0 += std::norm(ancilla[b]);
    }
    return {ancilla, p0};
}

std::vector<uint64_t> tensor_masks(unsigned m, unsigned n_observables) {
    std::vector<uint64_t> masks;
    const uint64_t bit = uint64_t{1} << (m - 1);
    for (uint64_t a = 0; a < (uint64_t{1} << n_observables); ++a)
        if (a & bit) masks.push_back(a);
    return masks;
}

MultiAncillaStats tensor_stats(const std::vector<std::complex<double>> &ancilla, double p0) {
    const unsigned m_total = unsigned(std::countr_zero(ancilla.size()));
    // X-basis measurement frame: undoing the trailing Hadamards recovers the
    // product-expectation coefficients <P_b>.
    std::vector<std::complex<double>> d(ancilla.size());
    const double root = std::sqrt(double(ancilla.size()));
    for (uint64_t b = 0; b < d.size(); ++b) {
        for (uint64_t c = 0; c < ancilla.size(); ++c)
            d[b] += (std::popcount(b & c) % 2 ? -1.0 : 1.0) * ancilla[c];
        d[b] /= root;
    }
    double norm2 = 0;
    for (const auto &amp : d) norm2 += std::norm(amp);
    if (norm2 <= 0) throw std::domain_error("postselection annihilated the state");

    MultiAncillaStats stats;
    stats.p0 = p0;
    for (uint64_t a = 0; a < d.size(); ++a) {
        double z = 0;
        for (uint64_t b = 0; b < d.size(); ++b)
            z += (std::popcount(a & b) % 2 ? -1.0 : 1.0) * std::norm(d[b]);
        stats.z_strings[a] = z / norm2;
    }
    for (unsigned m = 1; m <= m_total; ++m) {
        const uint64_t bit = uint64_t{1} << (m - 1);
        for (uint64_t a = 0; a < d.size(); ++a) {
            if (a & bit) continue;
            double x = 0;
            for (uint64_t b = 0; b < d.size(); ++b) {
                const double sign = std::popcount(a & b) % 2 ? -1.0 : 1.0;
                x += sign * (std::conj(d[b ^ bit]) * d[b]).real();
            }
            stats.x_strings[{m, a}] = x / norm2;
        }
    }
    return stats;
}

std::vector<double> recover_tensor(const MultiAncillaStats &stats, unsigned n_observables) {
    std::vector<double> values;
    const double scale = double(uint64_t{1} << (n_observables - 1));
    // The normalization in the recovery identities counts every product
    // expectation, which is 2^M times the physical postselection probability.
    const double p0 = stats.p0 * double(uint64_t{1} << n_observables);
    for (unsigned m = 1; m <= n_observables; ++m) {
        double z_avg = 0;
        for (const uint64_t a : tensor_masks(m, n_observables)) {
            const auto it = stats.z_strings.find(a);
            if (it == stats.z_strings.end())
                throw std::invalid_argument("missing Z-string expectation");
            z_avg += it->second / scale;
        }
        const double magnitude_sq = std::max(0.0, 1 - p0 * z_avg);

        double x_avg = 0;
        const uint64_t bit = uint64_t{1} << (m - 1);
        for (uint64_t a = 0; a < (uint64_t{1} << n_observables); ++a) {
            if (a & bit) continue;
            const auto it = stats.x_strings.find({m, a});
            if (it == stats.x_strings.end())
                throw std::invalid_argument("missing X-string expectation");
            x_avg += it->second / scale;
        }
        const double signed_value = p0 * x_avg / 2;
        const double sign = signed_value < 0 ? -1.0 : 1.0;
        values.push_back(sign * std::sqrt(magnitude_sq));
    }
    return values;
}

std::vector<double> recover_multicontrol(const std::vector<std::complex<double>> &ancilla,
                                         unsigned n_observables) {
    if (ancilla.size() <= n_observables)
        throw std::invalid_argument("ancilla vector too short for the plan");
    if (std::abs(ancilla[0]) < 1e-12)
        throw std::domain_error("reference |0> amplitude vanishes");
    std::vector<double> values;
    for (unsigned m = 1; m <= n_observables; ++m)
        values.push_back((ancilla[m] / ancilla[0]).real());
    return values;
}

}  // namespace evq
