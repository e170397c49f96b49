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
#include "evq/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evq {

namespace {
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}  // namespace

template <typename R>
BasicStatevector<R>::BasicStatevector(unsigned n_qubits)
    : n_(n_qubits), amps_(std::size_t{1} << n_qubits) {
    if (n_qubits > 28) {
        throw std::invalid_argument("statevector register too large");
    }
    amps_[0] = R(1);
}

template <typename R>
void BasicStatevector<R>::apply(const GateOp &gate) {
    using C = amp_t;
    if (gate.q0 >= n_ || (gate.arity() == 2 && gate.q1 >= n_)) {
        throw std::out_of_range("gate target out of range");
    }
    const std::size_t dim = amps_.size();
    const std::size_t b0 = std::size_t{1} << gate.q0;
    // Butterfly kernels walk contiguous stride-b0 blocks so the inner loop
    // carries no per-index bit test and vectorizes.
    switch (gate.kind) {
        case GateKind::H: {
            const R k = R(kInvSqrt2);
            for (std::size_t base = 0; base < dim; base += 2 * b0)
                for (std::size_t i = base; i < base + b0; ++i) {
                    const C a = amps_[i], b = amps_[i | b0];
                    amps_[i] = k * (a + b);
                    amps_[i | b0] = k * (a - b);
                }
            break;
        }
        case GateKind::S: {
            for (std::size_t base = b0; base < dim; base += 2 * b0)
                for (std::size_t i = base; i < base + b0; ++i)
                    amps_[i] = C(-amps_[i].imag(), amps_[i].real());
            break;
        }
        case GateKind::Sdg: {
            for (std::size_t base = b0; base < dim; base += 2 * b0)
                for (std::size_t i = base; i < base + b0; ++i)
                    amps_[i] = C(amps_[i].imag(), -amps_[i].real());
            break;
        }
        case GateKind::X: {
            for (std::size_t base = 0; base < dim; base += 2 * b0)
                for (std::size_t i = base; i < base + b0; ++i)
                    std::swap(amps_[i], amps_[i | b0]);
            break;
        }
        case GateKind::Y: {
            for (std::size_t base = 0; base < dim; base += 2 * b0)
                for (std::size_t i = base; i < base + b0; ++i) {
                    const C a = amps_[i], b = amps_[i | b0];
                    amps_[i] = C(b.imag(), -b.real());
                    amps_[i | b0] = C(-a.imag(), a.real());
                }
            break;
        }
        case GateKind::Z: {
            for (std::size_t base = b0; base < dim; base += 2 * b0)
                for (std::size_t i = base; i < base + b0; ++i)
                    amps_[i] = -amps_[i];
            break;
        }
        case GateKind::RX: {
            const R c = R(std::cos(gate.angle / 2));
            const R s = R(-std::sin(gate.angle / 2));
            for (std::size_t base = 0; base < dim; base += 2 * b0)
                for (std::size_t i = base; i < base + b0; ++i) {
                    const C a = amps_[i], b = amps_[i | b0];
                    amps_[i] = C(c * a.real() - s * b.imag(), c * a.imag() + s * b.real());
                    amps_[i | b0] = C(c * b.real() - s * a.imag(), c * b.imag() + s * a.real());
                }
            break;
        }
        case GateKind::RZ: {
            const C p0(R(std::cos(gate.angle / 2)), R(-std::sin(gate.angle / 2)));
            const C p1 = std::conj(p0);
            for (std::size_t base = 0; base < dim; base += 2 * b0) {
                for (std::size_t i = base; i < base + b0; ++i) amps_[i] *= p0;
                for (std::size_t i = base + b0; i < base + 2 * b0; ++i) amps_[i] *= p1;
            }
            break;
        }
        case GateKind::RZZ: {
            const std::size_t b1 = std::size_t{1} << gate.q1;
            const std::size_t lo = std::min(b0, b1), hi = std::max(b0, b1);
            const C even(R(std::cos(gate.angle / 2)), R(-std::sin(gate.angle / 2)));
            const C odd = std::conj(even);
            for (std::size_t outer = 0; outer < dim; outer += 2 * hi)
                for (std::size_t mid = outer; mid < outer + 2 * hi; mid += 2 * lo) {
                    const bool flip = (mid & hi) != 0;
                    const C f0 = flip ? odd : even, f1 = flip ? even : odd;
                    for (std::size_t i = mid; i < mid + lo; ++i) amps_[i] *= f0;
                    for (std::size_t i = mid + lo; i < mid + 2 * lo; ++i) amps_[i] *= f1;
                }
            break;
        }
        case GateKind::CX: {
            const std::size_t b1 = std::size_t{1} << gate.q1;
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & b0) && !(i & b1)) {
                    std::swap(amps_[i], amps_[i | b1]);
                }
            }
            break;
        }
        case GateKind::CY: {
            const std::size_t b1 = std::size_t{1} << gate.q1;
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & b0) && !(i & b1)) {
                    const C a = amps_[i], b = amps_[i | b1];
                    amps_[i] = C(b.imag(), -b.real());
                    amps_[i | b1] = C(-a.imag(), a.real());
                }
            }
            break;
        }
        case GateKind::CZ: {
            const std::size_t b1 = std::size_t{1} << gate.q1;
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & b0) && (i & b1)) {
                    amps_[i] = -amps_[i];
                }
            }
            break;
        }
    }
}

template <typename R>
void BasicStatevector<R>::apply(const Circuit &circuit) {
    if (circuit.n_qubits != n_) {
        throw std::invalid_argument("circuit register size mismatch");
    }
    for (const GateOp &g : circuit.gates) {
        apply(g);
    }
}

template <typename R>
void BasicStatevector<R>::apply_pauli(const PauliString &p) {
    using C = amp_t;
    if (p.n_qubits() != n_) {
        throw std::invalid_argument("Pauli dimension mismatch");
    }
    const uint64_t x = p.x_bits(), z = p.z_bits();
    const cplx ph = kIPow[p.phase_power()];
    const C phase(R(ph.real()), R(ph.imag()));
    const std::size_t dim = amps_.size();
    if (x == 0) {
        for (std::size_t i = 0; i < dim; ++i) {
            const R sign = std::popcount(i & z) & 1 ? R(-1) : R(1);
            amps_[i] *= phase * sign;
        }
        return;
    }
    // out[b ^ x] = phase * (-1)^{|b & z|} in[b]  (Z acts before X).
    std::vector<C> out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const R sign = std::popcount(i & z) & 1 ? R(-1) : R(1);
        out[i ^ x] = phase * sign * amps_[i];
    }
    amps_ = std::move(out);
}

template <typename R>
double BasicStatevector<R>::norm() const {
    double s = 0;
    for (const amp_t &a : amps_) {
        s += double(a.real()) * a.real() + double(a.imag()) * a.imag();
    }
    return std::sqrt(s);
}

template <typename R>
cplx BasicStatevector<R>::inner(const BasicStatevector &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("register size mismatch");
    }
    cplx s = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        s += std::conj(cplx(amps_[i])) * cplx(other.amps_[i]);
    }
    return s;
}

template <typename R>
cplx BasicStatevector<R>::expectation_complex(const PauliString &p) const {
    if (p.n_qubits() != n_) {
        throw std::invalid_argument("Pauli dimension mismatch");
    }
    const uint64_t x = p.x_bits(), z = p.z_bits();
    const cplx phase = kIPow[p.phase_power()];
    cplx s = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const int sign = std::popcount(i & z) & 1 ? -1 : 1;
        s += std::conj(cplx(amps_[i ^ x])) * (phase * double(sign) * cplx(amps_[i]));
    }
    return s;
}

template <typename R>
double BasicStatevector<R>::expectation(const PauliString &p) const {
    return expectation_complex(p).real();
}

template <typename R>
double BasicStatevector<R>::zero_probability(uint64_t qubit_mask) const {
    double p = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & qubit_mask) == 0) {
            p += double(amps_[i].real()) * amps_[i].real() +
                 double(amps_[i].imag()) * amps_[i].imag();
        }
    }
    return p;
}

template <typename R>
std::vector<double> BasicStatevector<R>::cumulative_distribution() const {
    std::vector<double> cum(amps_.size());
    double acc = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += double(amps_[i].real()) * amps_[i].real() +
               double(amps_[i].imag()) * amps_[i].imag();
        cum[i] = acc;
    }
    return cum;
}

template <typename R>
uint64_t BasicStatevector<R>::sample(SplitMix64 &rng) const {
    const double u = rng.uniform();
    double acc = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += double(amps_[i].real()) * amps_[i].real() +
               double(amps_[i].imag()) * amps_[i].imag();
        if (u < acc) {
            return i;
        }
    }
    return amps_.size() - 1;
}

template <typename R>
uint64_t BasicStatevector<R>::sample(std::span<const double> cumulative, SplitMix64 &rng) {
    const double u = rng.uniform();
    std::size_t lo = 0, hi = cumulative.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cumulative[mid] <= u) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo < cumulative.size() ? lo : cumulative.size() - 1;
}

template class BasicStatevector<double>;

Statevector run_circuit(const Circuit &circuit) {
    Statevector psi(circuit.n_qubits);
    psi.apply(circuit);
    return psi;
}

}  // namespace evq
