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
#include "evq/pauli.hpp"

#include <stdexcept>

namespace evq {

namespace {
constexpr std::complex<double> kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}

PauliString::PauliString(unsigned n_qubits, uint64_t x_bits, uint64_t z_bits, unsigned phase_power)
    : n_(n_qubits), x_(x_bits), z_(z_bits), s_(phase_power & 3) {
    if (n_qubits > 64) {
        throw std::invalid_argument("PauliString supports at most 64 qubits");
    }
    const uint64_t mask = n_qubits == 64 ? ~0ULL : ((1ULL << n_qubits) - 1);
    if ((x_ & ~mask) != 0 || (z_ & ~mask) != 0) {
        throw std::invalid_argument("Pauli bitmask exceeds qubit count");
    }
}

PauliString PauliString::parse(std::string_view text) {
    std::size_t pos = 0;
    unsigned s = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') {
            s += 2;
        }
        ++pos;
    }
    if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j')) {
        s += 1;
        ++pos;
    }
    uint64_t x = 0, z = 0;
    unsigned n = 0;
    unsigned y_count = 0;
    for (; pos < text.size(); ++pos, ++n) {
        if (n >= 64) {
            throw std::invalid_argument("Pauli literal longer than 64 qubits");
        }
        switch (text[pos]) {
            case 'I':
                break;
            case 'X':
                x |= 1ULL << n;
                break;
            case 'Y':
                x |= 1ULL << n;
                z |= 1ULL << n;
                ++y_count;
                break;
            case 'Z':
                z |= 1ULL << n;
                break;
            default:
                throw std::invalid_argument(std::string("bad Pauli letter: ") + text[pos]);
        }
    }
    if (n == 0) {
        throw std::invalid_argument("empty Pauli literal");
    }
    // Each printed Y stands for iXZ in the internal form.
    return PauliString(n, x, z, (s + y_count) & 3);
}

PauliString PauliString::single(unsigned n_qubits, unsigned qubit, char letter) {
    if (qubit >= n_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    switch (letter) {
        case 'I':
            return PauliString(n_qubits);
        case 'X':
            return PauliString(n_qubits, 1ULL << qubit, 0);
        case 'Y':
            return PauliString(n_qubits, 1ULL << qubit, 1ULL << qubit, 1);
        case 'Z':
            return PauliString(n_qubits, 0, 1ULL << qubit);
        default:
            throw std::invalid_argument(std::string("bad Pauli letter: ") + letter);
    }
}

std::complex<double> PauliString::coefficient() const {
    const unsigned y_count = std::popcount(x_ & z_);
    // Printed Y absorbs a factor i from each XZ pair: coeff = i^s * (-i)^{#Y}.
    return kIPowers[(s_ + 4 - (y_count % 4)) % 4];
}

char PauliString::letter(unsigned qubit) const {
    const bool x = (x_ >> qubit) & 1;
    const bool z = (z_ >> qubit) & 1;
    if (x && z) {
        return 'Y';
    }
    if (x) {
        return 'X';
    }
    if (z) {
        return 'Z';
    }
    return 'I';
}

PauliString operator*(const PauliString &p, const PauliString &q) {
    if (p.n_ != q.n_) {
        throw std::invalid_argument("Pauli dimension mismatch in product");
    }
    PauliString r;
    r.n_ = p.n_;
    r.x_ = p.x_ ^ q.x_;
    r.z_ = p.z_ ^ q.z_;
    // Commuting q's X block left past p's Z block: Z X = -X Z per overlap bit.
    const unsigned swaps = std::popcount(p.z_ & q.x_);
    r.s_ = (p.s_ + q.s_ + 2 * swaps) & 3;
    return r;
}

bool PauliString::commutes_with(const PauliString &q) const {
    if (n_ != q.n_) {
        throw std::invalid_argument("Pauli dimension mismatch in commutator");
    }
    const unsigned anti = std::popcount(x_ & q.z_) + std::popcount(z_ & q.x_);
    return (anti & 1) == 0;
}

PauliString PauliString::adjoint() const {
    // (i^s X Z)^dag = (-i)^s Z X = (-i)^s (-1)^{x&z overlap} X Z
    PauliString r = *this;
    r.s_ = (4 - s_ + 2 * std::popcount(x_ & z_)) & 3;
    return r;
}

PauliString PauliString::with_extra_phase(unsigned k) const {
    PauliString r = *this;
    r.s_ = (s_ + k) & 3;
    return r;
}

std::string PauliString::str() const {
    std::string out;
    const std::complex<double> c = coefficient();
    if (c.real() < -0.5) {
        out += "-";
    } else if (c.imag() > 0.5) {
        out += "i";
    } else if (c.imag() < -0.5) {
        out += "-i";
    }
    for (unsigned q = 0; q < n_; ++q) {
        out += letter(q);
    }
    return out;
}

SystemAncillaSplit split(const PauliString &p, unsigned ancilla_index) {
    const unsigned n = p.n_qubits();
    if (ancilla_index >= n) {
        throw std::out_of_range("ancilla index out of range");
    }
    const uint64_t low = ancilla_index == 0 ? 0 : ((1ULL << ancilla_index) - 1);
    const uint64_t x = (p.x_bits() & low) | ((p.x_bits() >> 1) & ~low);
    const uint64_t z = (p.z_bits() & low) | ((p.z_bits() >> 1) & ~low);
    const bool ax = (p.x_bits() >> ancilla_index) & 1;
    const bool az = (p.z_bits() >> ancilla_index) & 1;
    char anc = 'I';
    unsigned phase = p.phase_power();
    if (ax && az) {
        anc = 'Y';
        phase = (phase + 3) & 3;  // peel the i from the ancilla's XZ pair
    } else if (ax) {
        anc = 'X';
    } else if (az) {
        anc = 'Z';
    }
    return {PauliString(n - 1, x, z, phase), anc};
}

PauliString recombine(const SystemAncillaSplit &parts, unsigned ancilla_index) {
    const PauliString &sys = parts.system_part;
    const unsigned n = sys.n_qubits() + 1;
    if (ancilla_index >= n) {
        throw std::out_of_range("ancilla index out of range");
    }
    const uint64_t low = ancilla_index == 0 ? 0 : ((1ULL << ancilla_index) - 1);
    uint64_t x = (sys.x_bits() & low) | ((sys.x_bits() & ~low) << 1);
    uint64_t z = (sys.z_bits() & low) | ((sys.z_bits() & ~low) << 1);
    unsigned phase = sys.phase_power();
    switch (parts.ancilla_letter) {
        case 'I':
            break;
        case 'X':
            x |= 1ULL << ancilla_index;
            break;
        case 'Y':
            x |= 1ULL << ancilla_index;
            z |= 1ULL << ancilla_index;
            phase = (phase + 1) & 3;
            break;
        case 'Z':
            z |= 1ULL << ancilla_index;
            break;
        default:
            throw std::invalid_argument("bad ancilla letter");
    }
    return PauliString(n, x, z, phase);
}

}  // namespace evq
