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
#include "evq/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace evq {

PauliChannel::PauliChannel(unsigned n_qubits, std::vector<PauliError> errors)
    : n_(n_qubits), errors_(std::move(errors)) {
    double total = 0;
    cumulative_.reserve(errors_.size());
    for (const PauliError &e : errors_) {
        if (e.pauli.n_qubits() != n_) {
            throw std::invalid_argument("channel error dimension mismatch");
        }
        if (e.probability < -1e-15 || e.probability > 1 + 1e-12) {
            throw std::invalid_argument("channel rate outside [0,1]");
        }
        total += e.probability;
        cumulative_.push_back(total);
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("channel rates must sum to 1");
    }
}

PauliChannel PauliChannel::identity(unsigned n_qubits) {
    return PauliChannel(n_qubits, {{PauliString(n_qubits), 1.0}});
}

PauliChannel PauliChannel::depolarizing(unsigned n_qubits, double delta) {
    if (n_qubits > 8) {
        throw std::invalid_argument("dense depolarizing enumeration capped at 8 qubits");
    }
    const double d2 = std::pow(4.0, n_qubits);
    std::vector<PauliError> errors;
    errors.reserve(static_cast<std::size_t>(d2));
    for (PauliString &p : enumerate_paulis(n_qubits)) {
        const double rate = p.is_identity_bits() ? 1.0 - delta + delta / d2 : delta / d2;
        errors.push_back({std::move(p), rate});
    }
    return PauliChannel(n_qubits, std::move(errors));
}

namespace {
PauliChannel embedded_depolarizing(unsigned n_qubits, const std::vector<unsigned> &qubits,
                                   double delta) {
    const unsigned k = qubits.size();
    const std::size_t count = std::size_t{1} << (2 * k);
    const double rate = delta / double(count);
    std::vector<PauliError> errors;
    errors.reserve(count);
    for (std::size_t code = 0; code < count; ++code) {
        uint64_t x = 0, z = 0;
        unsigned y = 0;
        for (unsigned j = 0; j < k; ++j) {
            const unsigned letter = (code >> (2 * j)) & 3;  // 0=I 1=X 2=Y 3=Z
            if (letter == 1 || letter == 2) x |= 1ULL << qubits[j];
            if (letter == 2 || letter == 3) z |= 1ULL << qubits[j];
            if (letter == 2) ++y;
        }
        const double p = code == 0 ? 1.0 - delta + rate : rate;
        errors.push_back({PauliString(n_qubits, x, z, y & 3), p});
    }
    return PauliChannel(n_qubits, std::move(errors));
}
}  // namespace

PauliChannel PauliChannel::two_qubit_depolarizing(unsigned n_qubits, unsigned a, unsigned b,
                                                  double delta) {
    return embedded_depolarizing(n_qubits, {a, b}, delta);
}

PauliChannel PauliChannel::single_qubit_depolarizing(unsigned n_qubits, unsigned q, double delta) {
    return embedded_depolarizing(n_qubits, {q}, delta);
}

bool PauliChannel::is_identity() const {
    for (const PauliError &e : errors_) {
        if (!e.pauli.is_identity_bits() && e.probability > 0) {
            return false;
        }
    }
    return true;
}

std::size_t PauliChannel::sample(SplitMix64 &rng) const {
    return rng.categorical(cumulative_);
}

std::vector<PauliString> enumerate_paulis(unsigned n_qubits) {
    if (n_qubits > 8) {
        throw std::invalid_argument("Pauli enumeration capped at 8 qubits");
    }
    const std::size_t count = std::size_t{1} << (2 * n_qubits);
    std::vector<PauliString> out;
    out.reserve(count);
    for (std::size_t code = 0; code < count; ++code) {
        uint64_t x = 0, z = 0;
        unsigned y = 0;
        for (unsigned q = 0; q < n_qubits; ++q) {
            const unsigned letter = (code >> (2 * q)) & 3;
            if (letter == 1 || letter == 2) x |= 1ULL << q;
            if (letter == 2 || letter == 3) z |= 1ULL << q;
            if (letter == 2) ++y;
        }
        out.emplace_back(n_qubits, x, z, y & 3);
    }
    return out;
}

}  // namespace evq
