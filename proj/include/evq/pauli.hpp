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
#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace evq {

/**
 * N-qubit Pauli operator in symplectic form, N <= 64.
 *
 * Internally P = i^phase_power * prod_q X_q^{x_q} Z_q^{z_q} with the X factor
 * written to the left of Z on each qubit. The phase convention is Y = iXZ
 * (equivalently XZ = -iY); it is fixed once here and every other module and
 * oracle follows it.
 */
class PauliString {
  public:
    PauliString() = default;

    /// Identity on n qubits.
    explicit PauliString(unsigned n_qubits) : n_(n_qubits), x_(0), z_(0), s_(0) {}

    /// From raw symplectic data; phase_power is the exponent of i in the XZ form.
    PauliString(unsigned n_qubits, uint64_t x_bits, uint64_t z_bits, unsigned phase_power = 0);

    /// Parses literals like "XIZY", "-XZ", "iY", "-iZZ". Leftmost letter is qubit 0.
    static PauliString parse(std::string_view text);

    /// Single-qubit letter c in {I,X,Y,Z} embedded at `qubit` of an n-qubit register.
    static PauliString single(unsigned n_qubits, unsigned qubit, char letter);

    unsigned n_qubits() const { return n_; }
    uint64_t x_bits() const { return x_; }
    uint64_t z_bits() const { return z_; }
    unsigned phase_power() const { return s_; }

    /// Scalar coefficient in {1, i, -1, -i} once XZ pairs are read as Y.
    std::complex<double> coefficient() const;

    /// Letter on one qubit, ignoring the global coefficient.
    char letter(unsigned qubit) const;

    bool is_identity_bits() const { return x_ == 0 && z_ == 0; }

    /// True iff every qubit factor is I or Z (no X bits anywhere).
    bool is_z_type() const { return x_ == 0; }

    unsigned weight() const { return std::popcount(x_ | z_); }

    /// Group product p*q with exact phase tracking.
    friend PauliString operator*(const PauliString &p, const PauliString &q);

    bool commutes_with(const PauliString &q) const;

    PauliString adjoint() const;

    /// Multiplies the coefficient by i^k.
    PauliString with_extra_phase(unsigned k) const;

    bool operator==(const PauliString &o) const {
        return n_ == o.n_ && x_ == o.x_ && z_ == o.z_ && s_ == o.s_;
    }

    /// "XIZY" with a leading coefficient when it is not +1.
    std::string str() const;

  private:
    unsigned n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
    unsigned s_ = 0;  // i-power of the XZ-ordered form, mod 4
};

/// Split of an (n+1)-qubit Pauli into a system part and a single ancilla letter.
struct SystemAncillaSplit {
    PauliString system_part;
    char ancilla_letter;  // 'I', 'X', 'Y' or 'Z'
};

/**
 * Removes the qubit at ancilla_index. The split discards the global
 * coefficient into system_part so that recombining reproduces the input.
 */
SystemAncillaSplit split(const PauliString &p, unsigned ancilla_index);

/// Inverse of split: re-inserts the ancilla letter at ancilla_index.
PauliString recombine(const SystemAncillaSplit &parts, unsigned ancilla_index);

}  // namespace evq
