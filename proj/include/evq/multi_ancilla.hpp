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

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "evq/circuit.hpp"
#include "evq/pauli.hpp"

namespace evq {

enum class MultiAncillaVariant { tensor_control, multicontrol };

/// Up to four system Pauli observables estimated concurrently.
struct MultiAncillaPlan {
    std::vector<PauliString> observables;
    MultiAncillaVariant variant = MultiAncillaVariant::tensor_control;

    unsigned count() const { return unsigned(observables.size()); }
};

/// Ancilla qubits appended above the system register: M for tensor control,
/// ceil(log2(M + 1)) binary label qubits for multicontrol.
unsigned ancilla_count(const MultiAncillaPlan &plan);

/**
 * tensor_control: H on every ancilla, U, ancilla m controlling P_m, U-dagger,
 * H on every ancilla; M = 1 is exactly the standard EV circuit. multicontrol:
 * uniform label preparation over |0..M>, U, P_m under the A-qubit control
 * pattern m (synthesized with a parity-phase gadget), U-dagger; the
 * postselected ancilla register carries |0> + sum_m <P_m> |m> directly, so
 * no trailing basis change is applied. Multicontrol observables must carry
 * coefficient +1.
 */
Circuit build_multi_ancilla_circuit(const Circuit &u, const MultiAncillaPlan &plan);

/// Ancilla-register amplitudes with the system postselected on zeros, plus
/// the retained probability mass.
std::pair<std::vector<std::complex<double>>, double> postselected_ancilla_vector(
    const Circuit &circuit, unsigned n_system, unsigned n_ancilla);

/**
 * Measured tensor-variant statistics in the X-measurement frame of the
 * ancilla register (the trailing Hadamards undone): z_strings[a] is the
 * Z-string expectation on mask a, x_strings[{m, a}] the X on ancilla m times
 * the Z-string on mask a (a excludes bit m - 1), and p0 the physical
 * postselection probability.
 */
struct MultiAncillaStats {
    std::map<uint64_t, double> z_strings;
    std::map<std::pair<unsigned, uint64_t>, double> x_strings;
    double p0 = 0;
};

/// Masks with bit m - 1 set (the 2^{M-1} magnitude terms for observable m).
std::vector<uint64_t> tensor_masks(unsigned m, unsigned n_observables);

/// Exact stats of a postselected tensor-variant ancilla vector.
MultiAncillaStats tensor_stats(const std::vector<std::complex<double>> &ancilla, double p0);

/**
 * Per-observable values: |<P_m>|^2 from the 2^{M-1}-term average of Eq-B4
 * form, the signed value from the X-side average; throws when a required
 * entry is missing.
 */
std::vector<double> recover_tensor(const MultiAncillaStats &stats, unsigned n_observables);

/// <P_m> read off the label amplitudes relative to |0>; throws when the
/// reference amplitude vanishes.
std::vector<double> recover_multicontrol(const std::vector<std::complex<double>> &ancilla,
                                         unsigned n_observables);

}  // namespace evq
