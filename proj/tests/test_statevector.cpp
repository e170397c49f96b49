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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evq/statevector.hpp"
#include "oracle_util.hpp"

using evq::Circuit;
using evq::GateKind;
using evq::GateOp;
using evq::PauliString;
using evq::Statevector;

namespace {

Statevector random_state(unsigned n, evq::SplitMix64 &rng) {
    Statevector psi(n);
    double norm2 = 0;
    for (auto &a : psi.amplitudes()) {
        a = {rng.uniform() - 0.5, rng.uniform() - 0.5};
        norm2 += std::norm(a);
    }
    for (auto &a : psi.amplitudes()) {
        a /= std::sqrt(norm2);
    }
    return psi;
}

Circuit random_circuit(unsigned n, unsigned depth, evq::SplitMix64 &rng) {
    Circuit c(n);
    for (unsigned i = 0; i < depth; ++i) {
        switch (rng.below(8)) {
            case 0: c.h(unsigned(rng.below(n))); break;
            case 1: c.s(unsigned(rng.below(n))); break;
            case 2: c.sdg(unsigned(rng.below(n))); break;
            case 3: c.rx(unsigned(rng.below(n)), rng.uniform() * 6 - 3); break;
            case 4: c.rz(unsigned(rng.below(n)), rng.uniform() * 6 - 3); break;
            case 5: {
                unsigned a = unsigned(rng.below(n)), b = unsigned(rng.below(n));
                if (a == b) b = (b + 1) % n;
                c.cx(a, b);
                break;
            }
            case 6: {
                unsigned a = unsigned(rng.below(n)), b = unsigned(rng.below(n));
                if (a == b) b = (b + 1) % n;
                c.cz(a, b);
                break;
            }
            default: {
                unsigned a = unsigned(rng.below(n)), b = unsigned(rng.below(n));
                if (a == b) b = (b + 1) % n;
                c.rzz(a, b, rng.uniform() * 6 - 3);
                break;
            }
        }
    }
    return c;
}

}  // namespace

TEST_CASE("single gates on fixed states") {
    Statevector psi(1);
    psi.apply(GateOp{GateKind::H, 0});
    CHECK(std::abs(psi.amplitudes()[0] - evq::cplx(1 / std::sqrt(2.0), 0)) < 1e-14);
    CHECK(std::abs(psi.amplitudes()[1] - evq::cplx(1 / std::sqrt(2.0), 0)) < 1e-14);

    Statevector phi(1);
    phi.apply(GateOp{GateKind::RX, 0, 0, M_PI});
    CHECK(std::abs(phi.amplitudes()[0]) < 1e-14);
    CHECK(std::abs(phi.amplitudes()[1] - evq::cplx(0, -1)) < 1e-14);

    // RZZ(theta)|01> = e^{+i theta/2}|01>.
    const double theta = 0.7321;
    Statevector chi(2);
    chi.apply(GateOp{GateKind::X, 0});
    chi.apply(GateOp{GateKind::RZZ, 0, 1, theta});
    CHECK(std::abs(chi.amplitudes()[1] - std::exp(evq::cplx(0, theta / 2))) < 1e-14);
}

TEST_CASE("every gate matches the dense oracle") {
    evq::SplitMix64 rng(21, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const Circuit c = random_circuit(3, 12, rng);
        Statevector psi = random_state(3, rng);
        oracle::Vec v = oracle::circuit_matrix(c) * oracle::to_vec(psi);
        psi.apply(c);
        CHECK((oracle::to_vec(psi) - v).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gate inverses undo gates") {
    evq::SplitMix64 rng(22, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const Circuit c = random_circuit(4, 20, rng);
        Statevector psi = random_state(4, rng);
        const Statevector before = psi;
        psi.apply(c);
        psi.apply(c.inverted());
        CHECK(std::abs(psi.inner(before)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("apply_pauli matches the dense matrix") {
    evq::SplitMix64 rng(23, 0);
    for (int trial = 0; trial < 80; ++trial) {
        const PauliString p(3, rng.next() & 7, rng.next() & 7, unsigned(rng.below(4)));
        Statevector psi = random_state(3, rng);
        oracle::Vec v = oracle::pauli_matrix(p) * oracle::to_vec(psi);
        psi.apply_pauli(p);
        CHECK((oracle::to_vec(psi) - v).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("expectation values") {
    Statevector zero(1);
    CHECK(zero.expectation(PauliString::parse("Z")) == doctest::Approx(1.0));
    Statevector plus(1);
    plus.apply(GateOp{GateKind::H, 0});
    CHECK(plus.expectation(PauliString::parse("Z")) == doctest::Approx(0.0));

    evq::SplitMix64 rng(24, 0);
    for (int trial = 0; trial < 80; ++trial) {
        const PauliString p(3, rng.next() & 7, rng.next() & 7);
        const Statevector psi = random_state(3, rng);
        const oracle::Vec v = oracle::to_vec(psi);
        const evq::cplx sandwich = (v.adjoint() * oracle::pauli_matrix(p) * v)(0, 0);
        CHECK(psi.expectation(p) == doctest::Approx(sandwich.real()).epsilon(1e-12));
        CHECK(std::abs(psi.expectation_complex(p) - sandwich) < 1e-12);
    }
}

TEST_CASE("zero probability over a qubit mask") {
    Statevector psi(3);
    psi.apply(GateOp{GateKind::H, 0});
    psi.apply(GateOp{GateKind::X, 2});
    CHECK(psi.zero_probability(0b001) == doctest::Approx(0.5));
    CHECK(psi.zero_probability(0b100) == doctest::Approx(0.0));
    CHECK(psi.zero_probability(0b010) == doctest::Approx(1.0));
    CHECK(psi.zero_probability(0b011) == doctest::Approx(0.5));
}

TEST_CASE("sampling follows the Born rule") {
    evq::SplitMix64 rng(25, 0);
    Statevector psi(2);
    psi.apply(GateOp{GateKind::H, 0});
    psi.apply(GateOp{GateKind::CX, 0, 1});
    const auto cum = psi.cumulative_distribution();
    int count00 = 0, count11 = 0;
    const int shots = 100000;
    for (int i = 0; i < shots; ++i) {
        const uint64_t b = Statevector::sample(cum, rng);
        REQUIRE((b == 0 || b == 3));
        (b == 0 ? count00 : count11)++;
    }
    // 3 sigma for a fair coin over 1e5 shots.
    CHECK(std::abs(count00 - shots / 2) < 3 * std::sqrt(shots * 0.25));
    CHECK(count00 + count11 == shots);
}

TEST_CASE("sampling is deterministic per (seed, stream)") {
    Statevector psi(3);
    psi.apply(GateOp{GateKind::H, 0});
    psi.apply(GateOp{GateKind::H, 1});
    psi.apply(GateOp{GateKind::H, 2});
    evq::SplitMix64 a(77, 3), b(77, 3), c(77, 4);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 200; ++i) {
        const uint64_t sa = psi.sample(a), sb = psi.sample(b), sc = psi.sample(c);
        all_equal = all_equal && (sa == sb);
        any_diff = any_diff || (sa != sc);
    }
    CHECK(all_equal);
    CHECK(any_diff);
}
