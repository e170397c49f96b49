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

#include "evq/pauli.hpp"
#include "evq/rng.hpp"
#include "oracle_util.hpp"

using evq::PauliString;

namespace {

PauliString random_pauli(unsigned n, evq::SplitMix64 &rng) {
    const uint64_t mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    return PauliString(n, rng.next() & mask, rng.next() & mask, unsigned(rng.below(4)));
}

}  // namespace

TEST_CASE("parse and str round trip") {
    for (const char *lit : {"XIZY", "-XZ", "iY", "-iZZ", "IIII", "Z"}) {
        const PauliString p = PauliString::parse(lit);
        CHECK(PauliString::parse(p.str()) == p);
    }
    CHECK(PauliString::parse("XIZY").letter(0) == 'X');
    CHECK(PauliString::parse("XIZY").letter(2) == 'Z');
    CHECK(PauliString::parse("XIZY").letter(3) == 'Y');
    CHECK(PauliString::parse("-XZ").coefficient() == std::complex<double>(-1, 0));
    CHECK(PauliString::parse("iY").coefficient() == std::complex<double>(0, 1));
}

TEST_CASE("single-qubit products") {
    const PauliString x = PauliString::parse("X");
    const PauliString z = PauliString::parse("Z");
    CHECK((x * x) == PauliString::parse("I"));
    // XZ = -iY under the Y = iXZ convention.
    const PauliString xz = x * z;
    CHECK(xz.letter(0) == 'Y');
    CHECK(xz.coefficient() == std::complex<double>(0, -1));
}

TEST_CASE("two-qubit product against the dense oracle") {
    const PauliString p = PauliString::parse("XZ");
    const PauliString q = PauliString::parse("ZZ");
    const PauliString r = p * q;
    CHECK(r.letter(0) == 'Y');
    CHECK(r.letter(1) == 'I');
    CHECK(r.coefficient() == std::complex<double>(0, -1));
    const oracle::Mat dense = oracle::pauli_matrix(p) * oracle::pauli_matrix(q);
    CHECK((dense - oracle::pauli_matrix(r)).cwiseAbs().maxCoeff() == doctest::Approx(0).epsilon(1e-14));
}

TEST_CASE("multiply matches dense matrices, exhaustive n<=2") {
    for (unsigned n = 1; n <= 2; ++n) {
        const uint64_t lim = 1ULL << n;
        for (uint64_t x1 = 0; x1 < lim; ++x1)
            for (uint64_t z1 = 0; z1 < lim; ++z1)
                for (uint64_t x2 = 0; x2 < lim; ++x2)
                    for (uint64_t z2 = 0; z2 < lim; ++z2) {
                        const PauliString p(n, x1, z1), q(n, x2, z2);
                        const oracle::Mat dense = oracle::pauli_matrix(p) * oracle::pauli_matrix(q);
                        const double err = (dense - oracle::pauli_matrix(p * q)).cwiseAbs().maxCoeff();
                        REQUIRE(err < 1e-14);
                    }
    }
}

TEST_CASE("multiply matches dense matrices, randomized n in {3,4}") {
    evq::SplitMix64 rng(11, 0);
    for (unsigned n : {3u, 4u}) {
        for (int trial = 0; trial < 200; ++trial) {
            const PauliString p = random_pauli(n, rng);
            const PauliString q = random_pauli(n, rng);
            const oracle::Mat dense = oracle::pauli_matrix(p) * oracle::pauli_matrix(q);
            REQUIRE((dense - oracle::pauli_matrix(p * q)).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("associativity") {
    evq::SplitMix64 rng(12, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const PauliString a = random_pauli(4, rng);
        const PauliString b = random_pauli(4, rng);
        const PauliString c = random_pauli(4, rng);
        CHECK(((a * b) * c) == (a * (b * c)));
    }
}

TEST_CASE("commutes matches the dense commutator") {
    CHECK(PauliString::parse("X").commutes_with(PauliString::parse("X")));
    CHECK_FALSE(PauliString::parse("X").commutes_with(PauliString::parse("Z")));
    // (XZ on qubit 0 = -iY) tensor Y, against Z tensor X.
    const PauliString a = PauliString::parse("X") * PauliString::parse("Z");
    const PauliString ay = PauliString(2, a.x_bits() | 2, a.z_bits() | 2, a.phase_power() + 1);
    const PauliString b = PauliString::parse("ZX");
    const oracle::Mat comm =
        oracle::pauli_matrix(ay) * oracle::pauli_matrix(b) - oracle::pauli_matrix(b) * oracle::pauli_matrix(ay);
    CHECK(ay.commutes_with(b) == (comm.cwiseAbs().maxCoeff() < 1e-14));

    evq::SplitMix64 rng(13, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const PauliString p = random_pauli(3, rng);
        const PauliString q = random_pauli(3, rng);
        const oracle::Mat c =
            oracle::pauli_matrix(p) * oracle::pauli_matrix(q) - oracle::pauli_matrix(q) * oracle::pauli_matrix(p);
        CHECK(p.commutes_with(q) == (c.cwiseAbs().maxCoeff() < 1e-14));
    }
}

TEST_CASE("split and recombine") {
    {
        const auto parts = evq::split(PauliString::parse("IIX"), 2);
        CHECK(parts.ancilla_letter == 'X');
        CHECK(parts.system_part == PauliString::parse("II"));
    }
    {
        const auto parts = evq::split(PauliString::parse("ZXY"), 0);
        CHECK(parts.ancilla_letter == 'Z');
        CHECK(parts.system_part.letter(0) == 'X');
        CHECK(parts.system_part.letter(1) == 'Y');
    }
    evq::SplitMix64 rng(14, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned n = 2 + unsigned(rng.below(5));
        const PauliString p = random_pauli(n, rng);
        const unsigned anc = unsigned(rng.below(n));
        CHECK(evq::recombine(evq::split(p, anc), anc) == p);
    }
}

TEST_CASE("is_z_type") {
    CHECK(PauliString::parse("IZZ").is_z_type());
    CHECK_FALSE(PauliString::parse("IXZ").is_z_type());
    CHECK(PauliString::parse("III").is_z_type());
    // Z-type iff it commutes with every all-Z-support string, n <= 3.
    for (unsigned n = 1; n <= 3; ++n) {
        const uint64_t lim = 1ULL << n;
        for (uint64_t x = 0; x < lim; ++x)
            for (uint64_t z = 0; z < lim; ++z) {
                const PauliString p(n, x, z);
                bool commutes_all = true;
                for (uint64_t zb = 0; zb < lim; ++zb) {
                    commutes_all = commutes_all && p.commutes_with(PauliString(n, 0, zb));
                }
                CHECK(p.is_z_type() == commutes_all);
            }
    }
}

TEST_CASE("adjoint and extra phase") {
    evq::SplitMix64 rng(15, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const PauliString p = random_pauli(3, rng);
        const oracle::Mat dense = oracle::pauli_matrix(p).adjoint();
        CHECK((dense - oracle::pauli_matrix(p.adjoint())).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(p.with_extra_phase(2).coefficient() == -p.coefficient());
        CHECK(p.with_extra_phase(4) == p);
    }
}

TEST_CASE("dimension mismatch raises") {
    CHECK_THROWS(PauliString::parse("XX") * PauliString::parse("X"));
    CHECK_THROWS(PauliString::parse("XX").commutes_with(PauliString::parse("X")));
    CHECK_THROWS(evq::split(PauliString::parse("XX"), 2));
}
