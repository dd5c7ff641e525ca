// Copyright 2026 The bechain Authors
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


#include "bechain/linalg.h"

#include <gtest/gtest.h>

#include <cmath>

#include "bechain/rng.h"

namespace bechain {

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST(opnorm, examples) {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = -0.9;
    EXPECT_NEAR(opnorm(d), 0.9, 1e-14);
    EXPECT_NEAR(opnorm(pauli_x()), 1.0, 1e-14);
    // Singular values of [[a, b], [0, 0]] are sqrt(a^2 + b^2) and 0.
    EXPECT_NEAR(opnorm(mat2(0.6, 0.8, 0.0, 0.0)), 1.0, 1e-14);
}

TEST(opnorm, empty_matrix_rejected) {
    EXPECT_THROW(opnorm(CMatrix(0, 0)), Error);
    try {
        opnorm(CMatrix(0, 3));
    } catch (const Error &e) {
        EXPECT_STREQ(e.what(), "empty matrix");
    }
}

TEST(is_unitary, examples) {
    EXPECT_TRUE(is_unitary(identity(4), Tolerance(1e-12)));
    EXPECT_TRUE(is_unitary(mat2(0.6, 0.8, 0.8, -0.6), Tolerance(1e-12)));
    EXPECT_FALSE(is_unitary(mat2(1.0, 0.0, 0.0, 0.5), Tolerance(1e-12)));
    EXPECT_THROW(is_unitary(CMatrix::Zero(2, 3)), Error);
}

TEST(tolerance, rejects_negative) {
    EXPECT_THROW(Tolerance(-1.0), Error);
    EXPECT_THROW(Tolerance(0.0, -1.0), Error);
}

TEST(kron, examples) {
    EXPECT_TRUE(kron(identity(2), identity(2)).isApprox(identity(4)));
    CMatrix h(1, 1);
    h(0, 0) = 0.5;
    CMatrix zh = kron(pauli_z(), h);
    EXPECT_EQ(zh, mat2(0.5, 0.0, 0.0, -0.5));
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    CMatrix xd = kron(pauli_x(), d);
    EXPECT_EQ(xd.topRightCorner(2, 2), d);
    EXPECT_EQ(xd.bottomLeftCorner(2, 2), d);
    EXPECT_EQ(xd.topLeftCorner(2, 2), CMatrix::Zero(2, 2));
}

TEST(kron, associative) {
    Rng rng(11);
    CMatrix a = random_unitary(2, rng), b = random_unitary(4, rng), c = random_unitary(2, rng);
    EXPECT_LE((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(herm_funcmat, examples) {
    auto s = [](double x) { return std::sqrt(1.0 - x * x); };
    CMatrix h = CMatrix::Zero(2, 2);
    h(0, 0) = 0.6;
    EXPECT_LE(opnorm(herm_funcmat(h, s) - mat2(0.8, 0.0, 0.0, 1.0)), 1e-12);
    EXPECT_LE(opnorm(herm_funcmat(CMatrix::Zero(4, 4), s) - identity(4)), 1e-12);
    // (0.5 X)^2 = 0.25 I since X^2 = I.
    EXPECT_LE(opnorm(herm_funcmat(0.5 * pauli_x(), [](double x) { return x * x; }) - 0.25 * identity(2)), 1e-12);
}

TEST(herm_funcmat, errors) {
    EXPECT_THROW(herm_funcmat(mat2(0.0, 1.0, 0.0, 0.0), [](double x) { return x; }), Error);
    CMatrix h = 2.0 * pauli_z();
    try {
        herm_funcmat(h, [](double x) { return std::sqrt(1.0 - x * x); });
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("eigenvalue"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    }
}

TEST(herm_funcmat, properties_on_random_hermitian) {
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        CMatrix h = random_hermitian(8, 0.95, rng);
        EXPECT_LE(opnorm(herm_funcmat(h, [](double x) { return x; }) - h), 1e-12);
        CMatrix s = herm_funcmat(h, [](double x) { return std::sqrt(1.0 - x * x); });
        EXPECT_LE(opnorm(s * s + h * h - identity(8)), 1e-10);
    }
}

TEST(mat_embed_block, examples) {
    EXPECT_EQ(mat_embed_block(identity(4), "0", "0", 1, 1), identity(2));
    EXPECT_EQ(mat_embed_block(kron(pauli_x(), identity(2)), "0", "1", 1, 1), identity(2));
    CMatrix cnot = CMatrix::Zero(4, 4);
    cnot.topLeftCorner(2, 2) = identity(2);
    cnot.bottomRightCorner(2, 2) = pauli_x();
    EXPECT_EQ(mat_embed_block(cnot, "1", "1", 1, 1), pauli_x());
    EXPECT_THROW(mat_embed_block(identity(4), "00", "00", 1, 1), Error);
    EXPECT_THROW(mat_embed_block(identity(8), "0", "0", 1, 1), Error);
}

TEST(mat_embed_block, corner_of_unitary_is_contraction) {
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        CMatrix u = random_unitary(16, rng);
        EXPECT_LE(opnorm(mat_embed_block(u, "00", "00", 2, 2)), 1.0 + 1e-10);
    }
}

TEST(random_unitary, unitary_and_seeded) {
    Rng r1(5), r2(5);
    CMatrix u = random_unitary(8, r1);
    EXPECT_EQ(u, random_unitary(8, r2));
    EXPECT_TRUE(is_unitary(u, Tolerance(1e-12)));
    EXPECT_NEAR(opnorm(u), 1.0, 1e-10);
}

TEST(permute_qubits, swaps_tensor_factors) {
    Rng rng(3);
    CMatrix a = random_unitary(2, rng), b = random_unitary(4, rng);
    const int order[] = {1, 2, 0};
    EXPECT_LE((permute_qubits(kron(a, b), order) - kron(b, a)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(complete_unitary, first_column) {
    Rng rng(9);
    CVector v(8);
    for (int i = 0; i < 8; ++i) {
        v(i) = rng.complex_normal();
    }
    CMatrix u = complete_unitary(v);
    EXPECT_TRUE(is_unitary(u, Tolerance(1e-12)));
    EXPECT_LE((u.col(0) - v.normalized()).norm(), 1e-12);
}

TEST(bitstrings, round_trip) {
    EXPECT_EQ(bitstring_index("101"), 5u);
    EXPECT_EQ(index_bitstring(5, 4), "0101");
    EXPECT_THROW(bitstring_index("12"), Error);
}

TEST(expi_hermitian, closed_form) {
    CMatrix u = expi_hermitian(pauli_x(), 0.3);
    CMatrix want = std::cos(0.3) * identity(2) + Complex(0.0, std::sin(0.3)) * pauli_x();
    EXPECT_LE(opnorm(u - want), 1e-14);
}

}  // namespace bechain
