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


#include "bechain/appgen.h"

#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "bechain/mcm.h"

namespace bechain {

namespace {

const Complex kI(0.0, 1.0);

CMatrix blocks_product(const std::vector<BlockEncoding> &enc) {
    CMatrix acc = identity(enc[0].system_dim());
    for (const auto &be : enc) {
        acc = be.block() * acc;
    }
    return acc;
}

}  // namespace

TEST(controlled_encoding, structure) {
    CMatrix v = expi_hermitian(pauli_y(), 0.3);
    BlockEncoding be = controlled_encoding(v);
    EXPECT_EQ(be.a, 1);
    EXPECT_EQ(be.n, 1);
    EXPECT_LE(opnorm(be.block() - v), 1e-15);
    EXPECT_NEAR(deviation(be), opnorm(v - identity(2)), 1e-14);
}

TEST(trotter_sequence, zero_time) {
    Sequence s = trotter_sequence({{pauli_z()}, 0.0, 4});
    ASSERT_EQ(s.encodings.size(), 4u);
    for (const auto &be : s.encodings) {
        EXPECT_LE(opnorm(be.U - identity(4)), 1e-15);
    }
    EXPECT_EQ(s.profile.eta_max, 0.0);
}

TEST(trotter_sequence, single_x_term) {
    Sequence s = trotter_sequence({{pauli_x()}, 1.0, 16});
    ASSERT_EQ(s.encodings.size(), 16u);
    for (double eta : s.profile.etas) {
        EXPECT_NEAR(eta, 2.0 * std::abs(std::sin(1.0 / 32.0)), 1e-12);
    }
    EXPECT_NEAR(s.profile.eta_max, 0.06248, 1e-5);
    EXPECT_NEAR(s.c, 16 * s.profile.eta_max, 1e-14);
}

TEST(trotter_sequence, commuting_terms_are_exact) {
    CMatrix h1 = 0.5 * pauli_z();
    CMatrix h2 = 0.3 * pauli_z();
    Sequence s = trotter_sequence({{h1, h2}, 1.3, 8});
    EXPECT_EQ(s.encodings.size(), 16u);
    CMatrix exact = (CMatrix(-kI * 1.3 * (h1 + h2))).exp();
    EXPECT_LE(opnorm(blocks_product(s.encodings) - exact), 1e-12);
}

TEST(trotter_sequence, first_order_error) {
    CMatrix h1 = 0.5 * pauli_x();
    CMatrix h2 = 0.5 * pauli_z();
    CMatrix exact = (CMatrix(-kI * (h1 + h2))).exp();
    double e16 = opnorm(blocks_product(trotter_sequence({{h1, h2}, 1.0, 16}).encodings) - exact);
    double e32 = opnorm(blocks_product(trotter_sequence({{h1, h2}, 1.0, 32}).encodings) - exact);
    EXPECT_NEAR(e16 / e32, 2.0, 0.1);
}

TEST(trotter_sequence, deviation_bound) {
    Sequence s = trotter_sequence({{0.5 * pauli_x(), 0.5 * pauli_z()}, 1.0, 16});
    for (double eta : s.profile.etas) {
        EXPECT_LE(eta, 1.0 / 16.0);
    }
    for (const auto &be : s.encodings) {
        EXPECT_TRUE(is_unitary(be.U, Tolerance(1e-9)));
    }
}

TEST(trotter_sequence, rejects_large_terms) {
    EXPECT_THROW(trotter_sequence({{1.5 * pauli_x()}, 1.0, 4}), Error);
    EXPECT_THROW(trotter_sequence({{}, 1.0, 4}), Error);
}

TEST(dyson_sequence, zero_generator) {
    DysonSpec spec{[](double) { return CMatrix(CMatrix::Zero(2, 2)); }, 1.0, 1.0, 4};
    Sequence s = dyson_sequence(spec);
    for (const auto &be : s.encodings) {
        EXPECT_LE(opnorm(be.block() - identity(2)), 1e-14);
    }
}

TEST(dyson_sequence, constant_generator) {
    CMatrix a = -kI * pauli_z();
    Sequence s = dyson_sequence({[a](double) { return a; }, 1.0, 1.0, 8});
    ASSERT_EQ(s.encodings.size(), 8u);
    CMatrix step = (CMatrix(a / 8.0)).exp();
    for (const auto &be : s.encodings) {
        EXPECT_LE(opnorm(be.block() - step), 1e-12);
    }
    EXPECT_NEAR(s.profile.eta_max, 2.0 * std::sin(1.0 / 16.0), 1e-12);
}

TEST(dyson_sequence, cosine_family_bound) {
    auto [a, lambda] = dyson_family("cosine", {{"amp", 0.5}, {"omega", 1.0}});
    EXPECT_NEAR(lambda, 0.5, 1e-15);
    Sequence s = dyson_sequence({a, lambda, 1.0, 16});
    const double dt = 1.0 / 16.0;
    for (double eta : s.profile.etas) {
        EXPECT_LE(eta, std::exp(lambda * dt) - 1.0);
    }
    for (const auto &be : s.encodings) {
        EXPECT_TRUE(is_unitary(be.U, Tolerance(1e-9)));
    }
}

TEST(dyson_sequence, micro_step_convergence) {
    auto [a, lambda] = dyson_family("cosine", {});
    const double dt = 1.0 / 16.0;
    for (int j = 0; j < 16; j += 5) {
        CMatrix fine = dyson_propagator(a, j * dt, (j + 1) * dt, 256);
        CMatrix coarse = dyson_propagator(a, j * dt, (j + 1) * dt, 128);
        EXPECT_LE(opnorm(fine - coarse), 1e-8);
    }
}

TEST(dyson_sequence, non_unitary_generator) {
    CMatrix a = -0.3 * identity(2);
    Sequence s = dyson_sequence({[a](double) { return a; }, 0.3, 1.0, 4});
    const double scale = std::exp(-0.3 / 4.0);
    for (const auto &be : s.encodings) {
        EXPECT_TRUE(is_unitary(be.U, Tolerance(1e-10)));
        EXPECT_LE(opnorm(be.block() - scale * identity(2)), 1e-12);
    }
}

TEST(dyson_sequence, norm_check) {
    auto [a, lambda] = dyson_family("cosine", {{"amp", 0.8}});
    EXPECT_THROW(dyson_sequence({a, 0.5, 1.0, 8}), Error);
    EXPECT_THROW(dyson_family("unknown", {}), Error);
}

TEST(dyson_family, two_pauli_bound) {
    auto [a, lambda] = dyson_family("two-pauli", {{"bx", 0.4}, {"bz", 0.3}});
    for (int i = 0; i <= 50; ++i) {
        EXPECT_LE(opnorm(a(0.1 * i)), lambda + 1e-12);
    }
}

TEST(applications, trotter_feeds_macg) {
    Sequence s = trotter_sequence({{0.5 * pauli_x(), 0.5 * pauli_z()}, 1.0, 16});
    MCMCircuit c = gadget_pmacg(s.encodings, 1);
    const int k = static_cast<int>(s.encodings.size());
    double err = gadget_error_exact(c, block_product(s.encodings));
    EXPECT_LE(err, macg_bound_formula(k, 1, s.c));
}

}  // namespace bechain
