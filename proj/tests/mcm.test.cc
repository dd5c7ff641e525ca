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


#include "bechain/mcm.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bechain/rng.h"

namespace bechain {

namespace {

std::vector<BlockEncoding> random_set(int k, int n, int a, std::uint64_t seed) {
    std::vector<BlockEncoding> out;
    for (int i = 0; i < k; ++i) {
        out.push_back(random_block_encoding(n, a, trial_seed(seed, static_cast<std::uint64_t>(i))));
    }
    return out;
}

std::vector<BlockEncoding> near_identity_set(int k, int n, int a, double c, std::uint64_t seed) {
    std::vector<BlockEncoding> out;
    for (int i = 0; i < k; ++i) {
        out.push_back(random_near_identity(n, a, c / k, trial_seed(seed, static_cast<std::uint64_t>(i))));
    }
    return out;
}

std::vector<BlockEncoding> identity_set(int k, int n, int a) {
    return std::vector<BlockEncoding>(static_cast<std::size_t>(k), make_encoding(identity(Eigen::Index{1} << (n + a)), a, n));
}

// |0^a><0^a| ⊗ I_n
CMatrix good_projector(int a, int n) {
    const Eigen::Index sys = Eigen::Index{1} << n;
    CMatrix p = CMatrix::Zero(sys << a, sys << a);
    p.topLeftCorner(sys, sys).setIdentity();
    return p;
}

CMatrix top_block(const CMatrix &u, Eigen::Index sys) { return u.topLeftCorner(sys, sys); }

}  // namespace

TEST(add_unitary, examples) {
    CMatrix add1 = add_unitary(1);
    EXPECT_EQ(add1(0, 1), Complex(1.0));
    CMatrix add2 = add_unitary(2);
    EXPECT_EQ(add2(0, 3), Complex(1.0));
    EXPECT_EQ(add2(1, 0), Complex(1.0));
    for (int p = 1; p <= 4; ++p) {
        CMatrix a = add_unitary(p);
        CMatrix acc = identity(a.rows());
        for (int i = 0; i < (1 << p); ++i) {
            acc = a * acc;
        }
        EXPECT_LE(opnorm(acc - identity(a.rows())), 1e-15);
    }
    EXPECT_THROW(add_unitary(0), Error);
    EXPECT_THROW(add_unitary(7), Error);
}

TEST(ceil_log2, values) {
    EXPECT_EQ(ceil_log2(1), 0);
    EXPECT_EQ(ceil_log2(2), 1);
    EXPECT_EQ(ceil_log2(4), 2);
    EXPECT_EQ(ceil_log2(5), 3);
}

TEST(mcm_unitary, single_encoding) {
    auto enc = random_set(1, 1, 1, 3);
    Rng rng(4);
    MCMCircuit c{enc, 1, {}, random_unitary(2, rng)};
    EXPECT_LE(opnorm(mcm_unitary(c) - kron(c.Q, enc[0].U)), 1e-12);
}

TEST(mcm_unitary, identity_encodings) {
    Rng rng(5);
    MCMCircuit c{identity_set(3, 1, 1), 1, {random_unitary(2, rng), random_unitary(2, rng)}, random_unitary(2, rng)};
    CMatrix u = mcm_unitary(c);
    CMatrix p0 = good_projector(1, 1);
    // Inputs with the ancilla in 0^a never trigger the controls.
    EXPECT_LE(opnorm((u - kron(c.Q, identity(4))) * kron(identity(2), p0)), 1e-12);
    CMatrix want = kron(c.Q, p0) + kron(c.Q * c.V[1] * c.V[0], identity(4) - p0);
    EXPECT_LE(opnorm(u - want), 1e-12);
}

TEST(mcm_unitary, two_steps_by_hand) {
    auto enc = random_set(2, 1, 1, 8);
    MCMCircuit c{enc, 1, {pauli_x()}, identity(2)};
    CMatrix p0 = good_projector(1, 1);
    CMatrix ctrl = kron(identity(2), p0) + kron(pauli_x(), identity(4) - p0);
    CMatrix want = kron(identity(2), enc[1].U) * ctrl * kron(identity(2), enc[0].U);
    EXPECT_LE(opnorm(mcm_unitary(c) - want), 1e-12);
}

TEST(mcm_unitary, dimension_mismatch) {
    auto enc = random_set(2, 1, 1, 8);
    EXPECT_THROW(mcm_unitary(MCMCircuit{enc, 1, {identity(4)}, identity(2)}), Error);
    EXPECT_THROW(mcm_unitary(MCMCircuit{enc, 1, {}, identity(2)}), Error);
}

TEST(mcm_from_raw, trivial_cases) {
    auto enc = random_set(3, 1, 1, 2);
    MCMRaw raw{enc, 1, {identity(2), identity(2), identity(2)}, {identity(2), identity(2)}, {identity(2), identity(2)}};
    MCMCircuit c = mcm_from_raw(raw);
    for (const auto &v : c.V) {
        EXPECT_LE(opnorm(v - identity(2)), 1e-14);
    }
    EXPECT_LE(opnorm(c.Q - identity(2)), 1e-14);

    Rng rng(3);
    raw.B = {random_unitary(2, rng), random_unitary(2, rng)};
    c = mcm_from_raw(raw);
    EXPECT_LE(opnorm(c.V[0] - raw.B[0]), 1e-14);
    EXPECT_LE(opnorm(c.V[1] - raw.B[1]), 1e-14);
    EXPECT_LE(opnorm(c.Q - identity(2)), 1e-14);
}

TEST(mcm_from_raw, matches_raw_circuit) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const int k = 2 + static_cast<int>(seed % 3);
        const int m = 1 + static_cast<int>(seed % 2);
        auto enc = random_set(k, 1, 1, 100 + seed);
        Rng rng(200 + seed);
        const Eigen::Index md = Eigen::Index{1} << m;
        MCMRaw raw;
        raw.encodings = enc;
        raw.m = m;
        for (int i = 0; i < k; ++i) {
            raw.W.push_back(random_unitary(md, rng));
        }
        for (int i = 0; i < k - 1; ++i) {
            raw.G.push_back(random_unitary(md, rng));
            raw.B.push_back(random_unitary(md, rng));
        }
        // Direct evaluation of the raw form.
        CMatrix p0 = good_projector(1, 1);
        CMatrix pb = identity(4) - p0;
        CMatrix u = kron(raw.W[0], enc[0].U);
        for (int j = 1; j < k; ++j) {
            CMatrix ctrl = kron(raw.G[j - 1], p0) + kron(raw.B[j - 1], pb);
            u = kron(raw.W[j], enc[j].U) * ctrl * u;
        }
        EXPECT_LE(opnorm(mcm_unitary(mcm_from_raw(raw)) - u), 1e-10) << seed;
    }
}

TEST(embe_block, naive_two) {
    auto enc = random_set(2, 1, 1, 12);
    CMatrix want = top_block(enc[1].U, 2) * top_block(enc[0].U, 2);
    EXPECT_LE(opnorm(embe_block(gadget_naive(enc)) - want), 1e-12);
}

TEST(embe_block, identity_encodings_and_single) {
    Rng rng(6);
    CMatrix q = random_unitary(2, rng);
    MCMCircuit c{identity_set(2, 1, 1), 1, {pauli_x()}, q};
    EXPECT_LE(opnorm(embe_block(c) - q(0, 0) * identity(2)), 1e-12);
    auto enc = random_set(1, 1, 1, 1);
    MCMCircuit one{enc, 1, {}, q};
    EXPECT_LE(opnorm(embe_block(one) - q(0, 0) * top_block(enc[0].U, 2)), 1e-12);
}

TEST(embe_block, matches_unitary_corner) {
    auto enc = random_set(3, 1, 2, 9);
    MCMCircuit c = gadget_lw19(enc);
    CMatrix u = mcm_unitary(c);
    EXPECT_LE(opnorm(embe_block(c) - top_block(u, 2)), 1e-13);
}

TEST(gadgets, sizes) {
    EXPECT_EQ(gadget_naive(random_set(4, 1, 1, 1)).m, 3);
    EXPECT_EQ(gadget_lw19(random_set(4, 1, 1, 1)).m, 2);
    EXPECT_EQ(gadget_lw19(random_set(5, 1, 1, 1)).m, 3);
    MCMCircuit l = gadget_lw19(random_set(2, 1, 1, 1));
    MCMCircuit n = gadget_naive(random_set(2, 1, 1, 1));
    EXPECT_EQ(l.m, 1);
    EXPECT_LE(opnorm(l.V[0] - n.V[0]), 1e-15);
    EXPECT_LE(opnorm(gadget_pmacg(random_set(2, 1, 1, 1), 1).V[0] - pauli_x()), 1e-15);
    EXPECT_THROW(gadget_naive(random_set(1, 1, 1, 1)), Error);
}

TEST(gadgets, pmacg_at_log_k_is_lw19) {
    auto enc = random_set(6, 1, 1, 4);
    MCMCircuit a = gadget_pmacg(enc, ceil_log2(6));
    MCMCircuit b = gadget_lw19(enc);
    ASSERT_EQ(a.m, b.m);
    EXPECT_LE(opnorm(mcm_unitary(a) - mcm_unitary(b)), 1e-15);
}

TEST(gadgets, naive_three_identity) {
    EXPECT_LE(opnorm(embe_block(gadget_naive(identity_set(3, 1, 1))) - identity(2)), 1e-14);
}

TEST(gadget_error_exact, ecg_is_exact) {
    for (int k = 2; k <= 8; ++k) {
        auto enc = random_set(k, 1, 1, 30 + k);
        MCMCircuit c = gadget_lw19(enc);
        EXPECT_EQ(c.m, ceil_log2(k));
        EXPECT_LE(gadget_error_exact(c, block_product(enc)), 1e-11) << k;
    }
}

TEST(gadget_error_exact, identity_encodings) {
    auto enc = identity_set(6, 1, 1);
    EXPECT_EQ(gadget_error_exact(gadget_pmacg(enc, 1), identity(2)), 0.0);
}

TEST(gadget_error_exact, equals_bad_sum) {
    for (int p : {1, 2}) {
        for (int k : {5, 8}) {
            auto enc = random_set(k, 1, 1, 70 + k + p);
            // Independent sum of the misclassified patterns.
            CMatrix sum = CMatrix::Zero(2, 2);
            for (unsigned mask = 1; mask < (1u << (k - 1)); ++mask) {
                if (std::popcount(mask) % (1 << p) != 0) {
                    continue;
                }
                std::string x;
                for (int i = k - 2; i >= 0; --i) {
                    x.push_back((mask >> i) & 1u ? '1' : '0');
                }
                sum += bad_sequence_oracle(enc, x);
            }
            CMatrix err = embe_block(gadget_pmacg(enc, p)) - block_product(enc);
            EXPECT_LE(opnorm(err - sum), 1e-12);
            EXPECT_LE(opnorm(bad_sum_enumerate(enc, p) - sum), 1e-12);
            EXPECT_LE(opnorm(bad_sum_by_weight(enc, p) - sum), 1e-12);
        }
    }
}

TEST(bad_sum_by_weight, agrees_beyond_enumeration_range) {
    auto enc = near_identity_set(20, 1, 1, 0.5, 3);
    CMatrix err = embe_block(gadget_pmacg(enc, 1)) - block_product(enc);
    EXPECT_LE(opnorm(err - bad_sum_by_weight(enc, 1)), 1e-12);
    EXPECT_THROW(bad_sum_enumerate(enc, 1), Error);
}

TEST(bad_sequence_oracle, examples) {
    auto enc = random_set(4, 1, 1, 5);
    EXPECT_LE(opnorm(bad_sequence_oracle(enc, "000") - block_product(enc)), 1e-12);
    auto ids = identity_set(4, 1, 1);
    EXPECT_EQ(opnorm(bad_sequence_oracle(ids, "010")), 0.0);

    auto three = random_set(3, 1, 1, 6);
    CMatrix p0 = good_projector(1, 1);
    CMatrix pb = identity(4) - p0;
    CMatrix full = three[2].U * pb * three[1].U * p0 * three[0].U;
    EXPECT_LE(opnorm(bad_sequence_oracle(three, "10") - top_block(full, 2)), 1e-12);
    EXPECT_THROW(bad_sequence_oracle(three, "1"), Error);
    EXPECT_THROW(bad_sequence_oracle(three, "1x"), Error);
}

TEST(macg_bound, closed_form) {
    const double e = std::numbers::e;
    EXPECT_NEAR(macg_bound(16, 1, 0.5), 2.0 * std::exp(0.5) * std::pow(e * 0.25 / 32.0, 2), 1e-15);
    EXPECT_NEAR(macg_bound(16, 1, 0.5), 1.487e-3, 1e-6);
    EXPECT_NEAR(macg_bound(32, 2, 0.5), 2.0 * std::exp(0.5) * std::pow(e * 0.25 / 128.0, 4), 1e-20);
    EXPECT_NEAR(macg_bound(32, 1, 0.5) / macg_bound(16, 1, 0.5), 0.25, 1e-12);
    EXPECT_NEAR(macg_bound(64, 2, 0.5) / macg_bound(32, 2, 0.5), 1.0 / 16.0, 1e-12);
}

TEST(macg_bound, regime_guard) {
    try {
        macg_bound(16, 1, 1.0);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_STREQ(e.what(), "bound regime not satisfied");
    }
    EXPECT_FALSE(macg_regime_ok(16, 1, 1.0));
    EXPECT_TRUE(macg_regime_ok(16, 1, 0.5));
    EXPECT_GT(macg_bound_formula(16, 1, 1.0), 0.0);
}

TEST(min_k_for_eps, values) {
    const double e = std::numbers::e;
    EXPECT_EQ(min_k_for_eps(2.0, 1, 1.0), static_cast<int>(std::ceil(e / 2.0)));
    EXPECT_EQ(min_k_for_eps(1e-4, 1, 0.5), static_cast<int>(std::ceil(e * 0.25 / 2.0 * std::sqrt(2e4))));
    EXPECT_LE(min_k_for_eps(1e-2, 1, 0.5), min_k_for_eps(1e-3, 1, 0.5));
    EXPECT_LE(min_k_for_eps(1e-3, 2, 0.5), min_k_for_eps(1e-6, 2, 0.5));
}

TEST(seqnorm, empty_pattern) {
    auto enc = near_identity_set(5, 1, 1, 0.5, 2);
    auto [measured, bound] = seqnorm_bound_check(enc, "0000");
    EXPECT_LE(measured, bound);
    EXPECT_NEAR(measured, opnorm(block_product(enc)), 1e-14);
}

TEST(seqnorm, identity_encodings) {
    auto [measured, bound] = seqnorm_bound_check(identity_set(4, 1, 1), "101");
    EXPECT_EQ(measured, 0.0);
    EXPECT_LE(measured, bound);
}

TEST(seqnorm, isolated_bad_outcomes) {
    // Patterns whose bad outcomes are separated by good ones follow the
    // eta^(2|x|) (1 + eta)^K estimate.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto enc = near_identity_set(6, 1, 1, 0.5, seed);
        for (const char *x : {"00000", "10000", "00100", "00001", "10100", "10001", "01010"}) {
            auto [measured, bound] = seqnorm_bound_check(enc, x);
            EXPECT_LE(measured, bound) << x;
        }
    }
}

TEST(seqnorm, adjacent_bad_outcomes_counterexample) {
    // Two consecutive bad outcomes pass through the bad subspace with an
    // O(1) factor, so ||S_x|| ~ eta^2 rather than eta^4.
    const double theta = 0.05;
    CMatrix g = kron(pauli_x(), identity(2));
    BlockEncoding be = make_encoding(expi_hermitian(g, theta), 1, 1);
    std::vector<BlockEncoding> enc(4, be);
    auto [measured, bound] = seqnorm_bound_check(enc, "110");
    EXPECT_GT(measured, bound);
    EXPECT_LE(measured, seqnorm_run_bound(enc, "110") + 1e-15);
}

TEST(seqnorm, run_bound_holds_everywhere) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto enc = near_identity_set(7, 1, 1, 0.5, seed);
        for (unsigned mask = 0; mask < (1u << 6); ++mask) {
            std::string x;
            for (int i = 5; i >= 0; --i) {
                x.push_back((mask >> i) & 1u ? '1' : '0');
            }
            EXPECT_LE(seqnorm_bound_check(enc, x).first, seqnorm_run_bound(enc, x) + 1e-14) << x;
        }
    }
}

TEST(su_from_params, unitary) {
    std::vector<double> theta = {0.3, -0.2, 1.1, 0.4, 0.5, -0.6, 0.7, 0.1, 0.0, 0.2, -0.3, 0.9, 0.8, -0.1, 0.05};
    EXPECT_TRUE(is_unitary(su_from_params(theta.data(), 1), Tolerance(1e-12)));
    EXPECT_TRUE(is_unitary(su_from_params(theta.data(), 2), Tolerance(1e-12)));
}

TEST(lower_bound_probe, feasible_pair) {
    auto enc = random_set(2, 1, 1, 44);
    EXPECT_LE(lower_bound_probe(enc, 1, 3, 1), 1e-8);
}

TEST(lower_bound_probe, infeasible_triple) {
    auto enc = random_set(3, 2, 1, 45);
    ProbeResult r = lower_bound_probe_detailed(enc, 1, 3, 2);
    ASSERT_EQ(r.per_restart.size(), 3u);
    for (double v : r.per_restart) {
        EXPECT_GT(v, 0.0);
        EXPECT_GE(v, r.best);
    }
    EXPECT_GE(r.best, 1e-3);
}

TEST(lower_bound_probe, argument_checks) {
    EXPECT_THROW(lower_bound_probe(random_set(5, 1, 1, 1), 1, 2, 1), Error);
    EXPECT_THROW(lower_bound_probe(random_set(3, 1, 1, 1), 3, 2, 1), Error);
}

}  // namespace bechain
