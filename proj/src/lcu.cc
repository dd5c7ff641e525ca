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


#include "bechain/lcu.h"

#include <cmath>
#include <numbers>
#include <numeric>

namespace bechain {

BlockEncoding lcu_build(const LCUSpec &spec) {
    if (spec.terms.empty()) {
        throw Error("lcu_build: empty term list");
    }
    if (spec.coeffs.size() != spec.terms.size()) {
        throw Error("lcu_build: coefficient and term counts differ");
    }
    const Eigen::Index d = spec.terms[0].rows();
    const int n = qubit_count(d);
    for (const auto &t : spec.terms) {
        if (t.rows() != d || t.cols() != d) {
            throw Error("lcu_build: terms must share one dimension");
        }
        if (!is_unitary(t)) {
            throw Error("lcu_build: term is not unitary");
        }
    }
    const std::size_t count = spec.terms.size();
    int min_prep = 0;
    while ((std::size_t{1} << min_prep) < count) {
        ++min_prep;
    }
    const int prep = spec.prep_dim < 0 ? min_prep : spec.prep_dim;
    if (prep < min_prep) {
        throw Error("lcu_build: prep_dim too small for the number of terms");
    }
    double l1 = 0.0;
    for (const auto &c : spec.coeffs) {
        l1 += std::abs(c);
    }
    if (!(l1 > 0.0)) {
        throw Error("lcu_build: coefficients sum to zero weight");
    }
    const Eigen::Index np = Eigen::Index{1} << prep;
    CVector amps = CVector::Zero(np);
    for (std::size_t j = 0; j < count; ++j) {
        amps(static_cast<Eigen::Index>(j)) = std::sqrt(std::abs(spec.coeffs[j]) / l1);
    }
    CMatrix p = complete_unitary(amps);
    std::vector<CMatrix> sel;
    sel.reserve(static_cast<std::size_t>(np));
    for (Eigen::Index j = 0; j < np; ++j) {
        if (static_cast<std::size_t>(j) < count) {
            Complex c = spec.coeffs[static_cast<std::size_t>(j)];
            Complex ph = std::abs(c) > 0 ? c / std::abs(c) : Complex(1.0);
            sel.push_back(ph * spec.terms[static_cast<std::size_t>(j)]);
        } else {
            sel.push_back(identity(d));
        }
    }
    CMatrix w = CMatrix::Zero(np * d, np * d);
    for (Eigen::Index i = 0; i < np; ++i) {
        for (Eigen::Index j = 0; j < np; ++j) {
            auto blk = w.block(i * d, j * d, d, d);
            for (Eigen::Index k = 0; k < np; ++k) {
                Complex coef = p(i, k) * std::conj(p(j, k));
                if (coef != Complex(0.0)) {
                    blk += coef * sel[static_cast<std::size_t>(k)];
                }
            }
        }
    }
    return make_encoding(std::move(w), prep, n, l1);
}

CMatrix two_term_lcu(const CMatrix &t0, const CMatrix &t1, double left_angle, double right_angle) {
    if (t0.rows() != t1.rows() || t0.cols() != t1.cols() || t0.rows() != t0.cols()) {
        throw Error("two_term_lcu: terms must be square and of equal size");
    }
    const double cl = std::cos(left_angle), sl = std::sin(left_angle);
    const double cr = std::cos(right_angle), sr = std::sin(right_angle);
    const Eigen::Index d = t0.rows();
    CMatrix w(2 * d, 2 * d);
    // W_ij = L_0i R_0j T0 + L_1i R_1j T1 with L = [[c, -s], [s, c]].
    const double l[2][2] = {{cl, -sl}, {sl, cl}};
    const double r[2][2] = {{cr, -sr}, {sr, cr}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            w.block(i * d, j * d, d, d) = (l[0][i] * r[0][j]) * t0 + (l[1][i] * r[1][j]) * t1;
        }
    }
    return w;
}

std::pair<double, double> split_angles(double p, double q) {
    if (std::abs(p + q) > 1.0 || std::abs(p - q) > 1.0) {
        throw Error("split_angles: unreachable coefficient pair");
    }
    const double diff = std::acos(p + q);
    const double sum = std::acos(p - q);
    return {(sum + diff) / 2.0, (sum - diff) / 2.0};
}

CMatrix reflected_square(const CMatrix &v, int a, int n) {
    Eigen::VectorXd refl = zero_reflection_diagonal(a, a + n);
    return v.adjoint() * (refl.asDiagonal() * v);
}

BlockEncoding lcu_i_minus_h2(const BlockEncoding &vh_in) {
    BlockEncoding vh = normalize_selectors(vh_in);
    if (!is_hermitian(vh.block())) {
        throw Error("lcu_i_minus_h2: encoded block is not Hermitian");
    }
    CMatrix e2 = reflected_square(vh.U, vh.a, vh.n);
    constexpr double left = 5.0 * std::numbers::pi / 12.0;
    constexpr double right = std::numbers::pi / 12.0;
    CMatrix w = two_term_lcu(identity(e2.rows()), -e2, left, right);
    BlockEncoding out = make_encoding(std::move(w), vh.a + 1, vh.n);
    out.queries = 2 * vh.queries;
    return out;
}

BlockEncoding pad_ancillas(const BlockEncoding &be_in, int a) {
    BlockEncoding be = normalize_selectors(be_in);
    if (a < be.a) {
        throw Error("pad_ancillas: cannot remove ancillas");
    }
    if (a == be.a) {
        return be;
    }
    BlockEncoding out = make_encoding(kron(identity(Eigen::Index{1} << (a - be.a)), be.U), a, be.n, be.alpha, be.eps);
    out.queries = be.queries;
    return out;
}

BlockEncoding lcu_w_uh(const BlockEncoding &vh_in, const BlockEncoding &vsqrt_in) {
    BlockEncoding vs = normalize_selectors(vsqrt_in);
    if (vh_in.n != vs.n) {
        throw Error("lcu_w_uh: system sizes differ");
    }
    if (vh_in.a > vs.a) {
        throw Error("lcu_w_uh: ancilla-count mismatch");
    }
    BlockEncoding vh = pad_ancillas(vh_in, vs.a);
    const double s = std::sin(std::numbers::pi / 14.0);
    auto [left, right] = split_angles(std::sqrt(8.0) * s, s);
    CMatrix t0 = kron(pauli_x(), vs.U);
    CMatrix t1 = kron(pauli_z(), vh.U);
    CMatrix w = two_term_lcu(t0, t1, left, right);
    // [prep][uh][anc][sys] -> [prep][anc][uh][sys]
    const int as = vs.a;
    const int total = 2 + as + vs.n;
    std::vector<int> order;
    order.push_back(0);
    for (int k = 0; k < as; ++k) {
        order.push_back(2 + k);
    }
    order.push_back(1);
    for (int k = 2 + as; k < total; ++k) {
        order.push_back(k);
    }
    BlockEncoding out = make_encoding(permute_qubits(w, order), 1 + as, vs.n + 1);
    out.queries = vh.queries + vs.queries;
    return out;
}

}  // namespace bechain
