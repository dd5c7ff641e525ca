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


#include "bechain/uncompute.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "bechain/lcu.h"

namespace bechain {

namespace {

constexpr double kPi = std::numbers::pi;

void check_inputs(double delta, double eps) {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw Error("uncompute: delta must lie in (0, 1]");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw Error("uncompute: eps must lie in (0, 1)");
    }
}

void check_norm(const CMatrix &a, double delta) {
    double nrm = opnorm(a);
    if (nrm > 1.0 - delta + 1e-10) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "uncompute: block norm %.12g exceeds 1 - delta = %.12g", nrm, 1.0 - delta);
        throw Error(buf);
    }
}

// [prep][q][anc][sys] -> [prep][anc][q][sys]
std::vector<int> move_q_after_anc(int anc, int sys) {
    std::vector<int> order{0};
    for (int k = 0; k < anc; ++k) {
        order.push_back(2 + k);
    }
    order.push_back(1);
    for (int k = 0; k < sys; ++k) {
        order.push_back(2 + anc + k);
    }
    return order;
}

BlockEncoding sqrt_branch(const PhaseFactors &phases, const CMatrix &reflected, int a, int n, std::int64_t base_queries) {
    constexpr double left = 5.0 * kPi / 12.0;
    constexpr double right = kPi / 12.0;
    BlockEncoding half = make_encoding(two_term_lcu(identity(reflected.rows()), -reflected, left, right), a + 1, n);
    half.queries = 2 * base_queries;
    return qsvt_apply(phases, half);
}

// Applies the degree-7 amplification and negates, turning a corner of
// sin(pi/14) U into U.
BlockEncoding amplify(const BlockEncoding &w) {
    BlockEncoding out = qsvt_chebyshev(w, 7);
    out.U *= -1.0;
    return out;
}

void finish(UncomputeResult &res, const CMatrix &target, const CMatrix &dilation, double eps) {
    CMatrix contracted = contract_ancillas(res.encoding, 1);
    res.report.eps_measured = opnorm(contracted - dilation);
    res.report.block_error = verify_encoding(res.encoding, target);
    res.report.queries_VH = res.encoding.queries;
    res.report.ancillae_final = 1;
    double worst = std::max(res.report.eps_measured, res.report.block_error);
    if (worst > eps) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "uncompute: measured error %.12g exceeds requested %.12g", worst, eps);
        throw AccuracyError(buf, worst);
    }
}

}  // namespace

double sqrt_budget(double eps) { return eps / 9.0 - 2e-8; }

double shifted_gap(double delta) { return delta * (2.0 - delta) / 2.0; }

UncomputeResult uncompute_hermitian(const BlockEncoding &vh_in, double delta, double eps) {
    check_inputs(delta, eps);
    BlockEncoding vh = normalize_selectors(vh_in);
    if (vh.alpha != 1.0) {
        throw Error("uncompute: input must be a (1, a, 0) encoding");
    }
    CMatrix h = vh.block();
    if (!is_hermitian(h)) {
        throw Error("uncompute: encoded block is not Hermitian");
    }
    h = (h + h.adjoint()) * 0.5;
    check_norm(h, delta);

    ChebPoly poly = approx_half_sqrt(shifted_gap(delta), sqrt_budget(eps));
    PhaseFactors phases = solve_phases(poly);
    BlockEncoding vsqrt = qsvt_apply(phases, lcu_i_minus_h2(vh));
    BlockEncoding w = lcu_w_uh(vh, vsqrt);

    CMatrix dilation = dilate_hermitian(h).U;
    UncomputeResult res;
    res.report.lcu_error = opnorm(w.block() - std::sin(kPi / 14.0) * dilation);
    BlockEncoding amp = amplify(w);
    res.encoding = make_encoding(std::move(amp.U), w.a + 1, vh.n);
    res.encoding.queries = amp.queries;
    res.report.eps_requested = eps;
    res.report.delta = delta;
    res.report.ancillae_peak = w.a + 1;
    res.report.qsvt_degree = phases.degree();
    finish(res, h, dilation, eps);
    res.encoding.eps = eps;
    return res;
}

UncomputeResult uncompute_general(const BlockEncoding &va_in, double delta, double eps) {
    check_inputs(delta, eps);
    BlockEncoding va = normalize_selectors(va_in);
    if (va.alpha != 1.0) {
        throw Error("uncompute: input must be a (1, a, 0) encoding");
    }
    CMatrix a = va.block();
    check_norm(a, delta);

    ChebPoly poly = approx_half_sqrt(shifted_gap(delta), sqrt_budget(eps));
    PhaseFactors phases = solve_phases(poly);
    // Blocks sqrt(I - A†A)/sqrt(8) and sqrt(I - AA†)/sqrt(8).
    BlockEncoding right = sqrt_branch(phases, reflected_square(va.U, va.a, va.n), va.a, va.n, va.queries);
    BlockEncoding left = sqrt_branch(phases, reflected_square(va.U.adjoint(), va.a, va.n), va.a, va.n, va.queries);

    const int anc = right.a;
    const Eigen::Index d = right.U.rows();
    CMatrix diag = CMatrix::Zero(2 * d, 2 * d);
    diag.topLeftCorner(d, d) = right.U;
    diag.bottomRightCorner(d, d) = -left.U;
    CMatrix vp = kron(identity(Eigen::Index{1} << (anc - va.a)), va.U);
    CMatrix swap = CMatrix::Zero(2 * d, 2 * d);
    swap.topRightCorner(d, d) = vp.adjoint();
    swap.bottomLeftCorner(d, d) = vp;

    const double s = std::sin(kPi / 14.0);
    auto [l, r] = split_angles(std::sqrt(8.0) * s, s);
    CMatrix wm = permute_qubits(two_term_lcu(diag, swap, l, r), move_q_after_anc(anc, va.n));
    BlockEncoding w = make_encoding(std::move(wm), 1 + anc, va.n + 1);
    w.queries = right.queries + left.queries + 2 * va.queries;

    CMatrix dilation = dilate_general(a).U;
    UncomputeResult res;
    res.report.lcu_error = opnorm(w.block() - s * dilation);
    BlockEncoding amp = amplify(w);
    res.encoding = make_encoding(std::move(amp.U), w.a + 1, va.n);
    res.encoding.queries = amp.queries;
    res.encoding.bra_sel.back() = '1';
    res.report.eps_requested = eps;
    res.report.delta = delta;
    res.report.ancillae_peak = w.a + 1;
    res.report.qsvt_degree = phases.degree();
    finish(res, a, dilation, eps);
    res.encoding.eps = eps;
    return res;
}

CMatrix contract_ancillas(const BlockEncoding &be, int keep) {
    if (keep < 0 || keep > be.a) {
        throw Error("contract_ancillas: bad number of kept ancillas");
    }
    const int drop = be.a - keep;
    return mat_embed_block(be.U, std::string_view(be.bra_sel).substr(0, static_cast<std::size_t>(drop)),
                           std::string_view(be.ket_sel).substr(0, static_cast<std::size_t>(drop)), drop, keep + be.n);
}

CMatrix phase_correct_twisted(const CMatrix &twisted, double delta, double eps) {
    if (twisted.rows() != 2 || twisted.cols() != 2) {
        throw Error("phase_correct_twisted: expected a 2x2 matrix");
    }
    if (!is_unitary(twisted, Tolerance(1e-10))) {
        throw Error("phase_correct_twisted: input is not unitary");
    }
    const Complex c0 = twisted(0, 0), c1 = twisted(1, 1);
    if (std::abs(c0 - c1) > 1e-10 || std::abs(c0.imag()) > 1e-10 ||
        std::abs(std::abs(twisted(0, 1)) - std::abs(twisted(1, 0))) > 1e-8) {
        throw Error("phase_correct_twisted: input is not of twisted-embeddable form");
    }
    BlockEncoding be = make_encoding(twisted, 1, 0);
    UncomputeResult res = uncompute_hermitian(be, delta, eps);
    CMatrix u = contract_ancillas(res.encoding, 1);
    return phase_s() * u * phase_s();
}

}  // namespace bechain
