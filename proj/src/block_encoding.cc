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


#include "bechain/block_encoding.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bechain/rng.h"

namespace bechain {

CMatrix BlockEncoding::block() const { return mat_embed_block(U, bra_sel, ket_sel, a, n); }

BlockEncoding make_encoding(CMatrix u, int a, int n, double alpha, double eps) {
    if (a < 0 || n < 0 || a + n > 12) {
        throw Error("block encoding: register sizes out of range");
    }
    const Eigen::Index dim = Eigen::Index{1} << (a + n);
    if (u.rows() != dim || u.cols() != dim) {
        throw Error("block encoding: unitary dimension does not match 2^(a+n)");
    }
    if (!(alpha > 0.0) || !(eps >= 0.0)) {
        throw Error("block encoding: need alpha > 0 and eps >= 0");
    }
    BlockEncoding be;
    be.U = std::move(u);
    be.a = a;
    be.n = n;
    be.alpha = alpha;
    be.eps = eps;
    be.bra_sel.assign(static_cast<std::size_t>(a), '0');
    be.ket_sel.assign(static_cast<std::size_t>(a), '0');
    return be;
}

void validate_encoding(const BlockEncoding &be, const Tolerance &tol) {
    if (be.a < 0 || be.n < 0) {
        throw Error("block encoding: negative register size");
    }
    const Eigen::Index dim = Eigen::Index{1} << (be.a + be.n);
    if (be.U.rows() != dim || be.U.cols() != dim) {
        throw Error("block encoding: unitary dimension does not match 2^(a+n)");
    }
    if (be.bra_sel.size() != static_cast<std::size_t>(be.a) || be.ket_sel.size() != static_cast<std::size_t>(be.a)) {
        throw Error("block encoding: selector length must equal a");
    }
    if (!(be.alpha > 0.0) || !(be.eps >= 0.0)) {
        throw Error("block encoding: need alpha > 0 and eps >= 0");
    }
    if (!is_unitary(be.U, tol)) {
        throw Error("block encoding: U is not unitary");
    }
}

double verify_encoding(const BlockEncoding &be, const CMatrix &target) {
    if (target.rows() != be.system_dim() || target.cols() != be.system_dim()) {
        throw Error("verify_encoding: target dimension mismatch");
    }
    return opnorm(target - be.alpha * be.block());
}

double sqrt_one_minus_sq(double x) {
    double v = 1.0 - x * x;
    if (v < 0.0) {
        if (v < -1e-12) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        v = 0.0;
    }
    return std::sqrt(v);
}

BlockEncoding dilate_hermitian(const CMatrix &h) {
    if (!is_hermitian(h)) {
        throw Error("dilate_hermitian: matrix is not Hermitian");
    }
    const int n = qubit_count(h.rows());
    if (opnorm(h) > 1.0 + 1e-10) {
        throw Error("not subnormalized");
    }
    CMatrix hs = (h + h.adjoint()) * 0.5;
    CMatrix s = herm_funcmat(hs, [](double x) { return sqrt_one_minus_sq(std::clamp(x, -1.0, 1.0)); });
    const Eigen::Index d = hs.rows();
    CMatrix u(2 * d, 2 * d);
    u.topLeftCorner(d, d) = hs;
    u.topRightCorner(d, d) = s;
    u.bottomLeftCorner(d, d) = s;
    u.bottomRightCorner(d, d) = -hs;
    return make_encoding(std::move(u), 1, n);
}

BlockEncoding dilate_general(const CMatrix &a) {
    if (a.rows() != a.cols()) {
        throw Error("dilate_general: only square matrices are supported");
    }
    const int n = qubit_count(a.rows());
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd &sv = svd.singularValues();
    if (sv(0) > 1.0 + 1e-10) {
        throw Error("not subnormalized");
    }
    Eigen::VectorXd c(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        c(i) = sqrt_one_minus_sq(std::min(sv(i), 1.0));
    }
    const CMatrix &wl = svd.matrixU();
    const CMatrix &wr = svd.matrixV();
    CMatrix right = wr * c.asDiagonal() * wr.adjoint();  // sqrt(I - A†A)
    CMatrix left = wl * c.asDiagonal() * wl.adjoint();   // sqrt(I - AA†)
    const Eigen::Index d = a.rows();
    CMatrix u(2 * d, 2 * d);
    u.topLeftCorner(d, d) = right;
    u.topRightCorner(d, d) = a.adjoint();
    u.bottomLeftCorner(d, d) = a;
    u.bottomRightCorner(d, d) = -left;
    BlockEncoding be = make_encoding(std::move(u), 1, n);
    be.bra_sel = "1";
    be.ket_sel = "0";
    return be;
}

BlockEncoding random_block_encoding(int n, int a, std::uint64_t seed) {
    if (n < 1 || a < 1 || n + a > 10) {
        throw Error("random_block_encoding: need n, a >= 1 and n + a <= 10");
    }
    Rng rng(seed);
    return make_encoding(random_unitary(Eigen::Index{1} << (n + a), rng), a, n);
}

BlockEncoding random_near_identity(int n, int a, double eta, std::uint64_t seed) {
    if (n < 0 || a < 0 || n + a > 10 || n + a < 1) {
        throw Error("random_near_identity: need 1 <= n + a <= 10");
    }
    if (!(eta >= 0.0) || !(eta < 1.0)) {
        throw Error("random_near_identity: eta must lie in [0, 1)");
    }
    const Eigen::Index dim = Eigen::Index{1} << (n + a);
    Rng rng(seed);
    CMatrix g = random_hermitian(dim, 1.0, rng);
    double t = rng.uniform(0.8 * eta, eta);
    double theta = 2.0 * std::asin(t / 2.0);
    return make_encoding(expi_hermitian(g, theta), a, n);
}

double deviation(const BlockEncoding &be) { return opnorm(be.U - identity(be.U.rows())); }

DeviationProfile deviation_profile(const std::vector<BlockEncoding> &encodings) {
    DeviationProfile p;
    for (const auto &be : encodings) {
        p.etas.push_back(deviation(be));
        p.eta_max = std::max(p.eta_max, p.etas.back());
    }
    return p;
}

BlockEncoding normalize_selectors(const BlockEncoding &be) {
    BlockEncoding out = be;
    auto flips = [&](const std::string &sel) {
        CMatrix f = identity(1);
        for (char ch : sel) {
            f = kron(f, ch == '1' ? pauli_x() : identity(2));
        }
        return kron(f, identity(be.system_dim()));
    };
    out.U = flips(be.bra_sel) * be.U * flips(be.ket_sel);
    out.bra_sel.assign(static_cast<std::size_t>(be.a), '0');
    out.ket_sel.assign(static_cast<std::size_t>(be.a), '0');
    return out;
}

BlockEncoding scramble_ancillas(const BlockEncoding &be_in, int a, std::uint64_t seed) {
    BlockEncoding be = normalize_selectors(be_in);
    if (a < be.a || a + be.n > 12) {
        throw Error("scramble_ancillas: bad ancilla count");
    }
    CMatrix u = kron(identity(Eigen::Index{1} << (a - be.a)), be.U);
    const Eigen::Index dim = u.rows();
    const Eigen::Index good = be.system_dim();
    Rng rng(seed);
    CMatrix left = identity(dim), right = identity(dim);
    if (dim > good) {
        left.bottomRightCorner(dim - good, dim - good) = random_unitary(dim - good, rng);
        right.bottomRightCorner(dim - good, dim - good) = random_unitary(dim - good, rng);
    }
    BlockEncoding out = make_encoding(left * u * right, a, be.n, be.alpha, be.eps);
    out.queries = be.queries;
    return out;
}

}  // namespace bechain
