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

#include <cmath>
#include <cstdio>
#include <vector>

namespace bechain {

Tolerance::Tolerance(double atol_, double rtol_) : atol(atol_), rtol(rtol_) {
    if (!(atol >= 0.0) || !(rtol >= 0.0)) {
        throw Error("tolerance must be non-negative");
    }
}

double opnorm(const CMatrix &m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw Error("empty matrix");
    }
    if (m.rows() == 1 || m.cols() == 1) {
        return m.norm();
    }
    Eigen::BDCSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

namespace {

// Cheap Frobenius screen before falling back to the exact operator norm.
bool within(const CMatrix &d, double atol) {
    double f = d.norm();
    if (f <= atol) {
        return true;
    }
    return opnorm(d) <= atol;
}

}  // namespace

bool is_unitary(const CMatrix &m, const Tolerance &tol) {
    if (m.rows() != m.cols()) {
        throw Error("is_unitary: matrix is not square");
    }
    if (m.rows() == 0) {
        throw Error("empty matrix");
    }
    CMatrix id = CMatrix::Identity(m.rows(), m.cols());
    return within(m.adjoint() * m - id, tol.atol) && within(m * m.adjoint() - id, tol.atol);
}

bool is_hermitian(const CMatrix &m, const Tolerance &tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return within(m - m.adjoint(), tol.atol);
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix herm_funcmat(const CMatrix &h, const RealFunction &f, const Tolerance &tol) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw Error("herm_funcmat: matrix must be square and non-empty");
    }
    if (!is_hermitian(h, tol)) {
        throw Error("herm_funcmat: matrix is not Hermitian");
    }
    CMatrix sym = (h + h.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success) {
        throw Error("herm_funcmat: eigendecomposition failed");
    }
    const Eigen::VectorXd &lam = es.eigenvalues();
    Eigen::VectorXd fl(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        double v = f(lam(i));
        if (!std::isfinite(v)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "herm_funcmat: eigenvalue %.12g outside function domain", lam(i));
            throw Error(buf);
        }
        fl(i) = v;
    }
    const CMatrix &v = es.eigenvectors();
    return v * fl.asDiagonal() * v.adjoint();
}

std::size_t bitstring_index(std::string_view bits) {
    std::size_t idx = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error("bitstring must contain only '0' and '1'");
        }
        idx = (idx << 1) | static_cast<std::size_t>(c - '0');
    }
    return idx;
}

std::string index_bitstring(std::size_t index, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int k = width - 1; k >= 0; --k) {
        s[static_cast<std::size_t>(k)] = (index & 1) ? '1' : '0';
        index >>= 1;
    }
    return s;
}

CMatrix mat_embed_block(const CMatrix &u, std::string_view bra, std::string_view ket, int a, int n) {
    if (a < 0 || n < 0 || a + n > 20) {
        throw Error("mat_embed_block: bad register sizes");
    }
    const Eigen::Index dim = Eigen::Index{1} << (a + n);
    if (u.rows() != dim || u.cols() != dim) {
        throw Error("mat_embed_block: dimension mismatch");
    }
    if (bra.size() != static_cast<std::size_t>(a) || ket.size() != static_cast<std::size_t>(a)) {
        throw Error("mat_embed_block: selector length must equal ancilla count");
    }
    const Eigen::Index sd = Eigen::Index{1} << n;
    auto bi = static_cast<Eigen::Index>(bitstring_index(bra));
    auto ki = static_cast<Eigen::Index>(bitstring_index(ket));
    return u.block(bi * sd, ki * sd, sd, sd);
}

int qubit_count(Eigen::Index dim) {
    if (dim <= 0 || (dim & (dim - 1)) != 0) {
        throw Error("dimension is not a power of two");
    }
    int q = 0;
    while ((Eigen::Index{1} << q) < dim) {
        ++q;
    }
    return q;
}

CMatrix identity(Eigen::Index dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

CMatrix hadamard() {
    CMatrix m(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

CMatrix phase_s() {
    CMatrix m(2, 2);
    m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 1);
    return m;
}

CMatrix expi_hermitian(const CMatrix &g, double theta) {
    if (theta == 0.0) {
        return identity(g.rows());
    }
    CMatrix sym = (g + g.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    const Eigen::VectorXd &lam = es.eigenvalues();
    CVector ph(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        ph(i) = std::polar(1.0, theta * lam(i));
    }
    const CMatrix &v = es.eigenvectors();
    return v * ph.asDiagonal() * v.adjoint();
}

CMatrix permute_qubits(const CMatrix &m, std::span<const int> new_order) {
    const int q = qubit_count(m.rows());
    if (m.cols() != m.rows() || static_cast<int>(new_order.size()) != q) {
        throw Error("permute_qubits: order length must match qubit count");
    }
    std::vector<bool> seen(static_cast<std::size_t>(q), false);
    for (int o : new_order) {
        if (o < 0 || o >= q || seen[static_cast<std::size_t>(o)]) {
            throw Error("permute_qubits: order is not a permutation");
        }
        seen[static_cast<std::size_t>(o)] = true;
    }
    const Eigen::Index dim = m.rows();
    std::vector<Eigen::Index> old_of(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::Index old = 0;
        for (int k = 0; k < q; ++k) {
            Eigen::Index bit = (i >> (q - 1 - k)) & 1;
            old |= bit << (q - 1 - new_order[static_cast<std::size_t>(k)]);
        }
        old_of[static_cast<std::size_t>(i)] = old;
    }
    CMatrix out(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Eigen::Index oj = old_of[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < dim; ++i) {
            out(i, j) = m(old_of[static_cast<std::size_t>(i)], oj);
        }
    }
    return out;
}

CMatrix complete_unitary(const CVector &v) {
    const double nv = v.norm();
    if (v.size() == 0 || nv < 1e-300) {
        throw Error("complete_unitary: zero vector");
    }
    CVector u = v / nv;
    Eigen::HouseholderQR<CMatrix> qr{CMatrix(u)};
    CMatrix q = qr.householderQ() * CMatrix::Identity(v.size(), v.size());
    // q.col(0) is u up to a global phase; undo it.
    Complex ph = q.col(0).dot(u);
    q.col(0) *= ph / std::abs(ph);
    return q;
}

CMatrix polar_unitary(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Eigen::VectorXd zero_reflection_diagonal(int k, int total) {
    if (k < 0 || k > total) {
        throw Error("zero_reflection_diagonal: bad register sizes");
    }
    const Eigen::Index dim = Eigen::Index{1} << total;
    const Eigen::Index inner = Eigen::Index{1} << (total - k);
    Eigen::VectorXd d = Eigen::VectorXd::Constant(dim, -1.0);
    d.head(inner).setConstant(1.0);
    return d;
}

}  // namespace bechain
