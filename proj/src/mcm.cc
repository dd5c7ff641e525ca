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

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "bechain/rng.h"

namespace bechain {

namespace {

struct Registers {
    int a = 0;
    int n = 0;
    Eigen::Index good = 1;  // 2^n
    Eigen::Index inner = 1; // 2^(a+n)
};

Registers common_registers(const std::vector<BlockEncoding> &encodings) {
    if (encodings.empty()) {
        throw Error("mcm: no block encodings");
    }
    Registers r;
    r.a = encodings[0].a;
    r.n = encodings[0].n;
    for (const auto &be : encodings) {
        if (be.a != r.a || be.n != r.n) {
            throw Error("mcm: block encodings must share (a, n)");
        }
    }
    r.good = Eigen::Index{1} << r.n;
    r.inner = Eigen::Index{1} << (r.a + r.n);
    return r;
}

std::vector<CMatrix> normalized_unitaries(const std::vector<BlockEncoding> &encodings) {
    std::vector<CMatrix> out;
    out.reserve(encodings.size());
    for (const auto &be : encodings) {
        bool zero = be.bra_sel.find('1') == std::string::npos && be.ket_sel.find('1') == std::string::npos;
        out.push_back(zero ? be.U : normalize_selectors(be).U);
    }
    return out;
}

// (I_m ⊗ U) M
void apply_inner(CMatrix &m, const CMatrix &u, Eigen::Index blocks, Eigen::Index inner) {
    CMatrix tmp(inner, m.cols());
    for (Eigen::Index b = 0; b < blocks; ++b) {
        tmp.noalias() = u * m.middleRows(b * inner, inner);
        m.middleRows(b * inner, inner) = tmp;
    }
}

// (V ⊗ R) M where R keeps rows [lo, hi) of every inner block and the rest are left untouched.
void apply_outer(CMatrix &m, const CMatrix &v, Eigen::Index inner, Eigen::Index lo, Eigen::Index hi) {
    const Eigen::Index blocks = v.rows();
    const Eigen::Index h = hi - lo;
    if (h <= 0) {
        return;
    }
    std::vector<CMatrix> parts;
    parts.reserve(static_cast<std::size_t>(blocks));
    for (Eigen::Index b = 0; b < blocks; ++b) {
        parts.push_back(m.middleRows(b * inner + lo, h));
    }
    for (Eigen::Index i = 0; i < blocks; ++i) {
        auto dst = m.middleRows(i * inner + lo, h);
        dst.setZero();
        for (Eigen::Index j = 0; j < blocks; ++j) {
            if (v(i, j) != Complex(0.0)) {
                dst += v(i, j) * parts[static_cast<std::size_t>(j)];
            }
        }
    }
}

// Propagates the columns `m` through the simplified circuit.
void propagate(const MCMCircuit &circ, const std::vector<CMatrix> &us, const Registers &r, CMatrix &m) {
    const Eigen::Index blocks = Eigen::Index{1} << circ.m;
    apply_inner(m, us[0], blocks, r.inner);
    for (int i = 1; i < circ.K(); ++i) {
        apply_outer(m, circ.V[static_cast<std::size_t>(i - 1)], r.inner, r.good, r.inner);
        apply_inner(m, us[static_cast<std::size_t>(i)], blocks, r.inner);
    }
    apply_outer(m, circ.Q, r.inner, 0, r.inner);
}

void check_m_unitary(const CMatrix &u, int m, const char *what) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    if (u.rows() != dim || u.cols() != dim) {
        throw Error(std::string("mcm: ") + what + " has the wrong dimension");
    }
    if (!is_unitary(u)) {
        throw Error(std::string("mcm: ") + what + " is not unitary");
    }
}

CMatrix pauli_string(int index, int m) {
    static const CMatrix paulis[4] = {identity(2), pauli_x(), pauli_y(), pauli_z()};
    CMatrix out = identity(1);
    for (int q = m - 1; q >= 0; --q) {
        out = kron(out, paulis[(index >> (2 * q)) & 3]);
    }
    return out;
}

}  // namespace

int ceil_log2(int k) {
    if (k < 1) {
        throw Error("ceil_log2: argument must be positive");
    }
    int m = 0;
    while ((1 << m) < k) {
        ++m;
    }
    return m;
}

void validate_circuit(const MCMCircuit &circ) {
    if (circ.K() < 1) {
        throw Error("mcm: need at least one block encoding");
    }
    common_registers(circ.encodings);
    if (circ.m < 0 || circ.m + circ.encodings[0].a + circ.encodings[0].n > 12) {
        throw Error("mcm: register sizes out of range");
    }
    if (circ.m == 0 && circ.K() > 1) {
        throw Error("mcm: m = 0 is only valid for K = 1");
    }
    if (static_cast<int>(circ.V.size()) != circ.K() - 1) {
        throw Error("mcm: need K - 1 interleaved unitaries");
    }
    for (const auto &v : circ.V) {
        check_m_unitary(v, circ.m, "V");
    }
    check_m_unitary(circ.Q, circ.m, "Q");
}

CMatrix mcm_unitary(const MCMCircuit &circ) {
    validate_circuit(circ);
    Registers r = common_registers(circ.encodings);
    auto us = normalized_unitaries(circ.encodings);
    CMatrix m = identity((Eigen::Index{1} << circ.m) * r.inner);
    propagate(circ, us, r, m);
    return m;
}

CMatrix embe_block(const MCMCircuit &circ) {
    validate_circuit(circ);
    Registers r = common_registers(circ.encodings);
    auto us = normalized_unitaries(circ.encodings);
    CMatrix m = CMatrix::Zero((Eigen::Index{1} << circ.m) * r.inner, r.good);
    m.topRows(r.good).setIdentity();
    propagate(circ, us, r, m);
    return m.topRows(r.good);
}

MCMCircuit mcm_from_raw(const MCMRaw &raw) {
    const int k = static_cast<int>(raw.encodings.size());
    if (k < 1 || static_cast<int>(raw.W.size()) != k || static_cast<int>(raw.G.size()) != k - 1 ||
        static_cast<int>(raw.B.size()) != k - 1) {
        throw Error("mcm_from_raw: need K W's and K - 1 G's and B's");
    }
    for (const auto &w : raw.W) {
        check_m_unitary(w, raw.m, "W");
    }
    for (int j = 0; j < k - 1; ++j) {
        check_m_unitary(raw.G[static_cast<std::size_t>(j)], raw.m, "G");
        check_m_unitary(raw.B[static_cast<std::size_t>(j)], raw.m, "B");
    }
    MCMCircuit circ;
    circ.encodings = raw.encodings;
    circ.m = raw.m;
    CMatrix t = raw.W[0];
    for (int j = 1; j < k; ++j) {
        const CMatrix &g = raw.G[static_cast<std::size_t>(j - 1)];
        const CMatrix &b = raw.B[static_cast<std::size_t>(j - 1)];
        circ.V.push_back(t.adjoint() * g.adjoint() * b * t);
        t = raw.W[static_cast<std::size_t>(j)] * g * t;
    }
    circ.Q = t;
    return circ;
}

CMatrix block_product(const std::vector<BlockEncoding> &encodings) {
    Registers r = common_registers(encodings);
    CMatrix prod = identity(r.good);
    for (const auto &be : encodings) {
        prod = be.block() * prod;
    }
    return prod;
}

CMatrix add_unitary(int p) {
    if (p < 1 || p > 6) {
        throw Error("add_unitary: p must lie in [1, 6]");
    }
    const Eigen::Index dim = Eigen::Index{1} << p;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        m((x + 1) % dim, x) = 1.0;
    }
    return m;
}

MCMCircuit gadget_naive(const std::vector<BlockEncoding> &encodings) {
    const int k = static_cast<int>(encodings.size());
    if (k < 2) {
        throw Error("gadget_naive: need K >= 2");
    }
    MCMCircuit circ;
    circ.encodings = encodings;
    circ.m = k - 1;
    for (int i = 1; i < k; ++i) {
        CMatrix v = identity(1);
        for (int w = 1; w < k; ++w) {
            v = kron(v, w == i ? pauli_x() : identity(2));
        }
        circ.V.push_back(std::move(v));
    }
    circ.Q = identity(Eigen::Index{1} << circ.m);
    return circ;
}

MCMCircuit gadget_pmacg(const std::vector<BlockEncoding> &encodings, int p) {
    const int k = static_cast<int>(encodings.size());
    if (k < 2) {
        throw Error("gadget_pmacg: need K >= 2");
    }
    if (p < 1) {
        throw Error("gadget_pmacg: need p >= 1");
    }
    MCMCircuit circ;
    circ.encodings = encodings;
    circ.m = p;
    CMatrix add = add_unitary(p);
    circ.V.assign(static_cast<std::size_t>(k - 1), add);
    circ.Q = identity(add.rows());
    return circ;
}

MCMCircuit gadget_lw19(const std::vector<BlockEncoding> &encodings) {
    const int k = static_cast<int>(encodings.size());
    if (k < 2) {
        throw Error("gadget_lw19: need K >= 2");
    }
    return gadget_pmacg(encodings, ceil_log2(k));
}

CMatrix bad_sequence_oracle(const std::vector<BlockEncoding> &encodings, const std::string &x) {
    Registers r = common_registers(encodings);
    const int k = static_cast<int>(encodings.size());
    if (static_cast<int>(x.size()) != k - 1) {
        throw Error("bad_sequence_oracle: pattern length must be K - 1");
    }
    auto us = normalized_unitaries(encodings);
    CMatrix cur = us[0].leftCols(r.good);
    for (int i = 1; i < k; ++i) {
        char bit = x[static_cast<std::size_t>(k - 1 - i)];
        if (bit == '0') {
            cur.bottomRows(r.inner - r.good).setZero();
        } else if (bit == '1') {
            cur.topRows(r.good).setZero();
        } else {
            throw Error("bad_sequence_oracle: pattern must contain only '0' and '1'");
        }
        cur = us[static_cast<std::size_t>(i)] * cur;
    }
    return cur.topRows(r.good);
}

double gadget_error_exact(const MCMCircuit &circ, const CMatrix &target) {
    CMatrix blk = embe_block(circ);
    if (target.rows() != blk.rows() || target.cols() != blk.cols()) {
        throw Error("gadget_error_exact: target dimension mismatch");
    }
    return opnorm(target - blk);
}

CMatrix bad_sum_enumerate(const std::vector<BlockEncoding> &encodings, int p) {
    Registers r = common_registers(encodings);
    const int k = static_cast<int>(encodings.size());
    if (k > 16) {
        throw Error("bad_sum_enumerate: limited to K <= 16");
    }
    if (p < 1) {
        throw Error("bad_sum_enumerate: need p >= 1");
    }
    const unsigned period = 1u << p;
    CMatrix sum = CMatrix::Zero(r.good, r.good);
    const unsigned limit = 1u << (k - 1);
    for (unsigned mask = 1; mask < limit; ++mask) {
        if (std::popcount(mask) % period != 0) {
            continue;
        }
        std::string x(static_cast<std::size_t>(k - 1), '0');
        for (int i = 1; i < k; ++i) {
            if ((mask >> (i - 1)) & 1u) {
                x[static_cast<std::size_t>(k - 1 - i)] = '1';
            }
        }
        sum += bad_sequence_oracle(encodings, x);
    }
    return sum;
}

CMatrix bad_sum_by_weight(const std::vector<BlockEncoding> &encodings, int p) {
    Registers r = common_registers(encodings);
    if (p < 1) {
        throw Error("bad_sum_by_weight: need p >= 1");
    }
    const int k = static_cast<int>(encodings.size());
    auto us = normalized_unitaries(encodings);
    std::vector<CMatrix> by_w(static_cast<std::size_t>(k), CMatrix::Zero(r.inner, r.good));
    by_w[0] = us[0].leftCols(r.good);
    for (int i = 1; i < k; ++i) {
        for (int w = i; w >= 0; --w) {
            CMatrix next = CMatrix::Zero(r.inner, r.good);
            next.topRows(r.good) = by_w[static_cast<std::size_t>(w)].topRows(r.good);
            if (w > 0) {
                next.bottomRows(r.inner - r.good) = by_w[static_cast<std::size_t>(w - 1)].bottomRows(r.inner - r.good);
            }
            by_w[static_cast<std::size_t>(w)] = us[static_cast<std::size_t>(i)] * next;
        }
    }
    const int period = 1 << p;
    CMatrix sum = CMatrix::Zero(r.good, r.good);
    for (int w = period; w < k; w += period) {
        sum += by_w[static_cast<std::size_t>(w)].topRows(r.good);
    }
    return sum;
}

double macg_bound_formula(int K, int p, double c) {
    const double e = std::numbers::e;
    const double base = e * c * c / (K * std::ldexp(1.0, p));
    return 2.0 * std::exp(c) * std::pow(base, std::ldexp(1.0, p));
}

bool macg_regime_ok(int K, int p, double c) {
    return c * c * std::numbers::e * (K - 1) / (K * std::ldexp(1.0, p)) < 0.5;
}

double macg_bound(int K, int p, double c) {
    if (K < 2 || p < 1 || !(c > 0.0)) {
        throw Error("macg_bound: need K >= 2, p >= 1, c > 0");
    }
    if (!macg_regime_ok(K, p, c)) {
        throw Error("bound regime not satisfied");
    }
    return macg_bound_formula(K, p, c);
}

int min_k_for_eps(double eps, int p, double c) {
    if (!(eps > 0.0) || p < 1 || !(c > 0.0)) {
        throw Error("min_k_for_eps: need eps > 0, p >= 1, c > 0");
    }
    const double q = std::ldexp(1.0, p);
    double k = std::numbers::e * c * c / q * std::pow(2.0 / eps, 1.0 / q);
    return std::max(1, static_cast<int>(std::ceil(k - 1e-12)));
}

std::pair<double, double> seqnorm_bound_check(const std::vector<BlockEncoding> &encodings, const std::string &x) {
    CMatrix s = bad_sequence_oracle(encodings, x);
    const double eta = deviation_profile(encodings).eta_max;
    const auto w = static_cast<double>(std::count(x.begin(), x.end(), '1'));
    const auto k = static_cast<double>(encodings.size());
    return {opnorm(s), std::pow(eta, 2.0 * w) * std::pow(1.0 + eta, k)};
}

double seqnorm_run_bound(const std::vector<BlockEncoding> &encodings, const std::string &x) {
    const double eta = deviation_profile(encodings).eta_max;
    int switches = 0;
    char prev = '0';
    for (auto it = x.rbegin(); it != x.rend(); ++it) {
        switches += *it != prev;
        prev = *it;
    }
    switches += prev != '0';
    const auto k = static_cast<double>(encodings.size());
    return std::pow(eta, switches) * std::pow(1.0 + eta, k - switches);
}

CMatrix su_from_params(const double *theta, int m) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    CMatrix g = CMatrix::Zero(dim, dim);
    const int count = (1 << (2 * m)) - 1;
    for (int k = 0; k < count; ++k) {
        g += theta[k] * pauli_string(k + 1, m);
    }
    return expi_hermitian(g, 1.0);
}

namespace {

struct ProbeProblem {
    const std::vector<BlockEncoding> *encodings;
    int m;
    int per;
    std::vector<CMatrix> generators;
    CMatrix target;
    Registers regs;
    std::vector<CMatrix> us;

    MCMCircuit circuit(const double *x) const {
        MCMCircuit c;
        c.encodings = *encodings;
        c.m = m;
        const int k = static_cast<int>(encodings->size());
        auto unitary = [&](const double *t) {
            CMatrix g = CMatrix::Zero(Eigen::Index{1} << m, Eigen::Index{1} << m);
            for (int j = 0; j < per; ++j) {
                g += t[j] * generators[static_cast<std::size_t>(j)];
            }
            return expi_hermitian(g, 1.0);
        };
        for (int i = 0; i < k - 1; ++i) {
            c.V.push_back(unitary(x + i * per));
        }
        c.Q = unitary(x + (k - 1) * per);
        return c;
    }

    CMatrix block(const double *x) const {
        MCMCircuit c = circuit(x);
        CMatrix cols = CMatrix::Zero((Eigen::Index{1} << m) * regs.inner, regs.good);
        cols.topRows(regs.good).setIdentity();
        propagate(c, us, regs, cols);
        return cols.topRows(regs.good);
    }

    double objective(const double *x) const { return (target - block(x)).squaredNorm(); }
};

double probe_f(const gsl_vector *v, void *params) {
    auto *pp = static_cast<ProbeProblem *>(params);
    return pp->objective(v->data);
}

void probe_df(const gsl_vector *v, void *params, gsl_vector *g) {
    auto *pp = static_cast<ProbeProblem *>(params);
    const std::size_t n = v->size;
    std::vector<double> x(v->data, v->data + n);
    const double h = 1e-6;
    for (std::size_t i = 0; i < n; ++i) {
        double keep = x[i];
        x[i] = keep + h;
        double fp = pp->objective(x.data());
        x[i] = keep - h;
        double fm = pp->objective(x.data());
        x[i] = keep;
        gsl_vector_set(g, i, (fp - fm) / (2.0 * h));
    }
}

void probe_fdf(const gsl_vector *v, void *params, double *f, gsl_vector *g) {
    *f = probe_f(v, params);
    probe_df(v, params, g);
}

}  // namespace

ProbeResult lower_bound_probe_detailed(const std::vector<BlockEncoding> &encodings, int m, int restarts,
                                       std::uint64_t seed) {
    Registers regs = common_registers(encodings);
    const int k = static_cast<int>(encodings.size());
    if (k < 2 || k > 4 || m < 1 || m > 2) {
        throw Error("lower_bound_probe: need 2 <= K <= 4 and 1 <= m <= 2");
    }
    if (restarts < 1) {
        throw Error("lower_bound_probe: need at least one restart");
    }
    ProbeProblem prob;
    prob.encodings = &encodings;
    prob.m = m;
    prob.per = (1 << (2 * m)) - 1;
    for (int j = 1; j <= prob.per; ++j) {
        prob.generators.push_back(pauli_string(j, m));
    }
    prob.target = block_product(encodings);
    prob.regs = regs;
    prob.us = normalized_unitaries(encodings);

    const std::size_t dim = static_cast<std::size_t>(k * prob.per);
    gsl_set_error_handler_off();
    gsl_multimin_function fn{&probe_f, dim, &prob};
    gsl_multimin_function_fdf fdf{&probe_f, &probe_df, &probe_fdf, dim, &prob};
    gsl_multimin_fminimizer *nm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
    gsl_multimin_fdfminimizer *bfgs = gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, dim);
    gsl_vector *x = gsl_vector_alloc(dim);
    gsl_vector *step = gsl_vector_alloc(dim);

    ProbeResult result;
    result.best = std::numeric_limits<double>::infinity();
    for (int rs = 0; rs < restarts; ++rs) {
        Rng rng(trial_seed(seed, static_cast<std::uint64_t>(rs)));
        for (std::size_t i = 0; i < dim; ++i) {
            gsl_vector_set(x, i, rng.uniform(-std::numbers::pi, std::numbers::pi));
        }
        gsl_vector_set_all(step, 0.5);
        gsl_multimin_fminimizer_set(nm, &fn, x, step);
        for (int it = 0; it < 20000; ++it) {
            if (gsl_multimin_fminimizer_iterate(nm) != GSL_SUCCESS) {
                break;
            }
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm), 1e-10) == GSL_SUCCESS) {
                break;
            }
        }
        gsl_vector_memcpy(x, gsl_multimin_fminimizer_x(nm));
        std::vector<double> best_x(x->data, x->data + dim);
        double best_f = prob.objective(best_x.data());

        gsl_multimin_fdfminimizer_set(bfgs, &fdf, x, 1e-3, 0.1);
        for (int it = 0; it < 2000; ++it) {
            if (gsl_multimin_fdfminimizer_iterate(bfgs) != GSL_SUCCESS) {
                break;
            }
            if (gsl_multimin_test_gradient(gsl_multimin_fdfminimizer_gradient(bfgs), 1e-14) == GSL_SUCCESS) {
                break;
            }
        }
        const gsl_vector *xr = gsl_multimin_fdfminimizer_x(bfgs);
        double fr = prob.objective(xr->data);
        if (fr < best_f) {
            best_f = fr;
            best_x.assign(xr->data, xr->data + dim);
        }
        double residual = opnorm(prob.target - prob.block(best_x.data()));
        result.per_restart.push_back(residual);
        result.best = std::min(result.best, residual);
    }
    gsl_vector_free(step);
    gsl_vector_free(x);
    gsl_multimin_fdfminimizer_free(bfgs);
    gsl_multimin_fminimizer_free(nm);
    return result;
}

double lower_bound_probe(const std::vector<BlockEncoding> &encodings, int m, int restarts, std::uint64_t seed) {
    return lower_bound_probe_detailed(encodings, m, restarts, seed).best;
}

}  // namespace bechain
