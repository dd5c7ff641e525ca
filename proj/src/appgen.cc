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

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace bechain {

namespace {

bool is_anti_hermitian(const CMatrix &a) { return (a + a.adjoint()).norm() <= 1e-10 * std::max(1.0, a.norm()); }

double param(const std::map<std::string, double> &params, const char *key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

BlockEncoding controlled_encoding(const CMatrix &v) {
    const int n = qubit_count(v.rows());
    const Eigen::Index d = v.rows();
    CMatrix u = CMatrix::Zero(2 * d, 2 * d);
    u.topLeftCorner(d, d) = v;
    u.bottomRightCorner(d, d) = identity(d);
    return make_encoding(std::move(u), 1, n);
}

Sequence trotter_sequence(const TrotterSpec &spec) {
    if (spec.terms.empty() || spec.K < 1) {
        throw Error("trotter_sequence: need terms and K >= 1");
    }
    const Eigen::Index d = spec.terms[0].rows();
    for (const auto &h : spec.terms) {
        if (h.rows() != d || !is_hermitian(h)) {
            throw Error("trotter_sequence: terms must be Hermitian of equal size");
        }
        if (opnorm(h) > 1.0 + 1e-10) {
            throw Error("trotter_sequence: term norm exceeds 1");
        }
    }
    std::vector<CMatrix> steps;
    for (const auto &h : spec.terms) {
        steps.push_back(expi_hermitian(h, -spec.t / spec.K));
    }
    Sequence seq;
    for (int j = 0; j < spec.K; ++j) {
        for (const auto &s : steps) {
            seq.encodings.push_back(controlled_encoding(s));
        }
    }
    seq.profile = deviation_profile(seq.encodings);
    seq.c = static_cast<double>(seq.encodings.size()) * seq.profile.eta_max;
    return seq;
}

CMatrix dyson_propagator(const TimeDependentMatrix &a, double t0, double t1, int steps) {
    if (steps < 1) {
        throw Error("dyson_propagator: need at least one step");
    }
    const double h = (t1 - t0) / steps;
    CMatrix prop;
    for (int s = 0; s < steps; ++s) {
        CMatrix am = a(t0 + (s + 0.5) * h);
        CMatrix factor;
        if (is_anti_hermitian(am)) {
            // exp(A h) with A = -iG, G Hermitian.
            factor = expi_hermitian(Complex(0.0, 1.0) * am, -h);
        } else {
            factor = (am * h).exp();
        }
        prop = s == 0 ? factor : CMatrix(factor * prop);
    }
    return prop;
}

Sequence dyson_sequence(const DysonSpec &spec) {
    if (!spec.A_of_t || spec.K < 1 || spec.micro_steps < 32 || !(spec.T > 0.0) || !(spec.lambda > 0.0)) {
        throw Error("dyson_sequence: need A(t), K >= 1, micro_steps >= 32, T > 0, lambda > 0");
    }
    const int grid = 64 * spec.K;
    for (int g = 0; g <= grid; ++g) {
        double t = spec.T * g / grid;
        if (opnorm(spec.A_of_t(t)) > spec.lambda + 1e-8) {
            throw Error("dyson_sequence: ||A(t)|| exceeds lambda");
        }
    }
    const double dt = spec.T / spec.K;
    Sequence seq;
    for (int j = 0; j < spec.K; ++j) {
        CMatrix xi = dyson_propagator(spec.A_of_t, j * dt, (j + 1) * dt, spec.micro_steps);
        if (is_unitary(xi, Tolerance(1e-9))) {
            seq.encodings.push_back(controlled_encoding(xi));
        } else {
            double nrm = opnorm(xi);
            seq.encodings.push_back(normalize_selectors(dilate_general(nrm > 1.0 ? CMatrix(xi / nrm) : xi)));
        }
    }
    seq.profile = deviation_profile(seq.encodings);
    seq.c = static_cast<double>(seq.encodings.size()) * seq.profile.eta_max;
    return seq;
}

std::pair<TimeDependentMatrix, double> dyson_family(const std::string &name, const std::map<std::string, double> &params,
                                                    const CMatrix &h_in) {
    const Complex mi(0.0, -1.0);
    CMatrix h = h_in.size() == 0 ? pauli_x() : h_in;
    if (!is_hermitian(h)) {
        throw Error("dyson_family: generator must be Hermitian");
    }
    const double hn = opnorm(h);
    if (name == "constant") {
        double h0 = param(params, "h0", 1.0);
        CMatrix a = mi * h0 * h;
        return {[a](double) { return a; }, std::abs(h0) * hn};
    }
    if (name == "cosine") {
        double amp = param(params, "amp", 0.5);
        double omega = param(params, "omega", 1.0);
        return {[h, amp, omega, mi](double t) { return CMatrix(mi * amp * std::cos(omega * t) * h); }, std::abs(amp) * hn};
    }
    if (name == "two-pauli") {
        double bx = param(params, "bx", 0.5);
        double bz = param(params, "bz", 0.5);
        double omega = param(params, "omega", 1.0);
        CMatrix x = pauli_x(), z = pauli_z();
        return {[=](double t) { return CMatrix(mi * (bx * std::cos(omega * t) * x + bz * std::sin(omega * t) * z)); },
                std::max(std::abs(bx), std::abs(bz))};
    }
    throw Error("dyson_family: unknown family " + name);
}

}  // namespace bechain
