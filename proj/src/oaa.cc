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


#include "bechain/oaa.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bechain {

CMatrix reflect_signal(int sig, int total) {
    if (sig < 1 || sig > total || total > 14) {
        throw Error("reflect_signal: need 1 <= sig <= total");
    }
    Eigen::VectorXd d = -zero_reflection_diagonal(sig, total);
    return d.cast<Complex>().asDiagonal();
}

CMatrix reflect_initial(const CMatrix &U0) {
    if (!is_unitary(U0)) {
        throw Error("reflect_initial: U0 is not unitary");
    }
    CVector psi = U0.col(0);
    return 2.0 * psi * psi.adjoint() - identity(U0.rows());
}

int auto_iterations(double alpha) {
    if (alpha < 1e-12) {
        throw Error("no good component");
    }
    double theta = std::asin(std::min(alpha, 1.0));
    return std::max(0, static_cast<int>(std::lround(std::numbers::pi / (4.0 * theta) - 0.5)));
}

BoostResult grover_boost(const AAProblem &prob) {
    const int total = qubit_count(prob.U0.rows());
    if (prob.sig < 1 || prob.sig >= total + 1) {
        throw Error("grover_boost: bad signal register size");
    }
    if (!is_unitary(prob.U0)) {
        throw Error("grover_boost: U0 is not unitary");
    }
    const Eigen::Index good = Eigen::Index{1} << (total - prob.sig);
    CVector psi0 = prob.U0.col(0);
    BoostResult res;
    res.alpha_before = psi0.head(good).norm();
    if (res.alpha_before < 1e-12) {
        throw Error("no good component");
    }
    res.k = prob.k ? *prob.k : auto_iterations(res.alpha_before);
    if (res.k < 0) {
        throw Error("grover_boost: negative iteration count");
    }
    CVector v = psi0;
    for (int it = 0; it < res.k; ++it) {
        v.head(good) *= -1.0;
        Complex ov = psi0.dot(v);
        v = 2.0 * ov * psi0 - v;
    }
    res.probability = v.head(good).squaredNorm();
    res.state = std::move(v);
    return res;
}

OAAReport oaa_ambe(const MCMCircuit &circ, const CMatrix &target, const CVector &input_state) {
    CMatrix u = mcm_unitary(circ);
    const int n = circ.encodings[0].n;
    const int sig = circ.m + circ.encodings[0].a;
    const Eigen::Index sys = Eigen::Index{1} << n;
    if (input_state.size() != sys || target.rows() != sys || target.cols() != sys) {
        throw Error("oaa_ambe: dimension mismatch");
    }
    CVector want = target * input_state;
    if (want.norm() < 1e-12) {
        throw Error("oaa_ambe: target annihilates the input state");
    }
    want.normalize();
    CMatrix prep = kron(identity(Eigen::Index{1} << sig), complete_unitary(input_state));
    AAProblem prob{u * prep, sig, std::nullopt};
    BoostResult boost = grover_boost(prob);
    CVector out = boost.state.head(sys);
    OAAReport rep;
    rep.alpha_before = boost.alpha_before;
    rep.k = boost.k;
    rep.alpha_after = std::sqrt(boost.probability);
    rep.state = out / out.norm();
    rep.fidelity = std::norm(want.dot(rep.state));
    return rep;
}

}  // namespace bechain
