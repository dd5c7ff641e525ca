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


#ifndef BECHAIN_LCU_H
#define BECHAIN_LCU_H

#include <vector>

#include "bechain/block_encoding.h"

namespace bechain {

struct LCUSpec {
    std::vector<Complex> coeffs;
    std::vector<CMatrix> terms;
    /// Number of PREP qubits; negative means the minimum that fits the terms.
    int prep_dim = -1;
};

/// PREP · SELECT · PREP† encoding of sum_j c_j T_j with alpha = ||c||_1.
BlockEncoding lcu_build(const LCUSpec &spec);

/// Two-term combination (L† ⊗ I) SELECT (R ⊗ I) where L|0> = (cos l, sin l) and
/// R|0> = (cos r, sin r). The block is cos(l)cos(r) <T0> + sin(l)sin(r) <T1>.
/// Both terms must act on the same (a, n) registers; one ancilla is prepended.
CMatrix two_term_lcu(const CMatrix &t0, const CMatrix &t1, double left_angle, double right_angle);

/// Angles (l, r) with cos(l)cos(r) = p and sin(l)sin(r) = q.
std::pair<double, double> split_angles(double p, double q);

/// V† (2Π - I) V for Π = |0^a><0^a| ⊗ I, with block 2A†A - I.
CMatrix reflected_square(const CMatrix &v, int a, int n);

/// (1, a+1, 0)-encoding of (I - H^2)/2 using V_H and V_H† once each.
BlockEncoding lcu_i_minus_h2(const BlockEncoding &vh);

/// Encoding of sin(pi/14) (Z⊗H + X⊗sqrt(I - H^2)) from V_H and an encoding of
/// sqrt(I - H^2)/sqrt(8). The extra system qubit is the most significant system
/// qubit of the result.
BlockEncoding lcu_w_uh(const BlockEncoding &vh, const BlockEncoding &vsqrt);

/// Identity ancillas prepended so that the encoding has `a` ancillas.
BlockEncoding pad_ancillas(const BlockEncoding &be, int a);

}  // namespace bechain

#endif
