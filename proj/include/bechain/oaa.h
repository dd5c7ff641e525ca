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


#ifndef BECHAIN_OAA_H
#define BECHAIN_OAA_H

#include <optional>

#include "bechain/mcm.h"

namespace bechain {

struct AAProblem {
    CMatrix U0;
    /// Leading qubits whose all-zero state marks the good subspace.
    int sig = 1;
    /// Grover iterations; empty selects round(pi / (4 asin(alpha)) - 1/2).
    std::optional<int> k;
};

struct BoostResult {
    CVector state;
    double probability = 0.0;
    double alpha_before = 0.0;
    int k = 0;
};

/// (I - 2|0^sig><0^sig|) ⊗ I on `total` qubits.
CMatrix reflect_signal(int sig, int total);

/// U0 (2|0...0><0...0| - I) U0†
CMatrix reflect_initial(const CMatrix &U0);

int auto_iterations(double alpha);

BoostResult grover_boost(const AAProblem &prob);

struct OAAReport {
    CVector state;
    double fidelity = 0.0;
    double alpha_before = 0.0;
    int k = 0;
    double alpha_after = 0.0;
};

/// Boosts the good (all-zero signal) branch of the circuit applied to
/// |0^{m+a}>|psi> and compares the post-selected system state with target|psi>.
OAAReport oaa_ambe(const MCMCircuit &circ, const CMatrix &target, const CVector &input_state);

}  // namespace bechain

#endif
