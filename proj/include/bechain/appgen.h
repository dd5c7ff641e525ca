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


#ifndef BECHAIN_APPGEN_H
#define BECHAIN_APPGEN_H

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bechain/block_encoding.h"

namespace bechain {

struct TrotterSpec {
    std::vector<CMatrix> terms;
    double t = 1.0;
    int K = 1;
};

using TimeDependentMatrix = std::function<CMatrix(double)>;

struct DysonSpec {
    TimeDependentMatrix A_of_t;
    double lambda = 1.0;
    double T = 1.0;
    int K = 1;
    int micro_steps = 256;
};

struct Sequence {
    std::vector<BlockEncoding> encodings;
    DeviationProfile profile;
    /// K_total * eta_max, the constant in eta_max = c / K_total.
    double c = 0.0;
};

/// |0><0| ⊗ V + |1><1| ⊗ I
BlockEncoding controlled_encoding(const CMatrix &v);

/// First-order product, K steps, one encoding per term per step.
Sequence trotter_sequence(const TrotterSpec &spec);

/// One encoding per interval from micro-stepped midpoint exponentials.
Sequence dyson_sequence(const DysonSpec &spec);

/// Propagator over [t0, t1] with `steps` midpoint exponential factors.
CMatrix dyson_propagator(const TimeDependentMatrix &a, double t0, double t1, int steps);

/// Named families of A(t):
///   "constant":  -i h0 H                       (params: h0)
///   "cosine":    -i amp cos(omega t) H         (params: amp, omega)
///   "two-pauli": -i (bx cos(omega t) X + bz sin(omega t) Z) on one qubit
/// H defaults to Pauli X when `h` is empty. Returns A and its bound lambda.
std::pair<TimeDependentMatrix, double> dyson_family(const std::string &name, const std::map<std::string, double> &params,
                                                    const CMatrix &h = CMatrix());

}  // namespace bechain

#endif
