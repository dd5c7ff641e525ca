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


#ifndef BECHAIN_UNCOMPUTE_H
#define BECHAIN_UNCOMPUTE_H

#include <cstdint>
#include <string>
#include <utility>

#include "bechain/block_encoding.h"
#include "bechain/qsp.h"

namespace bechain {

struct UncomputeReport {
    double eps_requested = 0.0;
    /// Distance of the contracted single-ancilla operator from the exact dilation.
    double eps_measured = 0.0;
    double delta = 0.0;
    std::int64_t queries_VH = 0;
    int ancillae_peak = 0;
    int ancillae_final = 1;
    /// ||target - alpha <sel|U|sel>|| of the returned encoding.
    double block_error = 0.0;
    /// Distance of the amplified-in encoding's corner from sin(pi/14) U_H.
    double lcu_error = 0.0;
    int qsvt_degree = 0;
};

/// Raised when the assembled encoding misses the requested accuracy.
class AccuracyError : public Error {
   public:
    AccuracyError(const std::string &what, double eps_measured) : Error(what), eps_measured(eps_measured) {}
    double eps_measured;
};

struct UncomputeResult {
    BlockEncoding encoding;
    UncomputeReport report;
};

/// Error target handed to the square-root approximation for a requested eps.
double sqrt_budget(double eps);

/// Left edge of the spectrum of (I - H^2)/2 when ||H|| <= 1 - delta.
double shifted_gap(double delta);

/// Returns an encoding whose ancillas are all selected on 0. All but the last
/// ancilla can be discarded by post-selection; see contract_ancillas.
UncomputeResult uncompute_hermitian(const BlockEncoding &vh, double delta, double eps);

/// As above for a general square block A; the result has bra selector 0...01 and
/// ket selector 0...00.
UncomputeResult uncompute_general(const BlockEncoding &va, double delta, double eps);

/// The (keep + n)-qubit operator obtained by projecting all but the last `keep`
/// ancillas onto 0.
CMatrix contract_ancillas(const BlockEncoding &be, int keep = 1);

/// Recovers e^{i theta X} from e^{i phi Z/2} e^{i theta X} e^{-i phi Z/2}.
/// Only |sin theta| is recoverable; the result uses sin theta >= 0.
CMatrix phase_correct_twisted(const CMatrix &twisted, double delta, double eps);

}  // namespace bechain

#endif
