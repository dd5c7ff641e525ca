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


#ifndef BECHAIN_BLOCK_ENCODING_H
#define BECHAIN_BLOCK_ENCODING_H

#include <cstdint>
#include <string>
#include <vector>

#include "bechain/linalg.h"

namespace bechain {

/// A unitary on (a ancillas) ⊗ (n system qubits) whose selected corner, times
/// alpha, approximates the encoded matrix to within eps.
struct BlockEncoding {
    CMatrix U;
    int a = 0;
    int n = 0;
    double alpha = 1.0;
    double eps = 0.0;
    std::string bra_sel;
    std::string ket_sel;
    /// Uses of the underlying oracle encoding spent to build U.
    std::int64_t queries = 1;

    /// The raw corner <bra_sel| U |ket_sel>, without alpha.
    CMatrix block() const;
    Eigen::Index system_dim() const { return Eigen::Index{1} << n; }
};

/// Builds an encoding with selectors 0^a, checking shapes (not unitarity).
BlockEncoding make_encoding(CMatrix u, int a, int n, double alpha = 1.0, double eps = 0.0);

/// Throws unless shapes, selectors, alpha, eps and unitarity are consistent.
void validate_encoding(const BlockEncoding &be, const Tolerance &tol = {});

struct DeviationProfile {
    std::vector<double> etas;
    double eta_max = 0.0;
};

/// ||target - alpha <bra|U|ket>||
double verify_encoding(const BlockEncoding &be, const CMatrix &target);

/// U = Z⊗H + X⊗sqrt(I - H^2).
BlockEncoding dilate_hermitian(const CMatrix &h);

/// U = [[sqrt(I - A†A), A†], [A, -sqrt(I - AA†)]], read with bra "1", ket "0".
BlockEncoding dilate_general(const CMatrix &a);

BlockEncoding random_block_encoding(int n, int a, std::uint64_t seed);

/// exp(i theta G) with ||G|| = 1 and ||U - I|| drawn from [0.8 eta, eta].
BlockEncoding random_near_identity(int n, int a, double eta, std::uint64_t seed);

/// ||U - I||
double deviation(const BlockEncoding &be);
DeviationProfile deviation_profile(const std::vector<BlockEncoding> &encodings);

/// Conjugates by X on the selected ancillas so both selectors become 0^a.
BlockEncoding normalize_selectors(const BlockEncoding &be);

/// Extends the encoding to `a` ancillas and scrambles its action outside the
/// selected subspace with seeded random unitaries; the block is unchanged.
BlockEncoding scramble_ancillas(const BlockEncoding &be, int a, std::uint64_t seed);

/// sqrt(max(0, 1 - x^2)) with a small clamp; NaN well outside [-1, 1].
double sqrt_one_minus_sq(double x);

}  // namespace bechain

#endif
