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


#ifndef BECHAIN_QSP_H
#define BECHAIN_QSP_H

#include <string>
#include <vector>

#include "bechain/block_encoding.h"

namespace bechain {

enum class Parity { even, odd, none };

const char *parity_name(Parity p);

/// sum_k coeffs[k] T_k(x)
struct ChebPoly {
    std::vector<double> coeffs;
    Parity parity = Parity::none;
    int degree = 0;
    /// Sup-error against the approximation target, when one exists.
    double sup_error = 0.0;

    double operator()(double x) const;
};

/// Chebyshev polynomial T_d as a ChebPoly.
ChebPoly chebyshev_t(int d);

/// sup |p(x)| over a dense grid of [-1, 1].
double sup_norm(const ChebPoly &p, int points = 10001);

/// Even polynomial within eta of sqrt(x)/2 on [delta, 1], bounded by 1 on [-1, 1].
ChebPoly approx_half_sqrt(double delta, double eta);

/// Degree cap of approx_half_sqrt.
inline constexpr int kMaxApproxDegree = 512;

/// Phases for U(x) = e^{i phi_0 Z} prod_j W(x) e^{i phi_j Z} with
/// W(x) = [[x, i sqrt(1-x^2)], [i sqrt(1-x^2), x]]. The target polynomial is
/// Re <0|U(x)|0>.
struct PhaseFactors {
    std::vector<double> phases;
    std::string convention = "Wx";
    Parity parity = Parity::none;
    /// max |Re <0|U(x)|0> - p(x)| over 100 Chebyshev nodes.
    double residual = 0.0;

    int degree() const { return static_cast<int>(phases.size()) - 1; }
    std::string to_json() const;
    static PhaseFactors from_json(const std::string &text);
};

/// All-zero phases of degree d; <0|U(x)|0> = T_d(x).
PhaseFactors zero_phases(int d);

PhaseFactors solve_phases(const ChebPoly &p);

CMatrix qsp_eval(const PhaseFactors &phi, double x);

/// Re <0|qsp_eval(phi, x)|0>
double qsp_poly(const PhaseFactors &phi, double x);

/// Encoding (one extra ancilla) of p applied to the singular values of the
/// block, where p is the real polynomial of phi. For a Hermitian block this is
/// p(block). The result records one query per use of be.U or be.U†.
BlockEncoding qsvt_apply(const PhaseFactors &phi, const BlockEncoding &be);

/// Full unitary of the alternating phase/U/U† sequence for phi, without the
/// real-part combination. Its corner is the complex QSP polynomial of the
/// singular values. `uses` receives the number of U and U† factors.
CMatrix qsvt_sequence(const PhaseFactors &phi, const BlockEncoding &be, int *uses = nullptr);

/// Encoding of T_d applied to the singular values, using d queries and no
/// additional ancillas.
BlockEncoding qsvt_chebyshev(const BlockEncoding &be, int d);

}  // namespace bechain

#endif
