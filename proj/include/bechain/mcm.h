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


#ifndef BECHAIN_MCM_H
#define BECHAIN_MCM_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bechain/block_encoding.h"

namespace bechain {

/// (Q ⊗ U_K) C(V_{K-1}) (I ⊗ U_{K-1}) ... C(V_1) (I ⊗ U_1) on [m][a][n], where
/// C(V) = I ⊗ Π_0 + V ⊗ Π_⊥ acts on the measurement and ancilla registers.
struct MCMCircuit {
    std::vector<BlockEncoding> encodings;
    int m = 0;
    std::vector<CMatrix> V;
    CMatrix Q;

    int K() const { return static_cast<int>(encodings.size()); }
};

/// (W_{K-1} ⊗ U_K) ctrl(G_{K-1}, B_{K-1}) (W_{K-2} ⊗ U_{K-1}) ... ctrl(G_1, B_1) (W_0 ⊗ U_1)
/// with ctrl(G, B) = G ⊗ Π_0 + B ⊗ Π_⊥.
struct MCMRaw {
    std::vector<BlockEncoding> encodings;
    int m = 0;
    std::vector<CMatrix> W;
    std::vector<CMatrix> G;
    std::vector<CMatrix> B;
};

struct ErrorReport {
    int K = 0;
    int m = 0;
    std::optional<int> p;
    std::optional<double> c;
    double eta_max = 0.0;
    double e_measured = 0.0;
    std::optional<double> e_bound;
    std::uint64_t seed = 0;

    bool pass() const { return !e_bound || e_measured <= *e_bound; }
};

/// Checks register sizes and normalizes selectors; throws on mismatch.
void validate_circuit(const MCMCircuit &circ);

CMatrix mcm_unitary(const MCMCircuit &circ);
MCMCircuit mcm_from_raw(const MCMRaw &raw);

/// <0^{m+a}| mcm_unitary |0^{m+a}>
CMatrix embe_block(const MCMCircuit &circ);

/// A_K ... A_1
CMatrix block_product(const std::vector<BlockEncoding> &encodings);

MCMCircuit gadget_naive(const std::vector<BlockEncoding> &encodings);
MCMCircuit gadget_lw19(const std::vector<BlockEncoding> &encodings);
MCMCircuit gadget_pmacg(const std::vector<BlockEncoding> &encodings, int p);

/// |x> -> |x + 1 mod 2^p>
CMatrix add_unitary(int p);

int ceil_log2(int k);

/// S_x for a bad-outcome pattern x of length K-1. The leftmost character is the
/// outcome after U_{K-1} and the rightmost the outcome after U_1, so the string
/// reads in the same order as the operator product; '1' selects Π_⊥.
CMatrix bad_sequence_oracle(const std::vector<BlockEncoding> &encodings, const std::string &x);

/// ||target - embe_block(circ)||
double gadget_error_exact(const MCMCircuit &circ, const CMatrix &target);

/// Sum of S_x over all nonzero x with |x| divisible by 2^p, by enumerating the
/// qualifying patterns. Limited to K <= 16.
CMatrix bad_sum_enumerate(const std::vector<BlockEncoding> &encodings, int p);

/// The same sum computed by propagating one partial product per Hamming weight.
CMatrix bad_sum_by_weight(const std::vector<BlockEncoding> &encodings, int p);

/// 2 e^c (e c^2 / (K 2^p))^(2^p); throws "bound regime not satisfied" when
/// c^2 e (K-1) / (K 2^p) >= 1/2.
double macg_bound(int K, int p, double c);

/// The same closed form without the regime check.
double macg_bound_formula(int K, int p, double c);

bool macg_regime_ok(int K, int p, double c);

/// Smallest K >= 1 with K >= (e c^2 / 2^p) (2/eps)^(1/2^p).
int min_k_for_eps(double eps, int p, double c);

/// (||S_x||, eta_max^(2|x|) (1 + eta_max)^K)
std::pair<double, double> seqnorm_bound_check(const std::vector<BlockEncoding> &encodings, const std::string &x);

/// eta_max^t (1 + eta_max)^(K - t), where t counts the switches between Π_0 and
/// Π_⊥ along x padded with Π_0 at both ends. This bounds ||S_x|| for every x.
double seqnorm_run_bound(const std::vector<BlockEncoding> &encodings, const std::string &x);

struct ProbeResult {
    double best = 0.0;
    std::vector<double> per_restart;
};

/// Minimizes the gadget error over all (V, Q) in SU(2^m) with m measurement
/// ancillas. The best residual is evidence about, not proof of, infeasibility.
ProbeResult lower_bound_probe_detailed(const std::vector<BlockEncoding> &encodings, int m, int restarts,
                                       std::uint64_t seed);
double lower_bound_probe(const std::vector<BlockEncoding> &encodings, int m, int restarts, std::uint64_t seed);

/// exp(i sum_k theta_k P_k) over the 4^m - 1 non-identity Pauli strings.
CMatrix su_from_params(const double *theta, int m);

}  // namespace bechain

#endif
