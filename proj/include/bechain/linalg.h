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

#ifndef BECHAIN_LINALG_H
#define BECHAIN_LINALG_H

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bechain {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Raised for contract violations anywhere in the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Tolerance {
    double atol = 1e-10;
    double rtol = 0.0;

    Tolerance() = default;
    Tolerance(double atol_, double rtol_ = 0.0);
};

/// Largest singular value.
double opnorm(const CMatrix &m);

/// True iff both M†M and MM† are within tol.atol of the identity.
bool is_unitary(const CMatrix &m, const Tolerance &tol = {});
bool is_hermitian(const CMatrix &m, const Tolerance &tol = {});

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// A real function of a real argument. Returning NaN marks the point as
/// outside the function's domain.
using RealFunction = std::function<double(double)>;

/// f(H) via eigendecomposition of the (symmetrized) Hermitian matrix H.
CMatrix herm_funcmat(const CMatrix &h, const RealFunction &f, const Tolerance &tol = {});

/// Bitstrings are written most-significant qubit first, e.g. "01".
std::size_t bitstring_index(std::string_view bits);
std::string index_bitstring(std::size_t index, int width);

/// The 2^n x 2^n block (<bra| (x) I_n) U (|ket> (x) I_n). Ancilla qubits are the
/// most significant tensor factors.
CMatrix mat_embed_block(const CMatrix &u, std::string_view bra, std::string_view ket, int a, int n);

/// log2 of a power-of-two dimension; throws otherwise.
int qubit_count(Eigen::Index dim);

CMatrix identity(Eigen::Index dim);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix hadamard();
/// diag(1, i)
CMatrix phase_s();

/// exp(i * theta * G) for Hermitian G.
CMatrix expi_hermitian(const CMatrix &g, double theta);

/// Reorders tensor factors. new_order[k] is the original position of the qubit
/// that ends up at position k (position 0 is the most significant qubit).
CMatrix permute_qubits(const CMatrix &m, std::span<const int> new_order);

/// A unitary whose first column is the normalized vector v.
CMatrix complete_unitary(const CVector &v);

/// Nearest unitary in operator norm (polar factor).
CMatrix polar_unitary(const CMatrix &m);

/// Diagonal of (2|0^k><0^k| - I) ⊗ I on a register of `total` qubits, where the
/// projector acts on the leading k qubits.
Eigen::VectorXd zero_reflection_diagonal(int k, int total);

}  // namespace bechain

#endif
