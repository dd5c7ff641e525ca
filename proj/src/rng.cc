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


#include "bechain/rng.h"

#include <cmath>
#include <numbers>

namespace bechain {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return splitmix64(seed + trial); }

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

Complex Rng::complex_normal() {
    double re = normal();
    double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
}

CMatrix random_unitary(Eigen::Index dim, Rng &rng) {
    CMatrix z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            z(i, j) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
    const CMatrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double ad = std::abs(d);
        if (ad > 0) {
            q.col(j) *= d / ad;
        }
    }
    return q;
}

CMatrix random_hermitian(Eigen::Index dim, double norm, Rng &rng) {
    CMatrix z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            z(i, j) = rng.complex_normal();
        }
    }
    CMatrix h = (z + z.adjoint()) * 0.5;
    double s = opnorm(h);
    if (s > 0) {
        h *= norm / s;
    }
    return h;
}

CMatrix random_matrix(Eigen::Index dim, double norm, Rng &rng) {
    CMatrix z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            z(i, j) = rng.complex_normal();
        }
    }
    double s = opnorm(z);
    if (s > 0) {
        z *= norm / s;
    }
    return z;
}

}  // namespace bechain
