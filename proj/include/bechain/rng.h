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


#ifndef BECHAIN_RNG_H
#define BECHAIN_RNG_H

#include <cstdint>
#include <random>

#include "bechain/linalg.h"

namespace bechain {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `trial` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Portable random source. The standard distributions are implementation
/// defined, so uniforms and normals are derived from raw 64-bit draws here.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();
    double uniform(double lo, double hi);
    double normal();
    Complex complex_normal();
    std::uint64_t next();

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-random unitary: complex Gaussian, QR, and R-diagonal phase fix.
CMatrix random_unitary(Eigen::Index dim, Rng &rng);

/// Random Hermitian matrix rescaled to operator norm `norm`.
CMatrix random_hermitian(Eigen::Index dim, double norm, Rng &rng);

/// Complex Gaussian matrix rescaled to operator norm `norm`.
CMatrix random_matrix(Eigen::Index dim, double norm, Rng &rng);

}  // namespace bechain

#endif
