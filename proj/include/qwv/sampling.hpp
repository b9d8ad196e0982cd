// Copyright 2026 The qwv developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <random>

#include "qwv/operators.hpp"

namespace qwv {

using Rng = std::mt19937_64;

/** Matrix with independent standard complex Gaussian entries. */
Matrix ginibre(long rows, long cols, Rng& rng);

/** Random density operator G G^dag / tr(G G^dag) (Ginibre ensemble). */
Matrix random_density(long dim, Rng& rng);

/** Random density operator with real matrix elements. */
Matrix random_density_real(long dim, Rng& rng);

/** Random pure state as a unit column vector. */
Vector random_ket(long dim, Rng& rng);

/** Haar-like random unitary via QR of a Ginibre matrix. */
Matrix random_unitary(long dim, Rng& rng);

/** Random Hermitian matrix with Gaussian entries. */
Matrix random_hermitian(long dim, Rng& rng);

/** Random predicate: eigenvalues rescaled into [0, 1]. */
Matrix random_predicate(long dim, Rng& rng);

/**
 * Random channel with `kraus_count` Kraus operators; trace-preserving
 * when requested, otherwise scaled by a random factor in (0, 1].
 */
Superoperator random_channel(long dim, long kraus_count, bool trace_preserving,
                             Rng& rng);

/**
 * Random complete measurement with `outcomes` operators
 * (sum M^dag M = I by construction).
 */
std::vector<Matrix> random_measurement(long dim, long outcomes, Rng& rng);

}  // namespace qwv
