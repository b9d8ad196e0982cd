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

#include "qwv/linalg.hpp"

namespace qwv {

// Quantum relations: predicates over tensor products of two or three
// spaces, plus constructors for the standard relational predicates and
// their compositions.

/** SWAP on H (x) H: |phi, psi> -> |psi, phi>, dimension d^2. */
Matrix swap_operator(long d);

/** Symmetriser (sign=+1) or anti-symmetriser (sign=-1): (I +- SWAP)/2. */
Matrix symmetrizer(long d, int sign);

/**
 * Equality relation for an orthonormal basis B, given by the columns of
 * `basis`: the rank-1 projector onto (1/sqrt(d)) sum_i |b_i b_i>.
 *
 * Its overlap functional is tr(=_B (rho (x) sigma)) = tr(rho^T sigma)/d
 * with the transpose taken in B; for states whose matrix elements in B
 * are real this is the Hilbert-Schmidt similarity tr(rho^dag sigma)/d.
 */
Matrix equality_pred(const Matrix& basis, double ortho_tol = 1e-9);

/**
 * Circle composition of A on H1 (x) H2 with B on H2 (x) H3:
 * (1/d2) sum_i <ii| A (x) B |ii>, contracting the two middle factors.
 */
Matrix circle_comp(const Matrix& a, const Matrix& b, long d1, long d2, long d3);

/**
 * Bullet composition: <Psi| A (x) B |Psi> with the normalised maximally
 * entangled |Psi> on the two middle factors.
 */
Matrix bullet_comp(const Matrix& a, const Matrix& b, long d1, long d2, long d3);

/**
 * Diamond composition: tr over the two middle factors of
 * S_v (A (x) B) S_v, with v in {+1, -1}. The result is Hermitian but can
 * exceed the identity; predicate bounds are the caller's concern.
 */
Matrix diamond_comp(const Matrix& a, const Matrix& b, long d1, long d2, long d3,
                    int sign);

}  // namespace qwv
