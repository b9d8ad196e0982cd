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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwv/relations.hpp"
#include "qwv/sampling.hpp"
#include "qwv/wp.hpp"
#include "support.hpp"

using namespace qwv;
using namespace qwv::test;

TEST_CASE("swap permutes the two-qubit basis") {
  Matrix s = swap_operator(2);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 1;
  expected(1, 2) = expected(2, 1) = 1;
  CHECK(approx_equal(s, expected, 1e-15));
}

TEST_CASE("swap and symmetrizer algebra") {
  for (long d : {2, 3}) {
    Matrix s = swap_operator(d);
    Matrix sp = symmetrizer(d, +1);
    Matrix sm = symmetrizer(d, -1);
    CHECK(approx_equal(s * s, identity(d * d), 1e-12));
    CHECK(approx_equal(s * sp, sp, 1e-12));
    CHECK(approx_equal(sp * s, sp, 1e-12));
    CHECK(approx_equal(s * sm, -1.0 * sm, 1e-12));
    CHECK(approx_equal(sm * s, -1.0 * sm, 1e-12));
    CHECK(approx_equal(sp * sp, sp, 1e-12));
    CHECK(approx_equal(sm * sm, sm, 1e-12));
    CHECK(max_abs(sp * sm) <= 1e-12);
    CHECK(approx_equal(sp + sm, identity(d * d), 1e-15));
  }
}

TEST_CASE("computational-basis equality is the maximally entangled projector") {
  Matrix eq = equality_pred(identity(2));
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  CHECK(approx_equal(eq, outer(psi), 1e-15));
  CHECK_THROWS_WITH_AS(equality_pred(2.0 * identity(2)),
                       doctest::Contains("orthonormal"), Error);
}

TEST_CASE("equality predicate measures state overlap") {
  Rng rng(1);
  for (long d : {2, 3}) {
    Matrix eq = equality_pred(identity(d));
    for (int trial = 0; trial < 50; ++trial) {
      // Exact identity on arbitrary complex states: the transpose form.
      Matrix rho = random_density(d, rng);
      Matrix sigma = random_density(d, rng);
      double got = expectation(eq, kron(rho, sigma));
      double transposed = (rho.transpose() * sigma).trace().real() / d;
      CHECK(std::abs(got - transposed) <= 1e-10);
      // On real-entried states this is the Hilbert-Schmidt overlap.
      Matrix rho_r = random_density_real(d, rng);
      Matrix sigma_r = random_density_real(d, rng);
      double got_r = expectation(eq, kron(rho_r, sigma_r));
      double overlap = (dagger(rho_r) * sigma_r).trace().real() / d;
      CHECK(std::abs(got_r - overlap) <= 1e-10);
    }
  }
}

TEST_CASE("equality transforms covariantly under basis rotations") {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    long d = 2 + trial % 2;
    Matrix u = random_unitary(d, rng);
    Matrix lhs = equality_pred(u);
    Matrix uu = kron(u, u);
    Matrix rhs = uu * equality_pred(identity(d)) * uu.adjoint();
    CHECK(approx_equal(lhs, rhs, 1e-11));
  }
}

TEST_CASE("compositions of identity relations") {
  for (long d2 : {2, 3}) {
    long d1 = 2, d3 = 2;
    Matrix i12 = identity(d1 * d2);
    Matrix i23 = identity(d2 * d3);
    CHECK(approx_equal(circle_comp(i12, i23, d1, d2, d3),
                       identity(d1 * d3), 1e-12));
    CHECK(approx_equal(bullet_comp(i12, i23, d1, d2, d3),
                       identity(d1 * d3), 1e-12));
    double tr_sym = d2 * (d2 + 1) / 2.0;
    CHECK(approx_equal(diamond_comp(i12, i23, d1, d2, d3, +1),
                       tr_sym * identity(d1 * d3), 1e-10));
  }
}

TEST_CASE("diamond trace factor matches the brute-force symmetrizer trace") {
  for (long d2 : {2, 3}) {
    double direct = trace_of(symmetrizer(d2, +1)).real();
    CHECK(direct == doctest::Approx(d2 * (d2 + 1) / 2.0));
    double anti = trace_of(symmetrizer(d2, -1)).real();
    CHECK(anti == doctest::Approx(d2 * (d2 - 1) / 2.0));
  }
}

TEST_CASE("circle and bullet compositions of predicates stay well-behaved") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    long d1 = 2, d2 = 2 + trial % 2, d3 = 2;
    Matrix a = random_predicate(d1 * d2, rng);
    Matrix b = random_predicate(d2 * d3, rng);
    Matrix circ = circle_comp(a, b, d1, d2, d3);
    Matrix bull = bullet_comp(a, b, d1, d2, d3);
    CHECK(is_hermitian(circ, 1e-10));
    CHECK(is_hermitian(bull, 1e-10));
    // Circle compositions of predicates stay within the effect bounds.
    CHECK(min_eigenvalue(circ) >= -1e-10);
    CHECK(min_eigenvalue(identity(d1 * d3) - circ) >= -1e-10);
  }
}

TEST_CASE("composition dimension mismatches raise") {
  CHECK_THROWS_AS(circle_comp(identity(4), identity(9), 2, 2, 3), Error);
}

TEST_CASE("symmetrizers are invariant under doubled unitaries") {
  // {S+} p := U[p]; q := U[q] {S+} and the antisymmetric analogue.
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    long d = 2 + trial % 2;
    Declarations decls;
    decls.vars = VarSpace({"p", "q"}, {d, d});
    decls.gates["U"] = random_unitary(d, rng);
    StmtPtr prog = make_seq(make_unitary("U", {"p"}),
                            make_unitary("U", {"q"}));
    for (int sign : {+1, -1}) {
      Matrix s = symmetrizer(d, sign);
      CorrectnessFormula f{s, prog, s, Mode::Total};
      CHECK(check_triple(decls, f, 1e-9).holds);
    }
  }
}

TEST_CASE("equality relations transport along doubled unitaries") {
  // {=_{U^dag(B)}} p := U[p]; q := U[q] {=_B}.
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    long d = 2 + trial % 2;
    Declarations decls;
    decls.vars = VarSpace({"p", "q"}, {d, d});
    Matrix u = random_unitary(d, rng);
    decls.gates["U"] = u;
    StmtPtr prog = make_seq(make_unitary("U", {"p"}),
                            make_unitary("U", {"q"}));
    Matrix pre = equality_pred(u.adjoint());
    Matrix post = equality_pred(identity(d));
    CorrectnessFormula f{pre, prog, post, Mode::Total};
    CHECK(check_triple(decls, f, 1e-9).holds);
  }
}
