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

#include "qwv/ast.hpp"
#include "qwv/sampling.hpp"
#include "support.hpp"

using namespace qwv;
using namespace qwv::test;

namespace {

Superoperator damping(double gamma) {
  auto [e0, e1] = damping_kraus(gamma);
  return Superoperator::from_kraus({e0, e1});
}

}  // namespace

TEST_CASE("amplitude damping on |-><-| matches the expected dephased operator") {
  for (double gamma : {0.0, 0.25, 0.5, 1.0}) {
    Matrix rho = outer(minus_state());
    Matrix out = damping(gamma).apply(rho);
    Matrix expected(2, 2);
    const double s = std::sqrt(1.0 - gamma);
    expected << 0.5 * (1.0 + gamma), -0.5 * s, -0.5 * s, 0.5 * (1.0 - gamma);
    CHECK(approx_equal(out, expected, 1e-12));
  }
}

TEST_CASE("amplitude damping decays the excited state") {
  for (double gamma : {0.0, 0.3, 1.0}) {
    Matrix rho = outer(basis_ket(2, 1));
    Matrix out = damping(gamma).apply(rho);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = gamma;
    expected(1, 1) = 1.0 - gamma;
    CHECK(approx_equal(out, expected, 1e-12));
  }
}

TEST_CASE("identity channel acts trivially") {
  Rng rng(3);
  Matrix rho = random_density(4, rng);
  CHECK(approx_equal(Superoperator::identity(4).apply(rho), rho, 1e-15));
  CHECK(Superoperator::identity(4).trace_preserving());
}

TEST_CASE("non trace-non-increasing kraus lists are rejected") {
  Matrix big = 1.2 * identity(2);
  CHECK_THROWS_WITH_AS(Superoperator::from_kraus({big}),
                       doctest::Contains("trace-non-increasing"), Error);
  // The original uncorrected damping E1 with a 1 in the corner violates
  // the Kraus condition; the constructor must reject it.
  Matrix e0(2, 2), e1(2, 2);
  double gamma = 0.5;
  e0 << 1, 0, 0, std::sqrt(1 - gamma);
  e1 << 1, std::sqrt(gamma), 0, 0;
  CHECK_THROWS_AS(Superoperator::from_kraus({e0, e1}), Error);
}

TEST_CASE("dual of the hadamard channel maps |1><1| to |-><-|") {
  Superoperator h = Superoperator::unitary(builtin_gates().at("H"));
  Matrix out = dual_apply(h, outer(basis_ket(2, 1)));
  CHECK(approx_equal(out, outer(minus_state()), 1e-12));
}

TEST_CASE("dual of identity leaves observables unchanged") {
  Rng rng(5);
  Matrix a = random_hermitian(3, rng);
  CHECK(approx_equal(dual_apply(Superoperator::identity(3), a), a, 1e-15));
}

TEST_CASE("dual of damping(1/2) applied to I") {
  auto [e0, e1] = damping_kraus(0.5);
  // Direct 2x2 computation: E0^dag E0 + E1^dag E1 = I for the corrected
  // Kraus pair.
  Matrix direct = dagger(e0) * e0 + dagger(e1) * e1;
  CHECK(approx_equal(direct, identity(2), 1e-12));
  CHECK(approx_equal(damping(0.5).dual_of_identity(), identity(2), 1e-12));
  CHECK(damping(0.5).trace_preserving());
}

TEST_CASE("duality identity tr(A E(rho)) = tr(E*(A) rho)") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    long d = 2 + trial % 7;  // dims 2..8
    Superoperator e = random_channel(d, 1 + trial % 3, trial % 2 == 0, rng);
    Matrix a = random_hermitian(d, rng);
    Matrix rho = random_density(d, rng);
    double lhs = expectation(a, e.apply(rho));
    double rhs = expectation(e.dual_apply(a), rho);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("channels never increase the trace") {
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    long d = 2 + trial % 4;
    bool tp = trial % 2 == 0;
    Superoperator e = random_channel(d, 2, tp, rng);
    Matrix rho = random_density(d, rng);
    double before = trace_of(rho).real();
    double after = trace_of(e.apply(rho)).real();
    CHECK(after <= before + 1e-9);
    if (tp) CHECK(after == doctest::Approx(before).epsilon(1e-10));
    CHECK(e.trace_preserving() == tp);
  }
}

TEST_CASE("compose with identity preserves the action") {
  Rng rng(11);
  Superoperator e = random_channel(3, 2, true, rng);
  Superoperator id = Superoperator::identity(3);
  CHECK(same_action(compose(id, e), e, 1e-12));
  CHECK(same_action(compose(e, id), e, 1e-12));
}

TEST_CASE("composing the hadamard channel with itself gives the identity") {
  Superoperator h = Superoperator::unitary(builtin_gates().at("H"));
  CHECK(same_action(compose(h, h), Superoperator::identity(2), 1e-12));
}

TEST_CASE("orthogonal measurement branches compose to zero") {
  Matrix m0 = outer(basis_ket(2, 0));
  Matrix m1 = outer(basis_ket(2, 1));
  Superoperator both = compose(Superoperator::branch(m0),
                               Superoperator::branch(m1));
  Rng rng(13);
  Matrix rho = random_density(2, rng);
  CHECK(trace_of(both.apply(rho)).real() == doctest::Approx(0.0));
}

TEST_CASE("compose rejects mismatched dimensions") {
  CHECK_THROWS_AS(
      compose(Superoperator::identity(2), Superoperator::identity(3)), Error);
}

TEST_CASE("expectation values") {
  Rng rng(15);
  Matrix rho = random_density(3, rng);
  CHECK(expectation(identity(3), rho) == doctest::Approx(1.0));
  // Born rule on a symmetric state.
  CHECK(expectation(outer(basis_ket(2, 0)), outer(plus_state())) ==
        doctest::Approx(0.5));
  // |<000|Phi>|^2 = 1/4.
  CHECK(expectation(outer(phi_even_parity()), outer(basis3(0, 0, 0))) ==
        doctest::Approx(0.25));
}

TEST_CASE("expectation rejects corrupted inputs") {
  Matrix offdiag(2, 2);
  offdiag << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  Matrix corrupt(2, 2);
  corrupt << Complex(0, 0), Complex(0, 0), Complex(0, 1), Complex(0, 0);
  CHECK_THROWS_WITH_AS(expectation(offdiag, corrupt),
                       doctest::Contains("imaginary"), Error);
}

TEST_CASE("predicate validation enforces the effect bounds") {
  VarSpace space({"q"}, {2});
  CHECK_NOTHROW(make_predicate(0.5 * identity(2), space));
  CHECK_THROWS_AS(make_predicate(1.5 * identity(2), space), Error);
  CHECK_THROWS_AS(make_predicate(-0.1 * identity(2), space), Error);
  Matrix nonherm(2, 2);
  nonherm << 0, 1, 0, 0;
  CHECK_THROWS_AS(make_predicate(nonherm, space), Error);
}

TEST_CASE("density validation enforces trace and positivity") {
  VarSpace space({"q"}, {2});
  CHECK_NOTHROW(make_density(0.5 * identity(2), space));
  CHECK_NOTHROW(make_density(0.25 * identity(2), space));  // partial
  CHECK_THROWS_AS(make_density(identity(2) * 1.2, space), Error);
  Matrix neg = identity(2);
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(make_density(neg, space), Error);
}

TEST_CASE("reset channel is trace preserving at any dimension") {
  for (long d : {2, 3, 5}) {
    Superoperator reset = Superoperator::reset(d);
    CHECK(reset.trace_preserving());
    Rng rng(17);
    Matrix rho = random_density(d, rng);
    Matrix out = reset.apply(rho);
    CHECK(approx_equal(out, outer(basis_ket(d, 0)), 1e-12));
  }
}
