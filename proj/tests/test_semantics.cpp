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
#include <fstream>
#include <sstream>

#include "qwv/parser.hpp"
#include "qwv/sampling.hpp"
#include "qwv/semantics.hpp"
#include "support.hpp"

using namespace qwv;
using namespace qwv::test;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(corpus_dir() + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program qflip() { return parse_program(slurp("qflip.qw")); }
Program qwalk2() { return parse_program(slurp("qwalk2.qw")); }
Program qwalk4() { return parse_program(slurp("qwalk4.qw")); }

Matrix walk_start(const Program& prog) {
  long n = prog.decls.vars.dims[1];
  return outer(kron_kets(basis_ket(2, 0), basis_ket(n, 0)));
}

}  // namespace

TEST_CASE("step: skip terminates in place") {
  Program prog = parse_program("var q : 2;\nprog { skip; }");
  Rng rng(1);
  Matrix rho = random_density(2, rng);
  Configuration c{prog.root, rho, false, 0};
  auto succ = step(prog.decls, c);
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].terminated());
  CHECK(approx_equal(succ[0].state, rho, 1e-15));
}

TEST_CASE("step: hadamard maps |0><0| to |+><+|") {
  Program prog = parse_program("var q : 2;\nprog { apply H(q); }");
  Configuration c{prog.root, outer(basis_ket(2, 0)), false, 0};
  auto succ = step(prog.decls, c);
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].terminated());
  CHECK(approx_equal(succ[0].state, outer(plus_state()), 1e-12));
}

TEST_CASE("step: walk loop from the halting position") {
  // From |L><L| (x) |1><1| the exit branch carries all trace and the
  // continue branch is retained as a flagged zero-trace member.
  Program prog = qwalk2();
  const StmtPtr& loop = prog.root->rhs;
  Matrix rho = outer(kron_kets(basis_ket(2, 0), basis_ket(2, 1)));
  Configuration c{loop, rho, false, 0};
  auto succ = step(prog.decls, c);
  REQUIRE(succ.size() == 2);
  CHECK(succ[0].terminated());
  CHECK(trace_of(succ[0].state).real() == doctest::Approx(1.0));
  CHECK_FALSE(succ[1].terminated());
  CHECK(succ[1].zero_trace);
  CHECK(trace_of(succ[1].state).real() == doctest::Approx(0.0));
  CHECK(succ[1].loop_count == 1);
}

TEST_CASE("step_ensemble applies one transition to the leftmost live member") {
  Program prog = parse_program("var q : 2;\nprog { skip; }");
  Rng rng(2);
  Matrix rho = random_density(2, rng);
  Ensemble ens{Configuration{prog.root, rho, false, 0}};
  Ensemble out = step_ensemble(prog.decls, ens);
  REQUIRE(out.size() == 1);
  CHECK(out[0].terminated());
}

TEST_CASE("step_ensemble splits loops per the extended rules") {
  Program prog = qwalk2();
  const StmtPtr& loop = prog.root->rhs;
  Rng rng(3);
  Matrix rho = random_density(4, rng);
  Ensemble ens{Configuration{loop, rho, false, 0}};
  Ensemble out = step_ensemble(prog.decls, ens);
  REQUIRE(out.size() == 2);
  CHECK(out[0].terminated());  // exit branch first
  CHECK_FALSE(out[1].terminated());
  // The continue remainder is body; loop.
  REQUIRE(out[1].remainder->kind == StmtKind::Seq);
  CHECK(stmt_equal(out[1].remainder->rhs, loop));
}

TEST_CASE("step_ensemble preserves total trace") {
  Program prog = qwalk4();
  Rng rng(4);
  Matrix rho = random_density(8, rng);
  Ensemble ens{Configuration{prog.root, rho, false, 0}};
  for (int i = 0; i < 40; ++i) {
    bool live = false;
    for (const auto& c : ens)
      if (!c.terminated()) live = true;
    if (!live) break;
    double before = ensemble_trace(ens);
    ens = step_ensemble(prog.decls, ens);
    CHECK(ensemble_trace(ens) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("qflip on |+,-,+> lands on |0,1,0>") {
  Program prog = qflip();
  Matrix rho = outer(kron_kets(kron_kets(plus_state(), minus_state()),
                               plus_state()));
  RunResult rr = run_ensemble(prog.decls, prog.root, rho, 100);
  CHECK(rr.terminated.size() == 1);
  CHECK(rr.residual.empty());
  CHECK(approx_equal(rr.terminated_sum(8), outer(basis3(0, 1, 0)), 1e-10));
}

TEST_CASE("skip leaves the state with zero residual") {
  Program prog = parse_program("var q : 2;\nprog { skip; }");
  Rng rng(5);
  Matrix rho = random_density(2, rng);
  RunResult rr = run_ensemble(prog.decls, prog.root, rho, 100);
  CHECK(approx_equal(rr.terminated_sum(2), rho, 1e-15));
  CHECK(rr.residual_trace == 0.0);
}

TEST_CASE("walk on four sites terminates almost surely") {
  Program prog = qwalk4();
  RunResult rr = run_ensemble(prog.decls, prog.root, walk_start(prog), 4000);
  CHECK(rr.terminated_trace >= 1.0 - 1e-4);
}

TEST_CASE("denotation of qflip is the triple hadamard channel") {
  Program prog = qflip();
  DenoteResult dn = denote(prog.decls, prog.root);
  CHECK_FALSE(dn.truncated);
  const Matrix& h = builtin_gates().at("H");
  Matrix h3 = kron(kron(h, h), h);
  CHECK(same_action(dn.op, Superoperator::unitary(h3), 1e-12));
}

TEST_CASE("qflip on the w state reproduces the printed amplitudes") {
  Program prog = qflip();
  Matrix out = denote_apply(prog.decls, prog.root, outer(w_state()));
  Vector expected(8);
  const double c = 1.0 / (2.0 * std::sqrt(6.0));
  expected << 3 * c, c, c, -c, c, -c, -c, -3 * c;
  CHECK(approx_equal(out, outer(expected), 1e-10));
}

TEST_CASE("denotation of skip is the identity channel") {
  Program prog = parse_program("var q : 2;\nprog { skip; }");
  DenoteResult dn = denote(prog.decls, prog.root);
  CHECK(same_action(dn.op, Superoperator::identity(2), 1e-15));
  CHECK(dn.op.trace_preserving());
}

TEST_CASE("loop denotation agrees with the operational run") {
  Program prog = qwalk4();
  Matrix rho = walk_start(prog);
  DenoteOptions opts;
  opts.max_unroll = 64;
  DenoteResult dn = denote(prog.decls, prog.root, opts);
  Matrix denoted = dn.op.apply(rho);
  RunResult rr = run_ensemble(prog.decls, prog.root, rho, 4000);
  CHECK(std::abs(trace_of(denoted).real() - rr.terminated_trace) <= 1e-4);
  CHECK(approx_equal(denoted, rr.terminated_sum(8),
                     std::max(1e-9, dn.loop_residual)));
}

TEST_CASE("denotation is linear in the state") {
  Program prog = qwalk2();
  DenoteResult dn = denote(prog.decls, prog.root);
  Rng rng(7);
  Matrix rho1 = random_density(4, rng);
  Matrix rho2 = random_density(4, rng);
  double lam = 0.3, mu = 0.6;
  Matrix lhs = dn.op.apply(lam * rho1 + mu * rho2);
  Matrix rhs = lam * dn.op.apply(rho1) + mu * dn.op.apply(rho2);
  CHECK(approx_equal(lhs, rhs, 1e-9));
}

TEST_CASE("operational and denotational semantics agree on loop-free corpus") {
  for (const char* name : {"qflip.qw", "qtel.qw"}) {
    CAPTURE(name);
    Program prog = parse_program(slurp(name));
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
      Matrix rho = random_density(prog.decls.vars.dim(), rng);
      Matrix denoted = denote_apply(prog.decls, prog.root, rho);
      RunResult rr = run_ensemble(prog.decls, prog.root, rho, 1000);
      CHECK(approx_equal(denoted, rr.terminated_sum(prog.decls.vars.dim()),
                         1e-10));
    }
  }
}

TEST_CASE("denotation never increases the trace") {
  Rng rng(13);
  for (const char* name : {"qflip.qw", "qtel.qw", "qwalk2.qw"}) {
    Program prog = parse_program(slurp(name));
    DenoteResult dn = denote(prog.decls, prog.root);
    for (int trial = 0; trial < 5; ++trial) {
      Matrix rho = random_density(prog.decls.vars.dim(), rng);
      CHECK(trace_of(dn.op.apply(rho)).real() <=
            trace_of(rho).real() + 1e-9);
    }
  }
}

TEST_CASE("selection order does not change the terminated sum") {
  Program prog = parse_program(slurp("qtel.qw"));
  Rng rng(17);
  Matrix rho = random_density(8, rng);
  RunResult left =
      run_ensemble(prog.decls, prog.root, rho, 1000, Selection::Leftmost);
  RunResult right =
      run_ensemble(prog.decls, prog.root, rho, 1000, Selection::Rightmost);
  CHECK(approx_equal(left.terminated_sum(8), right.terminated_sum(8), 1e-12));
}

TEST_CASE("termination probabilities: loop-free mass arrives at once") {
  Program prog = qflip();
  Rng rng(19);
  Matrix rho = 0.7 * random_density(8, rng);
  TerminationSequence seq = termination_prob(prog.decls, prog.root, rho, 5);
  REQUIRE_FALSE(seq.t.empty());
  CHECK(seq.t[0] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(seq.t.back() == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("termination probabilities are monotone and reach 1 on the walk") {
  Program prog = qwalk2();
  TerminationSequence seq =
      termination_prob(prog.decls, prog.root, walk_start(prog), 30);
  for (size_t i = 1; i < seq.t.size(); ++i) CHECK(seq.t[i] >= seq.t[i - 1]);
  CHECK(seq.t.back() >= 1.0 - 1e-6);
}

TEST_CASE("a loop that never exits has zero termination mass") {
  Program prog = parse_program(
      "var q : 2;\n"
      "meas M = { 0: [[0,0],[0,0]]; 1: [[1,0],[0,1]]; };\n"
      "prog { while M(q) == 1 { apply X(q); } }");
  Rng rng(23);
  Matrix rho = random_density(2, rng);
  TerminationSequence seq = termination_prob(prog.decls, prog.root, rho, 20);
  for (double t : seq.t) CHECK(t == doctest::Approx(0.0));
  CHECK(seq.residual == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero-trace live members stay visible for reachability") {
  Program prog = qwalk2();
  const StmtPtr& loop = prog.root->rhs;
  Matrix rho = outer(kron_kets(basis_ket(2, 0), basis_ket(2, 1)));
  Ensemble ens{Configuration{loop, rho, false, 0}};
  Ensemble out = step_ensemble(prog.decls, ens);
  bool saw_zero_live = false;
  for (const auto& c : out)
    if (!c.terminated() && c.zero_trace) saw_zero_live = true;
  CHECK(saw_zero_live);
}
