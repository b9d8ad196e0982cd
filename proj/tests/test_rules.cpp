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

#include "qwv/proof_text.hpp"
#include "rule_gen.hpp"
#include "support.hpp"

using namespace qwv;
using namespace qwv::test;

namespace {

Declarations one_qubit_env() {
  Declarations d;
  d.vars = VarSpace({"q"}, {2});
  return d;
}

}  // namespace

TEST_CASE("Ax.UT reproduces the hadamard basis-change triple") {
  Declarations d = one_qubit_env();
  RuleApplication app;
  app.tag = RuleTag::AxUT;
  app.mode = Mode::Total;
  app.stmt = make_unitary("H", {"q"});
  app.post = outer(basis_ket(2, 1));
  RuleResult r = apply_rule(d, app);
  CHECK(r.ok);
  CHECK(approx_equal(r.formula.pre, outer(minus_state()), 1e-12));
  CHECK(approx_equal(r.formula.post, outer(basis_ket(2, 1)), 1e-15));
}

TEST_CASE("R.SO with the forward damping map matches the expected noisy triple") {
  Declarations d = one_qubit_env();
  RuleApplication ut;
  ut.tag = RuleTag::AxUT;
  ut.mode = Mode::Total;
  ut.stmt = make_unitary("H", {"q"});
  ut.post = outer(basis_ket(2, 1));
  CorrectnessFormula base = apply_rule(d, ut).formula;

  for (double gamma : {0.0, 0.25, 0.5, 1.0}) {
    CAPTURE(gamma);
    auto [e0, e1] = damping_kraus(gamma);
    RuleApplication so;
    so.tag = RuleTag::RSO;
    so.mode = Mode::Total;
    so.premises = {base};
    so.aux_vars = {"q"};
    so.channel = Superoperator::from_kraus({e0, e1});
    so.direction = SoDirection::Forward;
    RuleResult r = apply_rule(d, so);

    Matrix expected_pre(2, 2);
    const double s = std::sqrt(1.0 - gamma);
    expected_pre << 0.5 * (1.0 + gamma), -0.5 * s, -0.5 * s,
        0.5 * (1.0 - gamma);
    Matrix expected_post = Matrix::Zero(2, 2);
    expected_post(0, 0) = gamma;
    expected_post(1, 1) = 1.0 - gamma;
    CHECK(approx_equal(r.formula.pre, expected_pre, 1e-12));
    CHECK(approx_equal(r.formula.post, expected_post, 1e-12));
    // The channel acts on the program's own variable; the side condition
    // is violated and must be reported.
    CHECK_FALSE(r.ok);
    bool named = false;
    for (const auto& v : r.violations)
      if (v.find("disjoint") != std::string::npos) named = true;
    CHECK(named);
  }
}

TEST_CASE("R.CC at equal weights on two copies returns the same triple") {
  Declarations d = one_qubit_env();
  Rng rng(1);
  StmtPtr p = make_unitary("H", {"q"});
  CorrectnessFormula f = passing_premise(d, p, Mode::Total, rng);
  RuleApplication cc;
  cc.tag = RuleTag::RCC;
  cc.mode = Mode::Total;
  cc.premises = {f, f};
  cc.weights = {0.5, 0.5};
  RuleResult r = apply_rule(d, cc);
  CHECK(r.ok);
  CHECK(approx_equal(r.formula.pre, f.pre, 1e-12));
  CHECK(approx_equal(r.formula.post, f.post, 1e-12));
}

TEST_CASE("R.CC rejects invalid weights") {
  Declarations d = one_qubit_env();
  Rng rng(2);
  StmtPtr p = make_skip();
  CorrectnessFormula f = passing_premise(d, p, Mode::Total, rng);
  RuleApplication cc;
  cc.tag = RuleTag::RCC;
  cc.mode = Mode::Total;
  cc.premises = {f, f};
  cc.weights = {0.8, 0.8};
  RuleResult r = apply_rule(d, cc);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations[0].find("exceeds 1") != std::string::npos);
}

TEST_CASE("R.Or names the violated premise") {
  Declarations d = one_qubit_env();
  RuleApplication sk;
  sk.tag = RuleTag::AxSk;
  sk.mode = Mode::Partial;
  sk.post = 0.5 * identity(2);
  CorrectnessFormula prem = apply_rule(d, sk).formula;

  RuleApplication orr;
  orr.tag = RuleTag::ROr;
  orr.mode = Mode::Partial;
  orr.premises = {prem};
  orr.weaker_pre = identity(2);  // I is not below 0.5 I
  orr.stronger_post = identity(2);
  RuleResult r = apply_rule(d, orr);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations[0].find("A <= A'") != std::string::npos);
}

TEST_CASE("R.SC chains the three qflip hadamards into the dials proof") {
  Declarations d;
  d.vars = VarSpace({"d1", "d2", "d3"}, {2, 2, 2});
  Matrix ghz_proj = outer(ghz());

  auto ut = [&](const std::string& var, const Matrix& post) {
    RuleApplication app;
    app.tag = RuleTag::AxUT;
    app.mode = Mode::Total;
    app.stmt = make_unitary("H", {var});
    app.post = post;
    RuleResult r = apply_rule(d, app);
    REQUIRE(r.ok);
    return r.formula;
  };
  CorrectnessFormula f3 = ut("d3", ghz_proj);
  CorrectnessFormula f2 = ut("d2", f3.pre);
  CorrectnessFormula f1 = ut("d1", f2.pre);

  auto sc = [&](const CorrectnessFormula& a, const CorrectnessFormula& b) {
    RuleApplication app;
    app.tag = RuleTag::RSC;
    app.mode = Mode::Total;
    app.premises = {a, b};
    RuleResult r = apply_rule(d, app);
    REQUIRE(r.ok);
    return r.formula;
  };
  CorrectnessFormula whole = sc(sc(f1, f2), f3);
  CHECK(approx_equal(whole.pre, outer(phi_even_parity()), 1e-12));
  CHECK(approx_equal(whole.post, ghz_proj, 1e-15));
  CHECK(check_triple(d, whole, 1e-9).holds);
}

TEST_CASE("a sequencing derivation proves the dials triple end to end") {
  Declarations d;
  d.vars = VarSpace({"d1", "d2", "d3"}, {2, 2, 2});
  Matrix ghz_proj = outer(ghz());

  // Leaves: one basis-change axiom per dial, threaded back to front.
  Derivation deriv;
  deriv.mode = Mode::Total;
  auto ut_node = [&](const std::string& name, const std::string& var,
                     Matrix post) {
    DerivationNode n;
    n.name = name;
    n.app.tag = RuleTag::AxUT;
    n.app.stmt = make_unitary("H", {var});
    n.app.post = std::move(post);
    return n;
  };
  Matrix pre3 = embed(builtin_gates().at("H"), {"d3"}, d.vars) * ghz_proj *
                embed(builtin_gates().at("H"), {"d3"}, d.vars);
  Matrix pre2 = embed(builtin_gates().at("H"), {"d2"}, d.vars) * pre3 *
                embed(builtin_gates().at("H"), {"d2"}, d.vars);
  deriv.nodes.push_back(ut_node("h1", "d1", pre2));
  deriv.nodes.push_back(ut_node("h2", "d2", pre3));
  deriv.nodes.push_back(ut_node("h3", "d3", ghz_proj));
  DerivationNode sc12;
  sc12.name = "sc12";
  sc12.app.tag = RuleTag::RSC;
  sc12.children = {0, 1};
  deriv.nodes.push_back(sc12);
  DerivationNode all;
  all.name = "all";
  all.app.tag = RuleTag::RSC;
  all.children = {3, 2};
  deriv.nodes.push_back(all);
  deriv.root = 4;

  DerivationReport report = verify_derivation(d, deriv, true, 1e-9);
  CHECK(report.ok);
  CHECK(report.semantic_ok);
  const CorrectnessFormula& whole = report.nodes.back().formula;
  CHECK(approx_equal(whole.pre, outer(phi_even_parity()), 1e-12));
  CHECK(approx_equal(whole.post, ghz_proj, 1e-15));
}

TEST_CASE("derivations verify bottom-up with per-node reports") {
  Declarations d = one_qubit_env();
  Derivation deriv;
  deriv.mode = Mode::Partial;

  DerivationNode sk;
  sk.name = "sk";
  sk.app.tag = RuleTag::AxSk;
  sk.app.post = identity(2);
  deriv.nodes.push_back(sk);

  DerivationNode weak;
  weak.name = "weak";
  weak.app.tag = RuleTag::ROr;
  weak.app.weaker_pre = 0.5 * identity(2);
  weak.app.stronger_post = identity(2);
  weak.children = {0};
  deriv.nodes.push_back(weak);
  deriv.root = 1;

  DerivationReport report = verify_derivation(d, deriv, true, 1e-9);
  CHECK(report.ok);
  CHECK(report.semantic_ok);
  REQUIRE(report.nodes.size() == 2);
  CHECK(report.nodes[0].ok);
  CHECK(report.nodes[1].ok);

  // Break the consequence step: conclusions must now fail.
  deriv.nodes[1].app.weaker_pre = identity(2);
  deriv.nodes[0].app.post = 0.5 * identity(2);
  DerivationReport bad = verify_derivation(d, deriv, false, 1e-9);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("proof files parse and verify") {
  std::string text =
      "var q : 2;\n"
      "proof par {\n"
      "  sk: Ax.Sk stmt { skip; } post { I(2) };\n"
      "  weak: R.Or premise sk pre { 0.5 * I(2) } post { I(2) };\n"
      "  root weak;\n"
      "}\n";
  ProofFile pf = parse_proof_file(text);
  CHECK(pf.derivation.nodes.size() == 2);
  CHECK(pf.derivation.root == 1);
  DerivationReport report =
      verify_derivation(pf.decls, pf.derivation, true, 1e-9);
  CHECK(report.ok);
  CHECK(report.semantic_ok);
}

TEST_CASE("ranking: immediate-exit loops pass vacuously") {
  Declarations d;
  d.vars = VarSpace({"q"}, {2});
  Matrix zero = zeros(2, 2);
  d.measurements["M"] =
      Measurement{{"0", "1"}, {identity(2), zero}};  // M1 = 0: exits at once
  StmtPtr loop = make_while("M", {"q"}, "1", make_unitary("H", {"q"}));
  RankingSpec spec;
  spec.observable = identity(2);
  spec.eps_rank = 0.5;
  spec.target = zero;  // paired target M1^dag Q M1 vanishes with M1
  spec.eps = 1e-3;
  Rng rng(3);
  std::vector<Matrix> states{random_density(2, rng), random_density(2, rng)};
  RankingReport r = ranking_check(d, loop, spec, states, 3);
  CHECK(r.pass);
}

TEST_CASE("ranking: a constant measure fails the strict-decrease condition") {
  Declarations d;
  d.vars = VarSpace({"q"}, {2});
  d.measurements["M"] =
      Measurement{{"0", "1"}, {zeros(2, 2), identity(2)}};  // never exits
  StmtPtr loop = make_while("M", {"q"}, "1", make_unitary("X", {"q"}));
  RankingSpec spec;
  spec.observable = zeros(2, 2);  // t is constantly 0
  spec.eps_rank = 0.5;
  spec.target = identity(2);  // tr(target rho) = 1 >= eps somewhere
  spec.eps = 0.5;
  std::vector<Matrix> states{outer(basis_ket(2, 0))};
  RankingReport r = ranking_check(d, loop, spec, states, 2);
  CHECK_FALSE(r.pass);
  CHECK(r.violation.find("condition 2") != std::string::npos);
}

TEST_CASE("ranking: walk distance decreases on the two-site walk") {
  // Position observable: distance from the halting site, scaled so the
  // measure is the expected number of remaining steps.
  Declarations d;
  d.vars = VarSpace({"c", "p"}, {2, 2});
  d.measurements["M"] = Measurement{
      {"yes", "no"},
      {outer(basis_ket(2, 1)), outer(basis_ket(2, 0))}};
  Matrix shift(4, 4);
  shift << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  d.gates["SH2"] = shift;
  StmtPtr body =
      make_seq(make_unitary("H", {"c"}), make_unitary("SH2", {"c", "p"}));
  StmtPtr loop = make_while("M", {"p"}, "no", body);

  RankingSpec spec;
  // N = |0><0| on the position: mass still away from the exit.
  spec.observable = kron(identity(2), outer(basis_ket(2, 0)));
  spec.eps_rank = 0.5;
  spec.target = kron(identity(2), outer(basis_ket(2, 0)));
  spec.eps = 1e-6;
  std::vector<Matrix> states{
      outer(kron_kets(basis_ket(2, 0), basis_ket(2, 0)))};
  RankingReport r = ranking_check(d, loop, spec, states, 4);
  CHECK(r.pass);
  CHECK(r.states_checked >= 4);
}

TEST_CASE("rule soundness: premises passing implies conclusions passing") {
  // Both correctness modes; partial mode covers the auxiliary rules
  // exactly as their soundness proofs state them.
  const std::vector<RuleTag> partial_rules = {
      RuleTag::AxSk, RuleTag::AxInB, RuleTag::AxInI, RuleTag::AxUT,
      RuleTag::RSC,  RuleTag::RIF,   RuleTag::RLP,   RuleTag::ROr,
      RuleTag::AxInv, RuleTag::RTI,  RuleTag::RCC,   RuleTag::RInv,
      RuleTag::RSO};
  const std::vector<RuleTag> total_rules = {
      RuleTag::AxSk, RuleTag::AxInB, RuleTag::AxInI, RuleTag::AxUT,
      RuleTag::RSC,  RuleTag::RIF,   RuleTag::RLT,   RuleTag::ROr,
      RuleTag::RTI,  RuleTag::RCC,   RuleTag::RInv,  RuleTag::RSO};

  Rng rng(2026);
  auto run_suite = [&](const std::vector<RuleTag>& rules, Mode mode,
                       int per_rule) {
    for (RuleTag tag : rules) {
      CAPTURE(rule_name(tag));
      for (int trial = 0; trial < per_rule; ++trial) {
        GeneratedEnv env = random_env(rng);
        RuleApplication app = generate_rule_instance(tag, env.decls, mode, rng);
        for (const auto& prem : app.premises)
          REQUIRE(check_triple(env.decls, prem, 1e-7).holds);
        RuleResult r = apply_rule(env.decls, app);
        REQUIRE_MESSAGE(r.ok, rule_name(tag));
        TripleVerdict v = check_triple(env.decls, r.formula, 1e-7);
        CHECK_MESSAGE(v.holds, rule_name(tag), " min_eig=", v.min_eig);
      }
    }
  };
  run_suite(partial_rules, Mode::Partial, 12);
  run_suite(total_rules, Mode::Total, 12);
}
