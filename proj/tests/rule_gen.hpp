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

// Random generators that build one valid application per proof rule,
// with premises that themselves pass the semantic triple check. Used by
// the rule-soundness property tests and the acceptance suite.

#include <string>

#include "qwv/rules.hpp"
#include "qwv/sampling.hpp"

namespace qwv::test {

struct GeneratedEnv {
  Declarations decls;
};

/** Two qubits and one qutrit, a complete two-outcome measurement. */
inline GeneratedEnv random_env(Rng& rng) {
  GeneratedEnv env;
  env.decls.vars = VarSpace({"a", "b", "c"}, {2, 2, 3});
  std::vector<Matrix> meas = random_measurement(2, 2, rng);
  env.decls.measurements["M"] = Measurement{{"0", "1"}, meas};
  std::vector<Matrix> meas3 = random_measurement(2, 3, rng);
  env.decls.measurements["M3"] = Measurement{{"x", "y", "z"}, meas3};
  // Loop guard with a guaranteed exit margin: scaled random unitaries
  // keep the continue branch strictly contractive, so invariant fixed
  // points converge geometrically.
  std::uniform_real_distribution<double> margin(0.2, 0.8);
  double p = margin(rng);
  env.decls.measurements["ML"] = Measurement{
      {"0", "1"},
      {std::sqrt(p) * random_unitary(2, rng),
       std::sqrt(1.0 - p) * random_unitary(2, rng)}};
  env.decls.gates["U1"] = random_unitary(2, rng);
  env.decls.gates["U2"] = random_unitary(4, rng);
  return env;
}

/** Random loop-free statement over variables `a` and `b` only. */
inline StmtPtr random_loopless_stmt(Rng& rng, int depth = 0) {
  std::uniform_int_distribution<int> pick(0, depth >= 2 ? 4 : 6);
  switch (pick(rng)) {
    case 0:
      return make_skip();
    case 1:
      return make_init("a");
    case 2:
      return make_init("b");
    case 3:
      return make_unitary("U1", {std::bernoulli_distribution(0.5)(rng)
                                     ? std::string("a")
                                     : std::string("b")});
    case 4:
      return make_unitary("U2", std::bernoulli_distribution(0.5)(rng)
                                    ? std::vector<std::string>{"a", "b"}
                                    : std::vector<std::string>{"b", "a"});
    case 5:
      return make_seq(random_loopless_stmt(rng, depth + 1),
                      random_loopless_stmt(rng, depth + 1));
    default: {
      std::vector<CaseBranch> branches;
      branches.push_back(CaseBranch{"0", random_loopless_stmt(rng, depth + 1)});
      branches.push_back(CaseBranch{"1", random_loopless_stmt(rng, depth + 1)});
      std::string target =
          std::bernoulli_distribution(0.5)(rng) ? "a" : "b";
      return make_case("M", {target}, std::move(branches));
    }
  }
}

/**
 * A premise {lambda wp(P, B)} P {B} that passes by construction: any
 * downscaled weakest precondition is a valid precondition.
 */
inline CorrectnessFormula passing_premise(const Declarations& decls,
                                          const StmtPtr& prog, Mode mode,
                                          Rng& rng) {
  Matrix post = random_predicate(decls.vars.dim(), rng);
  WpResult wp = mode == Mode::Total ? wp_total(decls, prog, post)
                                    : wp_partial_bound(decls, prog, post);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return CorrectnessFormula{unit(rng) * wp.wp, prog, post, mode};
}

/**
 * The greatest fixed point of B -> wp_par(body, M0^dag A M0 + M1^dag B M1),
 * iterated downward from I. The result makes the loop-rule premise
 * {B} body {M0^dag A M0 + M1^dag B M1} pass with equality.
 */
inline Matrix loop_invariant_gfp(const Declarations& decls,
                                 const StmtPtr& body, const Matrix& m_exit,
                                 const Matrix& m_cont, const Matrix& post,
                                 Mode mode, int iters = 300) {
  const long d = decls.vars.dim();
  Matrix b = identity(d);
  Matrix exit_part = m_exit.adjoint() * post * m_exit;
  for (int i = 0; i < iters; ++i) {
    Matrix combined = exit_part + m_cont.adjoint() * b * m_cont;
    Matrix next = mode == Mode::Partial
                      ? wp_partial_bound(decls, body, combined).wp
                      : wp_total(decls, body, combined).wp;
    if (max_abs(next - b) < 1e-12) {
      b = next;
      break;
    }
    b = next;
  }
  return b;
}

/** Builds one randomly generated application of the given rule whose
 * premises pass check_triple. */
inline RuleApplication generate_rule_instance(RuleTag tag,
                                              const Declarations& decls,
                                              Mode mode, Rng& rng) {
  RuleApplication app;
  app.tag = tag;
  app.mode = mode;
  const long full = decls.vars.dim();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  switch (tag) {
    case RuleTag::AxSk:
      app.stmt = make_skip();
      app.post = random_predicate(full, rng);
      break;
    case RuleTag::AxInB:
      app.stmt = make_init(std::bernoulli_distribution(0.5)(rng) ? "a" : "b");
      app.post = random_predicate(full, rng);
      break;
    case RuleTag::AxInI:
      app.stmt = make_init("c");
      app.post = random_predicate(full, rng);
      break;
    case RuleTag::AxUT:
      app.stmt = make_unitary("U2", {"a", "b"});
      app.post = random_predicate(full, rng);
      break;
    case RuleTag::RSC: {
      StmtPtr p2 = random_loopless_stmt(rng);
      CorrectnessFormula prem2 = passing_premise(decls, p2, mode, rng);
      StmtPtr p1 = random_loopless_stmt(rng);
      WpResult wp1 = mode == Mode::Total
                         ? wp_total(decls, p1, prem2.pre)
                         : wp_partial_bound(decls, p1, prem2.pre);
      CorrectnessFormula prem1{unit(rng) * wp1.wp, p1, prem2.pre, mode};
      app.premises = {prem1, prem2};
      break;
    }
    case RuleTag::RIF: {
      app.meas = "M";
      app.meas_vars = {"a"};
      Matrix post = random_predicate(full, rng);
      for (int m = 0; m < 2; ++m) {
        StmtPtr body = random_loopless_stmt(rng);
        WpResult wp = mode == Mode::Total
                          ? wp_total(decls, body, post)
                          : wp_partial_bound(decls, body, post);
        app.premises.push_back(
            CorrectnessFormula{unit(rng) * wp.wp, body, post, mode});
      }
      break;
    }
    case RuleTag::RLP:
    case RuleTag::RLT: {
      app.meas = "ML";
      app.meas_vars = {"a"};
      app.continue_label = "1";
      StmtPtr body = random_loopless_stmt(rng);
      const Measurement& m = decls.measurements.at("ML");
      Matrix m_exit = embed(m.ops[0], {"a"}, decls.vars);
      Matrix m_cont = embed(m.ops[1], {"a"}, decls.vars);
      app.loop_post = random_predicate(full, rng);
      app.loop_invariant = loop_invariant_gfp(decls, body, m_exit, m_cont,
                                              app.loop_post, mode);
      Matrix combined = m_exit.adjoint() * app.loop_post * m_exit +
                        m_cont.adjoint() * app.loop_invariant * m_cont;
      app.premises = {
          CorrectnessFormula{app.loop_invariant, body, combined, mode}};
      if (tag == RuleTag::RLT) {
        app.ranking = RankingSpec{};  // filled by apply_rule with the target
        app.ranking->observable = identity(full);
        app.ranking->eps_rank = 1.0;
        app.ranking->eps = 2.0;  // vacuous decrease demand for the harness
        app.ranking_states = {random_density(full, rng)};
        app.ranking_reach = 2;
      }
      break;
    }
    case RuleTag::ROr: {
      StmtPtr p = random_loopless_stmt(rng);
      CorrectnessFormula prem = passing_premise(decls, p, mode, rng);
      app.premises = {prem};
      app.weaker_pre = unit(rng) * prem.pre;
      Matrix headroom = identity(full) - prem.post;
      app.stronger_post = prem.post + unit(rng) * headroom;
      break;
    }
    case RuleTag::AxInv: {
      app.stmt = random_loopless_stmt(rng);  // acts on a, b only
      app.aux_vars = {"c"};
      app.aux_pred = random_predicate(3, rng);
      break;
    }
    case RuleTag::RTI: {
      // P acts on a; trace out c; premise post is cylindrical on {a, b}.
      StmtPtr p = make_unitary("U1", {"a"});
      Matrix post_ab = random_predicate(4, rng);
      Matrix post = embed(post_ab, {"a", "b"}, decls.vars);
      WpResult wp = mode == Mode::Total ? wp_total(decls, p, post)
                                        : wp_partial_bound(decls, p, post);
      app.premises = {CorrectnessFormula{unit(rng) * wp.wp, p, post, mode}};
      app.aux_vars = {"c"};
      break;
    }
    case RuleTag::RCC: {
      StmtPtr p = random_loopless_stmt(rng);
      int count = 2 + (rng() % 2);
      double total = 0.0;
      for (int i = 0; i < count; ++i) {
        app.premises.push_back(passing_premise(decls, p, mode, rng));
        app.premises.back().prog = p;
        app.weights.push_back(unit(rng));
        total += app.weights.back();
      }
      if (total > 1.0)
        for (double& w : app.weights) w /= total;
      break;
    }
    case RuleTag::RInv: {
      StmtPtr p = random_loopless_stmt(rng);
      app.premises = {passing_premise(decls, p, mode, rng)};
      app.p = unit(rng);
      app.q = (1.0 - app.p) * unit(rng);
      app.aux_vars = {"c"};
      app.aux_pred = random_predicate(3, rng);
      break;
    }
    case RuleTag::RSO: {
      StmtPtr p = random_loopless_stmt(rng);
      app.premises = {passing_premise(decls, p, mode, rng)};
      app.aux_vars = {"c"};
      app.channel = random_channel(3, 2, std::bernoulli_distribution(0.5)(rng),
                                   rng);
      app.direction = SoDirection::Dual;
      break;
    }
  }
  return app;
}

}  // namespace qwv::test
