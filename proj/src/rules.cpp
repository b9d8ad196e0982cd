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

#include "qwv/rules.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qwv {

std::string rule_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::AxSk: return "Ax.Sk";
    case RuleTag::AxInB: return "Ax.In.B";
    case RuleTag::AxInI: return "Ax.In.I";
    case RuleTag::AxUT: return "Ax.UT";
    case RuleTag::RSC: return "R.SC";
    case RuleTag::RIF: return "R.IF";
    case RuleTag::RLP: return "R.LP";
    case RuleTag::RLT: return "R.LT";
    case RuleTag::ROr: return "R.Or";
    case RuleTag::AxInv: return "Ax.Inv";
    case RuleTag::RTI: return "R.TI";
    case RuleTag::RCC: return "R.CC";
    case RuleTag::RInv: return "R.Inv";
    case RuleTag::RSO: return "R.SO";
  }
  return "?";
}

RuleTag rule_from_name(const std::string& name) {
  static const std::vector<std::pair<std::string, RuleTag>> table = {
      {"Ax.Sk", RuleTag::AxSk},   {"Ax.In.B", RuleTag::AxInB},
      {"Ax.In.I", RuleTag::AxInI}, {"Ax.UT", RuleTag::AxUT},
      {"R.SC", RuleTag::RSC},     {"R.IF", RuleTag::RIF},
      {"R.LP", RuleTag::RLP},     {"R.LT", RuleTag::RLT},
      {"R.Or", RuleTag::ROr},     {"Ax.Inv", RuleTag::AxInv},
      {"R.TI", RuleTag::RTI},     {"R.CC", RuleTag::RCC},
      {"R.Inv", RuleTag::RInv},   {"R.SO", RuleTag::RSO},
  };
  for (const auto& [n, t] : table)
    if (n == name) return t;
  throw Error("unknown rule " + name);
}

// ---------------------------------------------------------------------------
// Ranking functions.

namespace {

long measure_of(const RankingSpec& spec, const Matrix& rho) {
  double value = expectation(spec.observable, rho);
  double scaled = value / spec.eps_rank;
  // Snap values a hair above an integer back down before ceil.
  return std::max(0L, static_cast<long>(std::ceil(scaled - 1e-9)));
}

}  // namespace

RankingReport ranking_check(const Declarations& decls, const StmtPtr& loop,
                            const RankingSpec& spec,
                            const std::vector<Matrix>& states,
                            long reach_depth, const Tolerances& tol) {
  if (!loop || loop->kind != StmtKind::While)
    throw Error("ranking_check expects a while loop");
  if (!is_hermitian(spec.observable, tol.herm))
    throw Error("ranking observable must be Hermitian");
  if (min_eigenvalue(spec.observable) < -tol.psd)
    throw Error("ranking observable must be positive");

  auto [m_exit, m_cont] = while_ops(*loop, decls);
  Matrix k = embed(m_cont, loop->vars, decls.vars);
  DenoteOptions dopts;
  DenoteResult body = denote(decls, loop->body, dopts);
  auto iterate = [&](const Matrix& rho) {
    return body.op.apply(k * rho * k.adjoint());
  };

  // Enumerate the supplied states plus reach_depth levels of iterates.
  std::vector<Matrix> enumerated = states;
  std::vector<long> successor(states.size(), -1);
  size_t level_begin = 0;
  for (long depth = 0; depth < reach_depth; ++depth) {
    size_t level_end = enumerated.size();
    for (size_t i = level_begin; i < level_end; ++i) {
      Matrix next = iterate(enumerated[i]);
      successor[i] = static_cast<long>(enumerated.size());
      enumerated.push_back(std::move(next));
      successor.push_back(-1);
    }
    level_begin = level_end;
  }

  RankingReport report;
  report.states_checked = static_cast<long>(enumerated.size());
  if (spec.table &&
      spec.table->size() < enumerated.size())
    report.bounded = true;

  auto t_of = [&](size_t index, const Matrix& rho) -> std::optional<long> {
    if (spec.table) {
      if (index < spec.table->size()) return (*spec.table)[index];
      return std::nullopt;
    }
    return measure_of(spec, rho);
  };

  for (size_t i = 0; i < enumerated.size(); ++i) {
    auto ti = t_of(i, enumerated[i]);
    if (ti) report.t_values.push_back(*ti);
  }

  for (size_t i = 0; i < enumerated.size(); ++i) {
    const Matrix& rho = enumerated[i];
    if (trace_of(rho).real() <= 1e-14) continue;
    std::optional<long> ti = t_of(i, rho);
    if (!ti) continue;
    Matrix next;
    std::optional<long> tn;
    if (successor[i] >= 0) {
      next = enumerated[static_cast<size_t>(successor[i])];
      tn = t_of(static_cast<size_t>(successor[i]), next);
    } else if (!spec.table) {
      next = iterate(rho);
      tn = measure_of(spec, next);
    }
    if (!tn) {
      report.bounded = true;
      continue;
    }
    if (*tn > *ti) {
      report.pass = false;
      report.violation = "condition 1 fails at state " + std::to_string(i) +
                         ": t rises from " + std::to_string(*ti) + " to " +
                         std::to_string(*tn);
      return report;
    }
    double target_mass = expectation(spec.target, rho);
    if (target_mass >= spec.eps && *tn >= *ti) {
      report.pass = false;
      report.violation = "condition 2 fails at state " + std::to_string(i) +
                         ": tr(A rho) = " + std::to_string(target_mass) +
                         " >= eps but t does not decrease (t = " +
                         std::to_string(*ti) + ")";
      return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rule applications.

namespace {

struct Checker {
  const Declarations& decls;
  const Tolerances& tol;
  RuleResult result;

  void violated(const std::string& what) {
    result.ok = false;
    result.violations.push_back(what);
  }

  void require_predicate(const Matrix& m, const std::string& what) {
    try {
      make_predicate(m, decls.vars, tol);
    } catch (const Error& e) {
      violated(what + ": " + e.what());
    }
  }

  void require_equal(const Matrix& a, const Matrix& b,
                     const std::string& what) {
    if (a.rows() != b.rows() || a.cols() != b.cols() ||
        !approx_equal(a, b, tol.eq))
      violated(what);
  }

  bool disjoint_from_program(const std::vector<std::string>& vars,
                             const StmtPtr& prog, const std::string& rule) {
    std::vector<std::string> pv = vars_of(prog, decls);
    for (const auto& v : vars) {
      if (std::find(pv.begin(), pv.end(), v) != pv.end()) {
        violated(rule + ": variable " + v +
                 " of the side operator occurs in the program (var(P) "
                 "and V must be disjoint)");
        return false;
      }
    }
    return true;
  }
};

Matrix dual_of_reset(const Declarations& decls, const std::string& var,
                     const Matrix& post) {
  return Superoperator::reset(decls.vars.dim_of(var))
      .embedded({var}, decls.vars)
      .dual_apply(post);
}

std::vector<std::string> complement_vars(const Declarations& decls,
                                         const std::vector<std::string>& w) {
  std::vector<std::string> out;
  for (const auto& name : decls.vars.names)
    if (std::find(w.begin(), w.end(), name) == w.end()) out.push_back(name);
  return out;
}

}  // namespace

RuleResult apply_rule(const Declarations& decls, const RuleApplication& app,
                      const Tolerances& tol) {
  Checker ck{decls, tol, {}};
  RuleResult& result = ck.result;
  result.formula.mode = app.mode;
  const long full = decls.vars.dim(tol.dim_cap);

  auto need_premises = [&](size_t n) {
    if (app.premises.size() != n)
      throw Error(rule_name(app.tag) + " needs " + std::to_string(n) +
                  " premise(s), got " + std::to_string(app.premises.size()));
  };
  auto premise_modes_match = [&] {
    for (const auto& p : app.premises)
      if (p.mode != app.mode)
        ck.violated(rule_name(app.tag) +
                    ": premise mode differs from conclusion mode");
  };

  switch (app.tag) {
    case RuleTag::AxSk: {
      need_premises(0);
      StmtPtr s = app.stmt ? app.stmt : make_skip();
      if (s->kind != StmtKind::Skip)
        throw Error("Ax.Sk applies to skip statements");
      ck.require_predicate(app.post, "Ax.Sk: predicate A");
      result.formula = {app.post, s, app.post, app.mode};
      break;
    }
    case RuleTag::AxInB:
    case RuleTag::AxInI: {
      need_premises(0);
      if (!app.stmt || app.stmt->kind != StmtKind::Init)
        throw Error(rule_name(app.tag) + " applies to initialisations");
      long d = decls.vars.dim_of(app.stmt->var);
      if (app.tag == RuleTag::AxInB && d != 2)
        ck.violated("Ax.In.B: variable " + app.stmt->var +
                    " is not two-dimensional");
      ck.require_predicate(app.post, rule_name(app.tag) + ": predicate A");
      Matrix pre = dual_of_reset(decls, app.stmt->var, app.post);
      result.formula = {std::move(pre), app.stmt, app.post, app.mode};
      break;
    }
    case RuleTag::AxUT: {
      need_premises(0);
      if (!app.stmt || app.stmt->kind != StmtKind::Unitary)
        throw Error("Ax.UT applies to unitary statements");
      ck.require_predicate(app.post, "Ax.UT: predicate A");
      Matrix u = embed(decls.gate(app.stmt->gate), app.stmt->vars, decls.vars);
      Matrix pre = u.adjoint() * app.post * u;
      result.formula = {std::move(pre), app.stmt, app.post, app.mode};
      break;
    }
    case RuleTag::RSC: {
      need_premises(2);
      premise_modes_match();
      ck.require_equal(app.premises[0].post, app.premises[1].pre,
                       "R.SC: middle predicates differ ({A}P1{B} ; {B}P2{C})");
      result.formula = {app.premises[0].pre,
                        make_seq(app.premises[0].prog, app.premises[1].prog),
                        app.premises[1].post, app.mode};
      break;
    }
    case RuleTag::RIF: {
      const Measurement& m = decls.measurement(app.meas);
      need_premises(m.labels.size());
      premise_modes_match();
      Matrix pre = Matrix::Zero(full, full);
      std::vector<CaseBranch> branches;
      for (size_t i = 0; i < m.labels.size(); ++i) {
        if (i > 0)
          ck.require_equal(app.premises[i].post, app.premises[0].post,
                           "R.IF: premise postconditions differ");
        Matrix op = embed(m.ops[i], app.meas_vars, decls.vars);
        pre += op.adjoint() * app.premises[i].pre * op;
        branches.push_back(CaseBranch{m.labels[i], app.premises[i].prog});
      }
      result.formula = {std::move(pre),
                        make_case(app.meas, app.meas_vars, std::move(branches)),
                        app.premises[0].post, app.mode};
      break;
    }
    case RuleTag::RLP:
    case RuleTag::RLT: {
      need_premises(1);
      premise_modes_match();
      const bool total = app.tag == RuleTag::RLT;
      if (total && app.mode != Mode::Total)
        ck.violated("R.LT concludes total correctness");
      if (!total && app.mode != Mode::Partial)
        ck.violated("R.LP concludes partial correctness; use R.LT with a "
                    "ranking function for total correctness");
      const Measurement& m = decls.measurement(app.meas);
      if (m.labels.size() != 2)
        throw Error(rule_name(app.tag) + ": measurement must be two-outcome");
      StmtPtr loop = make_while(app.meas, app.meas_vars, app.continue_label,
                                app.premises[0].prog);
      auto [m_exit, m_cont] = while_ops(*loop, decls);
      Matrix e = embed(m_exit, app.meas_vars, decls.vars);
      Matrix k = embed(m_cont, app.meas_vars, decls.vars);
      ck.require_predicate(app.loop_post, rule_name(app.tag) + ": predicate A");
      ck.require_predicate(app.loop_invariant,
                           rule_name(app.tag) + ": predicate B");
      Matrix combined = e.adjoint() * app.loop_post * e +
                        k.adjoint() * app.loop_invariant * k;
      ck.require_equal(app.premises[0].pre, app.loop_invariant,
                       rule_name(app.tag) + ": premise precondition is not B");
      ck.require_equal(
          app.premises[0].post, combined,
          rule_name(app.tag) +
              ": premise postcondition is not M0^dag A M0 + M1^dag B M1");
      if (total) {
        if (!app.ranking) {
          ck.violated("R.LT: missing ranking evidence");
        } else {
          RankingSpec spec = *app.ranking;
          spec.target = k.adjoint() * app.loop_invariant * k;
          RankingReport rr = ranking_check(decls, loop, spec,
                                           app.ranking_states,
                                           app.ranking_reach, tol);
          if (!rr.pass) ck.violated("R.LT: ranking evidence fails: " + rr.violation);
        }
      }
      result.formula = {std::move(combined), loop, app.loop_post, app.mode};
      break;
    }
    case RuleTag::ROr: {
      need_premises(1);
      premise_modes_match();
      ck.require_predicate(app.weaker_pre, "R.Or: predicate A");
      ck.require_predicate(app.stronger_post, "R.Or: predicate B");
      LoewnerVerdict lhs =
          loewner_leq(app.weaker_pre, app.premises[0].pre, tol.psd);
      if (!lhs.holds)
        ck.violated("R.Or: premise \"A <= A'\" fails (min eigenvalue " +
                    std::to_string(lhs.min_eig) + ")");
      LoewnerVerdict rhs =
          loewner_leq(app.premises[0].post, app.stronger_post, tol.psd);
      if (!rhs.holds)
        ck.violated("R.Or: premise \"B' <= B\" fails (min eigenvalue " +
                    std::to_string(rhs.min_eig) + ")");
      result.formula = {app.weaker_pre, app.premises[0].prog,
                        app.stronger_post, app.mode};
      break;
    }
    case RuleTag::AxInv: {
      need_premises(0);
      if (!app.stmt) throw Error("Ax.Inv needs a program");
      if (app.mode != Mode::Partial)
        ck.violated("Ax.Inv is sound for partial correctness only");
      ck.disjoint_from_program(app.aux_vars, app.stmt, "Ax.Inv");
      long vd = decls.vars.restrict_to(app.aux_vars).dim(tol.dim_cap);
      if (app.aux_pred.rows() != vd)
        throw Error("Ax.Inv: predicate does not match its variables");
      try {
        make_predicate(app.aux_pred, decls.vars.restrict_to(app.aux_vars), tol);
      } catch (const Error& e) {
        ck.violated(std::string("Ax.Inv: predicate B: ") + e.what());
      }
      Matrix a = embed(app.aux_pred, app.aux_vars, decls.vars);
      result.formula = {a, app.stmt, a, app.mode};
      break;
    }
    case RuleTag::RTI: {
      need_premises(1);
      premise_modes_match();
      const CorrectnessFormula& prem = app.premises[0];
      ck.disjoint_from_program(app.aux_vars, prem.prog, "R.TI");
      std::vector<std::string> keep = complement_vars(decls, app.aux_vars);
      long wd = 1;
      for (const auto& w : app.aux_vars) wd *= decls.vars.dim_of(w);
      // The postcondition must live on the untraced variables.
      Matrix post_v = partial_trace(prem.post, app.aux_vars, decls.vars) /
                      static_cast<double>(wd);
      ck.require_equal(embed(post_v, keep, decls.vars), prem.post,
                       "R.TI: postcondition must act as the identity on the "
                       "traced variables");
      // Dimension-averaged partial trace; the plain trace would scale
      // eigenvalues by the traced dimension and break soundness.
      Matrix pre_v = partial_trace(prem.pre, app.aux_vars, decls.vars) /
                     static_cast<double>(wd);
      Matrix pre = embed(pre_v, keep, decls.vars);
      ck.require_predicate(pre, "R.TI: traced precondition");
      result.formula = {std::move(pre), prem.prog, prem.post, app.mode};
      break;
    }
    case RuleTag::RCC: {
      if (app.premises.empty()) throw Error("R.CC needs premises");
      premise_modes_match();
      if (app.weights.size() != app.premises.size())
        throw Error("R.CC: weight count differs from premise count");
      double sum = 0.0;
      for (double w : app.weights) {
        if (w < -1e-12) ck.violated("R.CC: weights must be nonnegative");
        sum += w;
      }
      if (sum > 1.0 + 1e-12)
        ck.violated("R.CC: weights sum to " + std::to_string(sum) +
                    " which exceeds 1");
      Matrix pre = Matrix::Zero(full, full);
      Matrix post = Matrix::Zero(full, full);
      for (size_t i = 0; i < app.premises.size(); ++i) {
        if (!stmt_equal(app.premises[i].prog, app.premises[0].prog))
          ck.violated("R.CC: premises must share one program");
        pre += app.weights[i] * app.premises[i].pre;
        post += app.weights[i] * app.premises[i].post;
      }
      result.formula = {std::move(pre), app.premises[0].prog, std::move(post),
                        app.mode};
      break;
    }
    case RuleTag::RInv: {
      need_premises(1);
      premise_modes_match();
      const CorrectnessFormula& prem = app.premises[0];
      if (app.p < -1e-12 || app.q < -1e-12)
        ck.violated("R.Inv: p and q must be nonnegative");
      if (app.p + app.q > 1.0 + 1e-12)
        ck.violated("R.Inv: p + q exceeds 1");
      ck.disjoint_from_program(app.aux_vars, prem.prog, "R.Inv");
      try {
        make_predicate(app.aux_pred, decls.vars.restrict_to(app.aux_vars), tol);
      } catch (const Error& e) {
        ck.violated(std::string("R.Inv: predicate C: ") + e.what());
      }
      Matrix c = embed(app.aux_pred, app.aux_vars, decls.vars);
      result.formula = {app.p * prem.pre + app.q * c, prem.prog,
                        app.p * prem.post + app.q * c, app.mode};
      break;
    }
    case RuleTag::RSO: {
      need_premises(1);
      premise_modes_match();
      if (!app.channel) throw Error("R.SO needs a superoperator");
      const CorrectnessFormula& prem = app.premises[0];
      ck.disjoint_from_program(app.aux_vars, prem.prog, "R.SO");
      long vd = 1;
      for (const auto& v : app.aux_vars) vd *= decls.vars.dim_of(v);
      if (app.channel->dim_in() != vd || app.channel->dim_out() != vd)
        throw Error("R.SO: superoperator does not match its variables");
      Superoperator g = app.channel->embedded(app.aux_vars, decls.vars);
      Matrix pre, post;
      if (app.direction == SoDirection::Dual) {
        pre = g.dual_apply(prem.pre);
        post = g.dual_apply(prem.post);
      } else {
        pre = g.apply(prem.pre);
        post = g.apply(prem.post);
        if (app.mode == Mode::Partial) {
          Matrix gi = Matrix::Zero(vd, vd);
          for (const auto& kk : app.channel->kraus()) gi += kk * kk.adjoint();
          if (min_eigenvalue(identity(vd) - gi) < -tol.psd)
            ck.violated(
                "R.SO (forward): sum E E^dag exceeds I, so the forward map "
                "is unsound for partial correctness");
        }
      }
      ck.require_predicate(pre, "R.SO: transformed precondition");
      ck.require_predicate(post, "R.SO: transformed postcondition");
      result.formula = {std::move(pre), prem.prog, std::move(post), app.mode};
      break;
    }
  }

  return result;
}

DerivationReport verify_derivation(const Declarations& decls,
                                   const Derivation& derivation,
                                   bool semantic_check, double tol,
                                   const Tolerances& tols) {
  DerivationReport report;
  report.ok = true;
  std::vector<CorrectnessFormula> formulas(derivation.nodes.size());
  for (size_t i = 0; i < derivation.nodes.size(); ++i) {
    const DerivationNode& node = derivation.nodes[i];
    RuleApplication app = node.app;
    app.mode = derivation.mode;
    app.premises.clear();
    for (size_t child : node.children) {
      if (child >= i)
        throw Error("derivation node " + node.name +
                    " references a later node");
      app.premises.push_back(formulas[child]);
    }
    NodeReport nr;
    nr.name = node.name;
    nr.rule = rule_name(node.app.tag);
    try {
      RuleResult rr = apply_rule(decls, app, tols);
      nr.ok = rr.ok;
      nr.violations = std::move(rr.violations);
      nr.formula = rr.formula;
      formulas[i] = nr.formula;
    } catch (const Error& e) {
      nr.ok = false;
      nr.violations.push_back(e.what());
      formulas[i] = CorrectnessFormula{
          Matrix::Zero(decls.vars.dim(), decls.vars.dim()), make_skip(),
          Matrix::Zero(decls.vars.dim(), decls.vars.dim()), derivation.mode};
    }
    if (!nr.ok) report.ok = false;
    if (semantic_check && nr.formula.prog) {
      nr.semantic = check_triple(decls, nr.formula, tol);
      if (!nr.semantic->holds) report.semantic_ok = false;
    }
    report.nodes.push_back(std::move(nr));
  }
  return report;
}

}  // namespace qwv
