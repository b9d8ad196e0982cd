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

#include "qwv/outline.hpp"

#include <algorithm>
#include <limits>

#include "qwv/semantics.hpp"

namespace qwv {

namespace {

/** First statement of a block in execution order. */
const Stmt* leftmost(const Stmt* s) {
  while (s->kind == StmtKind::Seq) s = s->lhs.get();
  return s;
}

struct Standardizer {
  const Declarations& decls;
  Mode mode;
  WpOptions wp_opts;
  const Tolerances& tol;
  StandardOutline out;

  Matrix wp_of(const StmtPtr& s, const Matrix& post) {
    return wp_total(decls, s, post, wp_opts).wp;
  }

  /** Records the effective pre of a non-sequence node; returns the
   * exposed (outermost) one. */
  Matrix record(const Stmt* s, Matrix computed) {
    if (s->pre.empty()) {
      out.pre[s] = computed;
      out.user[s] = false;
      return computed;
    }
    out.pre[s] = s->pre.back().pred;
    out.user[s] = true;
    return s->pre.front().pred;
  }

  /** Visits a block root, routing the post through trailing annotations. */
  Matrix visit_block(const StmtPtr& s, const Matrix& outer_post) {
    Matrix inner_post =
        s->post.empty() ? outer_post : s->post.front().pred;
    return visit(s, inner_post);
  }

  Matrix visit(const StmtPtr& sp, const Matrix& post) {
    const Stmt* s = sp.get();
    switch (s->kind) {
      case StmtKind::Skip:
      case StmtKind::Init:
      case StmtKind::Unitary:
        return record(s, wp_of(sp, post));
      case StmtKind::Seq: {
        Matrix mid = visit(s->rhs, post);
        Matrix exposed = visit(s->lhs, mid);
        const Stmt* first = leftmost(s);
        out.pre[s] = out.pre.at(first);
        out.user[s] = out.user.at(first);
        return exposed;
      }
      case StmtKind::Case: {
        const Measurement& m = decls.measurement(s->meas);
        Matrix combined =
            Matrix::Zero(decls.vars.dim(), decls.vars.dim());
        for (size_t i = 0; i < s->branches.size(); ++i) {
          Matrix head = visit_block(s->branches[i].body, post);
          Matrix op = embed(m.ops[i], s->vars, decls.vars);
          combined += op.adjoint() * head * op;
        }
        return record(s, std::move(combined));
      }
      case StmtKind::While: {
        auto [m_exit, m_cont] = while_ops(*s, decls);
        Matrix e = embed(m_exit, s->vars, decls.vars);
        Matrix k = embed(m_cont, s->vars, decls.vars);
        const Stmt* body_head = leftmost(s->body.get());
        Matrix invariant;
        if (!body_head->pre.empty()) {
          invariant = body_head->pre.front().pred;
        } else if (mode == Mode::Total) {
          // Infer through the loop fixed point: B = wp(body, wp(loop, A)).
          Matrix loop_wp = wp_of(sp, post);
          invariant = wp_of(s->body, loop_wp);
        } else {
          throw Error(
              "loop at " + s->loc.str() +
              " needs a user-written invariant annotation at the head of "
              "its body for partial-correctness outlines");
        }
        Matrix combined = e.adjoint() * post * e +
                          k.adjoint() * invariant * k;
        out.loops[s] = LoopInfo{invariant, post, combined};
        visit_block(s->body, combined);
        return record(s, std::move(combined));
      }
    }
    throw Error("unreachable statement kind");
  }
};

std::string prov(const char* rule, const SourceLoc& loc) {
  return std::string(rule) + "@" + loc.str();
}

struct VcWalker {
  const Declarations& decls;
  const StandardOutline& outline;
  WpOptions wp_opts;
  const std::vector<Matrix>& ranking_states;
  long ranking_reach;
  const Tolerances& tol;
  VcGenResult result;

  void emit(Matrix lhs, Matrix rhs, std::string provenance) {
    result.vcs.push_back(
        VerificationCondition{std::move(lhs), std::move(rhs),
                              std::move(provenance)});
  }

  void chain(const std::vector<Annot>& annots) {
    for (size_t i = 0; i + 1 < annots.size(); ++i)
      emit(annots[i].pred, annots[i + 1].pred,
           prov("R.Or'", annots[i + 1].loc));
  }

  Matrix exposed(const StmtPtr& s) const {
    const Stmt* first = leftmost(s.get());
    return first->pre.empty() ? outline.pre.at(first)
                              : first->pre.front().pred;
  }

  /** Handles a block root's trailing annotations against the outer post;
   * returns the post seen by the block's statements. */
  Matrix block_post(const StmtPtr& s, const Matrix& outer_post,
                    bool outer_is_formula_post) {
    if (s->post.empty()) return outer_post;
    chain(s->post);
    if (!outer_is_formula_post)
      emit(s->post.back().pred, outer_post, prov("R.Or'", s->post.back().loc));
    return s->post.front().pred;
  }

  void visit_block(const StmtPtr& s, const Matrix& outer_post,
                   bool outer_is_formula_post = false) {
    Matrix inner = block_post(s, outer_post, outer_is_formula_post);
    visit(s, inner);
  }

  void visit(const StmtPtr& sp, const Matrix& post) {
    const Stmt* s = sp.get();
    if (s->kind != StmtKind::Seq) chain(s->pre);
    switch (s->kind) {
      case StmtKind::Skip:
        emit(outline.pre.at(s), post, prov("Ax.Sk'", s->loc));
        break;
      case StmtKind::Init:
        emit(outline.pre.at(s), wp_total(decls, sp, post, wp_opts).wp,
             prov("Ax.In'", s->loc));
        break;
      case StmtKind::Unitary:
        emit(outline.pre.at(s), wp_total(decls, sp, post, wp_opts).wp,
             prov("Ax.UT'", s->loc));
        break;
      case StmtKind::Seq: {
        Matrix mid = exposed(s->rhs);
        visit(s->lhs, mid);
        visit(s->rhs, post);
        break;
      }
      case StmtKind::Case: {
        const Measurement& m = decls.measurement(s->meas);
        Matrix combined =
            Matrix::Zero(decls.vars.dim(), decls.vars.dim());
        for (size_t i = 0; i < s->branches.size(); ++i) {
          Matrix op = embed(m.ops[i], s->vars, decls.vars);
          combined += op.adjoint() * exposed(s->branches[i].body) * op;
        }
        emit(outline.pre.at(s), std::move(combined), prov("R.IF'", s->loc));
        for (const auto& b : s->branches) visit_block(b.body, post);
        break;
      }
      case StmtKind::While: {
        const LoopInfo& li = outline.loops.at(s);
        emit(outline.pre.at(s), li.combined, prov("R.LP'", s->loc));
        visit_block(s->body, li.combined);
        if (outline.mode == Mode::Total) {
          RankingObligation ob;
          ob.loop = s;
          ob.provenance = prov("R.LT'", s->loc);
          auto it = outline.rankings.find(s);
          if (it != outline.rankings.end()) {
            ob.evidence_supplied = true;
            RankingSpec spec = it->second;
            auto [m_exit, m_cont] = while_ops(*s, decls);
            Matrix k = embed(m_cont, s->vars, decls.vars);
            spec.target = k.adjoint() * li.invariant * k;
            ob.report = ranking_check(decls, sp, spec, ranking_states,
                                      ranking_reach, tol);
          }
          result.rankings.push_back(std::move(ob));
        }
        break;
      }
    }
  }
};

}  // namespace

StandardOutline standardize(const Program& program, Mode mode,
                            const WpOptions& wp_opts,
                            const std::map<const Stmt*, RankingSpec>& rankings,
                            const Tolerances& tol) {
  Standardizer st{program.decls, mode, wp_opts, tol, {}};
  st.out.program = program;
  st.out.mode = mode;
  st.out.rankings = rankings;

  const Stmt* first = leftmost(program.root.get());
  if (first->pre.empty())
    throw Error("outline needs a leading predicate annotation");
  if (program.root->post.empty())
    throw Error("outline needs a trailing predicate annotation");
  st.out.formula_post = program.root->post.back().pred;

  Matrix inner_post = program.root->post.front().pred;
  Matrix exposed = st.visit(program.root, inner_post);
  st.out.formula_pre = std::move(exposed);
  return std::move(st.out);
}

VcGenResult vcgen(const StandardOutline& outline, const WpOptions& wp_opts,
                  const std::vector<Matrix>& ranking_states, long ranking_reach,
                  const Tolerances& tol) {
  VcWalker walker{outline.program.decls, outline,          wp_opts,
                  ranking_states,        ranking_reach, tol,
                  {}};
  walker.visit_block(outline.program.root, outline.formula_post,
                     /*outer_is_formula_post=*/true);
  return std::move(walker.result);
}

DischargeReport discharge(const std::vector<VerificationCondition>& vcs,
                          double tol) {
  DischargeReport report;
  report.all_hold = true;
  for (const auto& vc : vcs) {
    LoewnerVerdict lw = loewner_leq(vc.lhs, vc.rhs, tol);
    VcVerdict v;
    v.provenance = vc.provenance;
    v.holds = lw.holds;
    v.min_eig = lw.min_eig;
    v.witness = lw.witness;
    if (!v.holds) report.all_hold = false;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

SoundnessTraceReport strong_soundness_trace(const StandardOutline& outline,
                                            const Matrix& rho, long max_steps,
                                            double tol) {
  const Declarations& decls = outline.program.decls;
  const StmtPtr& root = outline.program.root;

  // Precompute every possible remainder at(T, P) with its annotation.
  std::vector<std::pair<StmtPtr, const Stmt*>> remainders;
  for (const auto& [path, node] : subprograms(root))
    remainders.emplace_back(at_remainder(root, path), node.get());

  SoundnessTraceReport report;
  report.ok = true;
  report.worst_margin = std::numeric_limits<double>::infinity();
  const double lhs = expectation(outline.formula_pre, rho);

  Ensemble ens;
  ens.push_back(Configuration{root, rho, trace_of(rho).real() <= 1e-14, 0});
  for (long step_index = 0;; ++step_index) {
    double rhs = 0.0;
    for (const auto& c : ens) {
      if (c.terminated()) {
        rhs += expectation(outline.formula_post, c.state);
        continue;
      }
      const Stmt* matched = nullptr;
      for (const auto& [rem, node] : remainders) {
        if (stmt_equal(c.remainder, rem)) {
          matched = node;
          break;
        }
      }
      if (!matched) {
        report.ok = false;
        report.violation = SoundnessViolation{
            step_index,
            "live remainder is not at(T, P) for any subprogram T:\n" +
                pretty_stmt(c.remainder)};
        return report;
      }
      rhs += expectation(outline.pre.at(matched), c.state);
    }
    report.worst_margin = std::min(report.worst_margin, rhs - lhs);
    if (lhs > rhs + tol) {
      report.ok = false;
      report.violation = SoundnessViolation{
          step_index, "tr(A rho) = " + std::to_string(lhs) +
                          " exceeds sum tr(B_i rho_i) = " +
                          std::to_string(rhs)};
      return report;
    }
    bool any_live = std::any_of(ens.begin(), ens.end(),
                                [](const Configuration& c) {
                                  return !c.terminated();
                                });
    if (!any_live || step_index >= max_steps) {
      report.steps = step_index;
      break;
    }
    ens = step_ensemble(decls, ens);
  }
  return report;
}

namespace {

StmtPtr annotate_clone(const StmtPtr& sp, const StandardOutline& outline) {
  auto c = std::make_shared<Stmt>(*sp);
  switch (sp->kind) {
    case StmtKind::Seq:
      c->lhs = annotate_clone(sp->lhs, outline);
      c->rhs = annotate_clone(sp->rhs, outline);
      break;
    case StmtKind::Case: {
      std::vector<CaseBranch> branches;
      for (const auto& b : sp->branches)
        branches.push_back(
            CaseBranch{b.label, annotate_clone(b.body, outline)});
      c->branches = std::move(branches);
      break;
    }
    case StmtKind::While: {
      c->body = annotate_clone(sp->body, outline);
      if (c->body->post.empty()) {
        auto body = std::make_shared<Stmt>(*c->body);
        body->post = {Annot{outline.loops.at(sp.get()).combined, false,
                            sp->loc}};
        c->body = body;
      }
      break;
    }
    default:
      break;
  }
  // Insert the standardised predicate where the user wrote nothing;
  // user chains are kept verbatim.
  if (sp->kind != StmtKind::Seq && sp->pre.empty())
    c->pre = {Annot{outline.pre.at(sp.get()), false, sp->loc}};
  return c;
}

}  // namespace

Program to_annotated_program(const StandardOutline& outline) {
  Program out;
  out.decls = outline.program.decls;
  out.root = annotate_clone(outline.program.root, outline);
  out.annotated = true;
  return out;
}

}  // namespace qwv
