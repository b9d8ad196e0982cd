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

#include "qwv/wp.hpp"

#include <cmath>

namespace qwv {

namespace {

struct WpState {
  const Declarations* decls;
  WpOptions opts;
  bool converged = true;
  double gap = 0.0;
  long iterations = 0;
  bool monotone = true;
};

Matrix wp_impl(const StmtPtr& prog, const Matrix& post, WpState& st) {
  const Declarations& d = *st.decls;
  const Stmt& s = *prog;
  switch (s.kind) {
    case StmtKind::Skip:
      return post;
    case StmtKind::Init:
      return Superoperator::reset(d.vars.dim_of(s.var))
          .embedded({s.var}, d.vars)
          .dual_apply(post);
    case StmtKind::Unitary: {
      Matrix u = embed(d.gate(s.gate), s.vars, d.vars);
      return u.adjoint() * post * u;
    }
    case StmtKind::Seq:
      return wp_impl(s.lhs, wp_impl(s.rhs, post, st), st);
    case StmtKind::Case: {
      const Measurement& m = d.measurement(s.meas);
      Matrix sum = Matrix::Zero(post.rows(), post.cols());
      for (size_t i = 0; i < m.labels.size(); ++i) {
        Matrix op = embed(m.ops[i], s.vars, d.vars);
        sum += op.adjoint() * wp_impl(s.branches[i].body, post, st) * op;
      }
      return sum;
    }
    case StmtKind::While: {
      auto [m_exit, m_cont] = while_ops(s, d);
      Matrix e = embed(m_exit, s.vars, d.vars);
      Matrix k = embed(m_cont, s.vars, d.vars);
      Matrix exit_part = e.adjoint() * post * e;
      Matrix x = Matrix::Zero(post.rows(), post.cols());
      long iter = 0;
      for (; iter < st.opts.fix_budget; ++iter) {
        Matrix next = exit_part + k.adjoint() * wp_impl(s.body, x, st) * k;
        double change = max_abs(next - x);
        if (min_eigenvalue(next - x) < -1e-8) st.monotone = false;
        x = std::move(next);
        if (change < st.opts.fix_tol) {
          st.gap = std::max(st.gap, change);
          break;
        }
        if (iter + 1 == st.opts.fix_budget) {
          st.converged = false;
          st.gap = std::max(st.gap, change);
        }
      }
      st.iterations += iter + 1;
      return x;
    }
  }
  throw Error("unreachable statement kind");
}

}  // namespace

WpResult wp_total(const Declarations& decls, const StmtPtr& prog,
                  const Matrix& post, const WpOptions& opts) {
  if (post.rows() != post.cols() || post.rows() != decls.vars.dim())
    throw Error("wp: postcondition does not match the declared space");
  if (!is_hermitian(post, 1e-9))
    throw Error("wp: postcondition must be Hermitian");
  WpState st;
  st.decls = &decls;
  st.opts = opts;
  Matrix wp = wp_impl(prog, post, st);
  return WpResult{std::move(wp), st.converged, st.gap, st.iterations,
                  st.monotone};
}

WpResult wp_partial_bound(const Declarations& decls, const StmtPtr& prog,
                          const Matrix& post, const WpOptions& opts) {
  WpResult of_post = wp_total(decls, prog, post, opts);
  WpResult of_id =
      wp_total(decls, prog, identity(decls.vars.dim()), opts);
  Matrix bound =
      of_post.wp + identity(decls.vars.dim()) - of_id.wp;
  WpResult out;
  out.wp = clamp_eigenvalues(bound, 0.0, 1.0);
  out.converged = of_post.converged && of_id.converged;
  out.gap = std::max(of_post.gap, of_id.gap);
  out.iterations = of_post.iterations + of_id.iterations;
  out.monotone = of_post.monotone && of_id.monotone;
  return out;
}

TripleVerdict check_triple(const Declarations& decls,
                           const CorrectnessFormula& f, double tol,
                           const WpOptions& opts) {
  WpResult wp = f.mode == Mode::Total
                    ? wp_total(decls, f.prog, f.post, opts)
                    : wp_partial_bound(decls, f.prog, f.post, opts);
  LoewnerVerdict lw = loewner_leq(f.pre, wp.wp, tol);
  TripleVerdict verdict;
  verdict.holds = lw.holds;
  verdict.min_eig = lw.min_eig;
  verdict.wp = wp;
  if (!lw.holds && lw.witness) {
    verdict.witness = lw.witness;
    // Evaluate the defining trace inequality at rho = |w><w|.
    Matrix rho = outer(*lw.witness);
    Matrix reached = denote_apply(decls, f.prog, rho);
    verdict.lhs_at_witness = expectation(f.pre, rho);
    double rhs = expectation(f.post, reached);
    if (f.mode == Mode::Partial)
      rhs += trace_of(rho).real() - trace_of(reached).real();
    verdict.rhs_at_witness = rhs;
  }
  return verdict;
}

}  // namespace qwv
