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

#include "qwv/semantics.hpp"

#include <cmath>

namespace qwv {

namespace {

constexpr double kZeroTrace = 1e-14;

Matrix embedded_gate(const Declarations& d, const Stmt& s) {
  return embed(d.gate(s.gate), s.vars, d.vars);
}

}  // namespace

std::vector<Configuration> step(const Declarations& decls,
                                const Configuration& c,
                                const Tolerances& tol) {
  if (c.terminated()) throw Error("cannot step a terminated configuration");
  const Stmt& s = *c.remainder;
  auto succ = [&](StmtPtr rem, Matrix state, long extra_loops = 0) {
    Configuration out;
    out.remainder = std::move(rem);
    out.zero_trace = trace_of(state).real() <= kZeroTrace;
    out.state = std::move(state);
    out.loop_count = c.loop_count + extra_loops;
    return out;
  };

  switch (s.kind) {
    case StmtKind::Skip:
      return {succ(nullptr, c.state)};
    case StmtKind::Init: {
      Superoperator reset =
          Superoperator::reset(decls.vars.dim_of(s.var))
              .embedded({s.var}, decls.vars);
      return {succ(nullptr, reset.apply(c.state))};
    }
    case StmtKind::Unitary: {
      Matrix u = embedded_gate(decls, s);
      return {succ(nullptr, u * c.state * u.adjoint())};
    }
    case StmtKind::Seq: {
      Configuration inner{c.remainder->lhs, c.state, c.zero_trace,
                          c.loop_count};
      std::vector<Configuration> successors = step(decls, inner, tol);
      for (auto& nxt : successors) {
        nxt.remainder = nxt.remainder == nullptr
                            ? s.rhs
                            : make_seq(nxt.remainder, s.rhs, s.loc);
      }
      return successors;
    }
    case StmtKind::Case: {
      const Measurement& m = decls.measurement(s.meas);
      std::vector<Configuration> successors;
      for (size_t i = 0; i < m.labels.size(); ++i) {
        Matrix op = embed(m.ops[i], s.vars, decls.vars);
        successors.push_back(
            succ(s.branches[i].body, op * c.state * op.adjoint()));
      }
      return successors;
    }
    case StmtKind::While: {
      auto [m_exit, m_cont] = while_ops(s, decls);
      Matrix e = embed(m_exit, s.vars, decls.vars);
      Matrix k = embed(m_cont, s.vars, decls.vars);
      std::vector<Configuration> successors;
      successors.push_back(succ(nullptr, e * c.state * e.adjoint()));
      successors.push_back(
          succ(make_seq(s.body, c.remainder, s.loc), k * c.state * k.adjoint(),
               /*extra_loops=*/1));
      return successors;
    }
  }
  throw Error("unreachable statement kind");
}

Ensemble step_ensemble(const Declarations& decls, const Ensemble& ens,
                       Selection sel, const Tolerances& tol) {
  long chosen = -1;
  if (sel == Selection::Leftmost) {
    for (size_t i = 0; i < ens.size(); ++i)
      if (!ens[i].terminated()) {
        chosen = static_cast<long>(i);
        break;
      }
  } else {
    for (long i = static_cast<long>(ens.size()) - 1; i >= 0; --i)
      if (!ens[i].terminated()) {
        chosen = i;
        break;
      }
  }
  if (chosen < 0) throw Error("step_ensemble: no live configuration");
  Ensemble out;
  out.reserve(ens.size() + 1);
  for (long i = 0; i < static_cast<long>(ens.size()); ++i) {
    if (i != chosen) {
      out.push_back(ens[i]);
      continue;
    }
    for (auto& nxt : step(decls, ens[i], tol)) {
      if (nxt.terminated() && nxt.zero_trace) continue;  // prune dead mass
      out.push_back(std::move(nxt));
    }
  }
  return out;
}

double ensemble_trace(const Ensemble& ens) {
  double t = 0.0;
  for (const auto& c : ens) t += trace_of(c.state).real();
  return t;
}

Matrix RunResult::terminated_sum(long dim) const {
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& c : terminated) sum += c.state;
  return sum;
}

RunResult run_ensemble(const Declarations& decls, const StmtPtr& prog,
                       const Matrix& rho, long max_steps, Selection sel,
                       const Tolerances& tol) {
  RunResult result;
  Ensemble live;
  live.push_back(Configuration{prog, rho,
                               trace_of(rho).real() <= kZeroTrace, 0});
  while (!live.empty() && result.steps < max_steps) {
    live = step_ensemble(decls, live, sel, tol);
    ++result.steps;
    Ensemble still_live;
    for (auto& c : live) {
      if (c.terminated())
        result.terminated.push_back(std::move(c));
      else
        still_live.push_back(std::move(c));
    }
    live = std::move(still_live);
  }
  result.budget_exhausted = !live.empty();
  result.residual = std::move(live);
  for (const auto& c : result.terminated)
    result.terminated_trace += trace_of(c.state).real();
  result.residual_trace = ensemble_trace(result.residual);
  return result;
}

namespace {

struct DenoteState {
  const Declarations* decls;
  DenoteOptions opts;
  bool truncated = false;
  double worst_residual = 0.0;
  long unrollings = 0;
};

Superoperator denote_impl(const StmtPtr& prog, DenoteState& st) {
  const Declarations& d = *st.decls;
  const long full = d.vars.dim();
  const Stmt& s = *prog;
  switch (s.kind) {
    case StmtKind::Skip:
      return Superoperator::identity(full);
    case StmtKind::Init:
      return Superoperator::reset(d.vars.dim_of(s.var))
          .embedded({s.var}, d.vars);
    case StmtKind::Unitary:
      return Superoperator::unitary(embedded_gate(d, s));
    case StmtKind::Seq:
      return compose(denote_impl(s.lhs, st), denote_impl(s.rhs, st));
    case StmtKind::Case: {
      const Measurement& m = d.measurement(s.meas);
      std::vector<Matrix> kraus;
      for (size_t i = 0; i < m.labels.size(); ++i) {
        Superoperator branch =
            Superoperator::branch(embed(m.ops[i], s.vars, d.vars));
        Superoperator arm = compose(branch, denote_impl(s.branches[i].body, st));
        for (const auto& k : arm.kraus()) kraus.push_back(k);
      }
      return Superoperator::from_kraus_unchecked(std::move(kraus))
          .pruned(st.opts.kraus_drop);
    }
    case StmtKind::While: {
      auto [m_exit, m_cont] = while_ops(s, d);
      Matrix e = embed(m_exit, s.vars, d.vars);
      Matrix k = embed(m_cont, s.vars, d.vars);
      Superoperator body = denote_impl(s.body, st);

      // Exit branches by iteration count: M0 o (body o M1)^k. `live`
      // holds the Kraus list of (body o M1)^k.
      std::vector<Matrix> out_kraus;
      std::vector<Matrix> live{identity(full)};
      double residual = 1.0;
      long iter = 0;
      for (;; ++iter) {
        for (const auto& l : live) {
          Matrix exit_op = e * l;
          if (operator_norm(exit_op) >= st.opts.kraus_drop)
            out_kraus.push_back(std::move(exit_op));
        }
        // Live mass bound: largest eigenvalue of sum_l l^dag l.
        Matrix gram = Matrix::Zero(full, full);
        for (const auto& l : live) gram += l.adjoint() * l;
        residual = std::max(0.0, hermitian_eig(gram).first.maxCoeff());
        if (residual < st.opts.residual_tol) break;
        if (iter >= st.opts.max_unroll) {
          st.truncated = true;
          break;
        }
        std::vector<Matrix> next;
        for (const auto& l : live)
          for (const auto& b : body.kraus()) {
            Matrix cand = b * (k * l);
            if (operator_norm(cand) >= st.opts.kraus_drop)
              next.push_back(std::move(cand));
          }
        live = std::move(next);
        if (live.empty()) {
          residual = 0.0;
          break;
        }
      }
      st.unrollings += iter;
      st.worst_residual = std::max(st.worst_residual, residual);
      if (out_kraus.empty()) out_kraus.push_back(zeros(full, full));
      return Superoperator::from_kraus_unchecked(std::move(out_kraus));
    }
  }
  throw Error("unreachable statement kind");
}

}  // namespace

DenoteResult denote(const Declarations& decls, const StmtPtr& prog,
                    const DenoteOptions& opts) {
  DenoteState st;
  st.decls = &decls;
  st.opts = opts;
  DenoteResult result{denote_impl(prog, st), st.truncated, st.worst_residual,
                      st.unrollings};
  return result;
}

Matrix denote_apply(const Declarations& decls, const StmtPtr& prog,
                    const Matrix& rho, const DenoteOptions& opts) {
  return denote(decls, prog, opts).op.apply(rho);
}

TerminationSequence termination_prob(const Declarations& decls,
                                     const StmtPtr& prog, const Matrix& rho,
                                     long max_unrollings, long step_budget,
                                     const Tolerances& tol) {
  TerminationSequence seq;
  std::vector<double> buckets(static_cast<size_t>(max_unrollings) + 1, 0.0);
  Ensemble live;
  live.push_back(Configuration{prog, rho,
                               trace_of(rho).real() <= kZeroTrace, 0});
  double frozen = 0.0;
  long steps = 0;
  while (!live.empty() && steps < step_budget) {
    live = step_ensemble(decls, live, Selection::Leftmost, tol);
    ++steps;
    Ensemble keep;
    for (auto& c : live) {
      if (c.terminated()) {
        long k = std::min(c.loop_count, max_unrollings);
        if (c.loop_count <= max_unrollings)
          buckets[static_cast<size_t>(k)] += trace_of(c.state).real();
        else
          frozen += trace_of(c.state).real();
      } else if (c.loop_count > max_unrollings) {
        frozen += trace_of(c.state).real();  // beyond the unroll horizon
      } else {
        keep.push_back(std::move(c));
      }
    }
    live = std::move(keep);
  }
  seq.budget_exhausted = !live.empty();
  frozen += ensemble_trace(live);
  double acc = 0.0;
  seq.t.reserve(buckets.size());
  for (double b : buckets) {
    acc += b;
    seq.t.push_back(acc);
  }
  seq.residual = frozen;
  return seq;
}

}  // namespace qwv
