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

#include "qwv/svts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qwv/sampling.hpp"

namespace qwv {

std::vector<int> Svts::outgoing(int loc) const {
  std::vector<int> out;
  for (size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].from == loc) out.push_back(static_cast<int>(i));
  return out;
}

double Svts::trace_preserving_residual(int loc) const {
  std::vector<int> out = outgoing(loc);
  if (out.empty()) return 0.0;
  Matrix sum = Matrix::Zero(space.dim(), space.dim());
  for (int t : out) sum += transitions[t].op.dual_of_identity();
  return max_abs(sum - identity(space.dim()));
}

std::string Svts::dump() const {
  std::ostringstream os;
  for (const auto& t : transitions) {
    os << location_names[t.from] << " -> " << location_names[t.to]
       << " : kraus_count=" << t.op.kraus_count()
       << ", trace_preserving_residual=" << trace_preserving_residual(t.from)
       << "  # " << t.tag << "\n";
  }
  return os.str();
}

namespace {

struct SvtsBuilder {
  const Declarations& decls;
  const Tolerances& tol;
  Svts s;

  int alloc() {
    s.location_names.push_back("l" + std::to_string(s.locations));
    return s.locations++;
  }

  void edge(int from, int to, Superoperator op, std::string tag) {
    s.transitions.push_back(
        Transition{from, to, std::move(op), std::move(tag)});
  }

  void build(const StmtPtr& sp, int entry, int exit) {
    const Stmt& st = *sp;
    switch (st.kind) {
      case StmtKind::Skip:
        edge(entry, exit, Superoperator::identity(s.space.dim()), "skip");
        break;
      case StmtKind::Init:
        edge(entry, exit,
             Superoperator::reset(decls.vars.dim_of(st.var))
                 .embedded({st.var}, decls.vars),
             st.var + " := |0>");
        break;
      case StmtKind::Unitary:
        edge(entry, exit,
             Superoperator::unitary(
                 embed(decls.gate(st.gate), st.vars, decls.vars)),
             "apply " + st.gate);
        break;
      case StmtKind::Seq: {
        int mid = alloc();
        build(st.lhs, entry, mid);
        build(st.rhs, mid, exit);
        break;
      }
      case StmtKind::Case: {
        const Measurement& m = decls.measurement(st.meas);
        for (size_t i = 0; i < st.branches.size(); ++i) {
          int bentry = alloc();
          edge(entry, bentry,
               Superoperator::branch(embed(m.ops[i], st.vars, decls.vars)),
               "case " + st.meas + " = " + m.labels[i]);
          build(st.branches[i].body, bentry, exit);
        }
        break;
      }
      case StmtKind::While: {
        auto [m_exit, m_cont] = while_ops(st, decls);
        edge(entry, exit,
             Superoperator::branch(embed(m_exit, st.vars, decls.vars)),
             "while " + st.meas + " exit");
        int bentry = alloc();
        edge(entry, bentry,
             Superoperator::branch(embed(m_cont, st.vars, decls.vars)),
             "while " + st.meas + " continue");
        build(st.body, bentry, entry);
        break;
      }
    }
  }
};

}  // namespace

Svts build_svts(const Declarations& decls, const StmtPtr& prog,
                const Matrix& theta, const Tolerances& tol) {
  SvtsBuilder b{decls, tol, {}};
  b.s.space = decls.vars;
  if (theta.rows() != decls.vars.dim() || theta.cols() != decls.vars.dim())
    throw Error("build_svts: initial predicate does not match the space");
  b.s.theta = theta;
  b.s.initial = b.alloc();
  b.s.exit = b.alloc();
  b.s.location_names[b.s.exit] = "exit";
  b.build(prog, b.s.initial, b.s.exit);
  for (int loc = 0; loc < b.s.locations; ++loc) {
    if (b.s.outgoing(loc).empty()) continue;
    double r = b.s.trace_preserving_residual(loc);
    if (r > tol.eq)
      throw Error("location " + b.s.location_names[loc] +
                  " is not trace-preserving (residual " + std::to_string(r) +
                  ")");
  }
  return std::move(b.s);
}

namespace {

void path_dfs(const Svts& svts, int loc, int target, std::vector<int>& path,
              long max_len, bool stop_at_target, PrimePathSet& out) {
  if (loc == target) {
    Superoperator op = Superoperator::identity(svts.space.dim());
    for (int t : path) op = compose(op, svts.transitions[t].op);
    out.paths.push_back(SvtsPath{path, std::move(op)});
    if (stop_at_target) return;
  }
  std::vector<int> next = svts.outgoing(loc);
  if (static_cast<long>(path.size()) >= max_len) {
    if (!next.empty()) out.truncated = true;
    return;
  }
  for (int t : next) {
    path.push_back(t);
    path_dfs(svts, svts.transitions[t].to, target, path, max_len,
             stop_at_target, out);
    path.pop_back();
  }
}

Superoperator union_of(const std::vector<const SvtsPath*>& paths, long dim) {
  std::vector<Matrix> kraus;
  for (const SvtsPath* p : paths)
    for (const auto& k : p->op.kraus()) kraus.push_back(k);
  if (kraus.empty()) kraus.push_back(Matrix::Zero(dim, dim));
  return Superoperator::from_kraus_unchecked(std::move(kraus));
}

}  // namespace

namespace {

PrimePathSet enumerate_paths(const Svts& svts, int target, long max_len,
                             bool stop_at_target) {
  if (target < 0 || target >= svts.locations)
    throw Error("prime_paths: unknown location");
  PrimePathSet out;
  std::vector<int> path;
  path_dfs(svts, svts.initial, target, path, max_len, stop_at_target, out);
  std::vector<const SvtsPath*> refs;
  for (const auto& p : out.paths) refs.push_back(&p);
  out.total = union_of(refs, svts.space.dim());
  return out;
}

}  // namespace

PrimePathSet prime_paths(const Svts& svts, int target, long max_len) {
  return enumerate_paths(svts, target, max_len, /*stop_at_target=*/true);
}

PrimePathSet all_paths(const Svts& svts, int target, long max_len) {
  return enumerate_paths(svts, target, max_len, /*stop_at_target=*/false);
}

namespace {

struct SubsetOutcome {
  double op_margin;
  double sample_margin;
  Vector op_witness;
};

SubsetOutcome check_subset(const Svts& svts, const Matrix& o,
                           const std::vector<const SvtsPath*>& subset,
                           const std::vector<Matrix>& samples) {
  const long dim = svts.space.dim();
  Superoperator e = union_of(subset, dim);
  Matrix lhs_op = identity(dim) - e.dual_of_identity() + e.dual_apply(o) -
                  svts.theta;
  auto [vals, vecs] = hermitian_eig(lhs_op);
  SubsetOutcome outcome;
  outcome.op_margin = vals(0);
  outcome.op_witness = vecs.col(0);
  outcome.sample_margin = std::numeric_limits<double>::infinity();
  for (const auto& rho : samples) {
    Matrix reached = e.apply(rho);
    double lhs = expectation(svts.theta, rho);
    double rhs = trace_of(rho).real() - trace_of(reached).real() +
                 expectation(o, reached);
    outcome.sample_margin = std::min(outcome.sample_margin, rhs - lhs);
  }
  return outcome;
}

}  // namespace

namespace {

bool path_is_prefix(const SvtsPath& a, const SvtsPath& b) {
  if (a.transitions.size() >= b.transitions.size()) return false;
  return std::equal(a.transitions.begin(), a.transitions.end(),
                    b.transitions.begin());
}

}  // namespace

InvariantReport check_invariant(const Svts& svts, int location, const Matrix& o,
                                long max_len, long subset_budget,
                                long sample_count, unsigned long long seed,
                                double tol) {
  PrimePathSet first = prime_paths(svts, location, max_len);
  PrimePathSet everything = all_paths(svts, location, max_len);
  InvariantReport report;
  report.seed = seed;
  report.cutoff = max_len;
  report.inconclusive_beyond_cutoff = first.truncated || everything.truncated;
  report.holds_bounded = true;
  report.worst_margin = std::numeric_limits<double>::infinity();

  Rng rng(seed);
  std::vector<Matrix> samples;
  for (long i = 0; i < sample_count; ++i)
    samples.push_back(random_density(svts.space.dim(), rng));
  auto [tvals, tvecs] = hermitian_eig(svts.theta);
  for (long i = 0; i < tvals.size(); ++i)
    samples.push_back(outer(Vector(tvecs.col(i))));

  auto run_subset = [&](const std::vector<const SvtsPath*>& subset,
                        const std::string& which) {
    if (subset.empty()) return;
    SubsetOutcome oc = check_subset(svts, o, subset, samples);
    report.checks.push_back(
        InvariantSubsetCheck{which, oc.op_margin, oc.sample_margin});
    double margin = std::min(oc.op_margin, oc.sample_margin);
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_subset = which;
      report.witness = oc.op_witness;
    }
    if (oc.op_margin < -tol || oc.sample_margin < -tol)
      report.holds_bounded = false;
  };

  // Cumulative first-reach sets at every distinct path length.
  std::vector<long> lengths;
  for (const auto& p : first.paths)
    lengths.push_back(static_cast<long>(p.transitions.size()));
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  for (long cut : lengths) {
    std::vector<const SvtsPath*> subset;
    for (const auto& p : first.paths)
      if (static_cast<long>(p.transitions.size()) <= cut)
        subset.push_back(&p);
    run_subset(subset, "first-reach cutoff " + std::to_string(cut));
  }

  // Every singleton of any target-reaching path is a prime set.
  for (size_t i = 0; i < everything.paths.size(); ++i)
    run_subset({&everything.paths[i]}, "singleton " + std::to_string(i));

  // Random prime subsets: prefix-free samples of the full path set.
  if (!everything.paths.empty()) {
    std::uniform_int_distribution<size_t> pick(0, everything.paths.size() - 1);
    std::bernoulli_distribution coin(0.5);
    for (long b = 0; b < subset_budget; ++b) {
      std::vector<const SvtsPath*> subset;
      for (const auto& p : everything.paths) {
        if (!coin(rng)) continue;
        bool compatible = true;
        for (const SvtsPath* q : subset)
          if (path_is_prefix(*q, p) || path_is_prefix(p, *q))
            compatible = false;
        if (compatible) subset.push_back(&p);
      }
      if (subset.empty()) subset.push_back(&everything.paths[pick(rng)]);
      run_subset(subset, "random subset " + std::to_string(b));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Termination reporting.

namespace {

void collect_loops(const StmtPtr& s, std::vector<const Stmt*>& loops) {
  switch (s->kind) {
    case StmtKind::Seq:
      collect_loops(s->lhs, loops);
      collect_loops(s->rhs, loops);
      break;
    case StmtKind::Case:
      for (const auto& b : s->branches) collect_loops(b.body, loops);
      break;
    case StmtKind::While:
      loops.push_back(s.get());
      collect_loops(s->body, loops);
      break;
    default:
      break;
  }
}

}  // namespace

TerminateReport terminate_report(const Declarations& decls,
                                 const StmtPtr& prog, const Matrix& rho,
                                 long budget, double tol) {
  TerminateReport report;
  TerminationSequence seq = termination_prob(decls, prog, rho, budget);
  report.probabilities = seq.t;
  report.final_probability = seq.t.empty() ? 0.0 : seq.t.back();
  report.residual = seq.residual;

  auto classify = [&](const std::string& reason) {
    report.reason = reason;
    report.verdict = report.final_probability >= 1.0 - tol
                         ? TerminationVerdict::ConvergedCertain
                         : TerminationVerdict::ConvergedBelow;
  };

  if (report.residual <= 1e-9) {
    classify("all input mass terminated or was exhausted (residual " +
             std::to_string(report.residual) + ")");
    return report;
  }

  std::vector<const Stmt*> loops;
  collect_loops(prog, loops);
  bool all_exits_zero = !loops.empty();
  for (const Stmt* w : loops) {
    auto [m_exit, m_cont] = while_ops(*w, decls);
    if (operator_norm(m_exit) >= 1e-12) all_exits_zero = false;
  }
  if (all_exits_zero) {
    classify("every loop exit branch is zero; no further mass can terminate");
    return report;
  }

  if (loops.size() == 1) {
    // Contraction test on the continue-branch dual: once iterates of I
    // drop below norm 1 the live mass decays geometrically.
    const Stmt* w = loops.front();
    auto [m_exit, m_cont] = while_ops(*w, decls);
    Matrix k = embed(m_cont, w->vars, decls.vars);
    DenoteResult body = denote(decls, StmtPtr(prog, w->body.get()));
    Matrix r = identity(decls.vars.dim());
    for (int m = 1; m <= 64; ++m) {
      r = k.adjoint() * body.op.dual_apply(r) * k;
      double q = operator_norm(r);
      if (q < 1.0 - 1e-6) {
        double limit_lo = report.final_probability;
        double limit_hi = report.final_probability + report.residual;
        if (limit_lo >= 1.0 - tol) {
          report.verdict = TerminationVerdict::ConvergedCertain;
        } else if (limit_hi < 1.0 - tol) {
          report.verdict = TerminationVerdict::ConvergedBelow;
        } else {
          report.verdict = TerminationVerdict::Inconclusive;
        }
        report.reason = "continue branch contracts (|dual^" +
                        std::to_string(m) + "(I)| = " + std::to_string(q) +
                        "); limit within [" + std::to_string(limit_lo) + ", " +
                        std::to_string(limit_hi) + "]";
        return report;
      }
    }
  }

  report.verdict = TerminationVerdict::Inconclusive;
  report.reason = "residual mass " + std::to_string(report.residual) +
                  " remains and no convergence certificate applies";
  return report;
}

}  // namespace qwv
