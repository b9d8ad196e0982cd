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

#include <vector>

#include "qwv/ast.hpp"

namespace qwv {

/**
 * A configuration <P, rho>: the remainder still to execute (null once
 * terminated) and the unnormalised state, whose trace carries the branch
 * probability.
 */
struct Configuration {
  StmtPtr remainder;  // null means terminated
  Matrix state;
  bool zero_trace = false;  // kept alive for reachability checks
  long loop_count = 0;      // while-continue transitions taken so far

  bool terminated() const { return remainder == nullptr; }
};

/** A multiset of configurations with total trace at most 1. */
using Ensemble = std::vector<Configuration>;

/** Which live member a multiset step rewrites. */
enum class Selection { Leftmost, Rightmost };

/** All successors of a single live configuration under the step relation. */
std::vector<Configuration> step(const Declarations& decls,
                                const Configuration& c,
                                const Tolerances& tol = {});

/**
 * One multiset transition: replaces the selected live member by its
 * successors in place. Terminated successors of zero trace are pruned;
 * live zero-trace members are kept and flagged.
 */
Ensemble step_ensemble(const Declarations& decls, const Ensemble& ens,
                       Selection sel = Selection::Leftmost,
                       const Tolerances& tol = {});

double ensemble_trace(const Ensemble& ens);

struct RunResult {
  std::vector<Configuration> terminated;
  Ensemble residual;  // still live when the budget ran out
  double terminated_trace = 0.0;
  double residual_trace = 0.0;
  long steps = 0;
  bool budget_exhausted = false;

  /** Sum of all terminated states: the operational value of [P](rho). */
  Matrix terminated_sum(long dim) const;
};

/** Runs the small-step semantics from <P, rho> to exhaustion or budget. */
RunResult run_ensemble(const Declarations& decls, const StmtPtr& prog,
                       const Matrix& rho, long max_steps,
                       Selection sel = Selection::Leftmost,
                       const Tolerances& tol = {});

struct DenoteOptions {
  long max_unroll = 10000;
  double residual_tol = 1e-10;
  double kraus_drop = 1e-12;
};

struct DenoteResult {
  Superoperator op;
  bool truncated = false;   // a loop hit its unroll budget
  double loop_residual = 0; // worst live-branch mass left behind
  long unrollings = 0;      // loop iterations expanded in total
};

/**
 * Kraus form of the denotational semantics. Loops are expanded as the
 * truncated sum of exit branches over iteration counts; the report
 * carries the remaining live mass when truncation bites.
 */
DenoteResult denote(const Declarations& decls, const StmtPtr& prog,
                    const DenoteOptions& opts = {});

Matrix denote_apply(const Declarations& decls, const StmtPtr& prog,
                    const Matrix& rho, const DenoteOptions& opts = {});

struct TerminationSequence {
  std::vector<double> t;  // t[k]: terminated mass within k loop unrollings
  double residual = 0.0;  // live or frozen mass beyond the unroll budget
  bool budget_exhausted = false;
};

/**
 * Monotone nondecreasing termination masses t_0 <= t_1 <= ... <= t_N,
 * bucketed by the number of while-continue transitions a terminating
 * branch used.
 */
TerminationSequence termination_prob(const Declarations& decls,
                                     const StmtPtr& prog, const Matrix& rho,
                                     long max_unrollings,
                                     long step_budget = 2000000,
                                     const Tolerances& tol = {});

}  // namespace qwv
