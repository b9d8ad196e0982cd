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

#include "qwv/ast.hpp"
#include "qwv/semantics.hpp"

namespace qwv {

enum class Mode { Partial, Total };

/** A Hoare triple {pre} prog {post} with its correctness mode. */
struct CorrectnessFormula {
  Matrix pre;
  StmtPtr prog;
  Matrix post;
  Mode mode = Mode::Total;
};

struct WpOptions {
  double fix_tol = 1e-10;   ///< entrywise loop fixed-point convergence
  long fix_budget = 10000;  ///< iteration cap per loop
};

struct WpResult {
  Matrix wp;
  bool converged = true;   ///< false when a loop exhausted fix_budget
  double gap = 0.0;        ///< last entrywise change of any loop iteration
  long iterations = 0;     ///< loop iterations spent in total
  bool monotone = true;    ///< loop iterates stayed Loewner-nondecreasing
};

/**
 * Total-correctness weakest precondition: the dual semantics applied to
 * the postcondition. Loops iterate X <- M0^dag B M0 + M1^dag wp(body, X) M1
 * from X = 0 until the entrywise change drops below fix_tol; when the
 * budget runs out the returned operator is a lower bound and the gap is
 * reported.
 */
WpResult wp_total(const Declarations& decls, const StmtPtr& prog,
                  const Matrix& post, const WpOptions& opts = {});

/**
 * Partial-correctness bound wp(P, B) + I - wp(P, I), computed with one
 * shared truncation; eigenvalues are clipped into [0, 1] only when
 * numerical noise pushes them outside.
 */
WpResult wp_partial_bound(const Declarations& decls, const StmtPtr& prog,
                          const Matrix& post, const WpOptions& opts = {});

struct TripleVerdict {
  bool holds = false;
  double min_eig = 0.0;
  std::optional<Vector> witness;
  // The defining trace inequality re-evaluated at the witness state.
  double lhs_at_witness = 0.0;
  double rhs_at_witness = 0.0;
  WpResult wp;
};

/**
 * Decides a Hoare triple by the Loewner-order characterisation:
 * total mode checks pre <= wp(P, post); partial mode checks
 * pre <= wp(P, post) + I - wp(P, I). On failure the witness is the
 * most-negative eigenvector and the trace inequality is evaluated at
 * the corresponding pure state.
 */
TripleVerdict check_triple(const Declarations& decls,
                           const CorrectnessFormula& f, double tol,
                           const WpOptions& opts = {});

}  // namespace qwv
