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

#include <map>
#include <string>
#include <vector>

#include "qwv/rules.hpp"

namespace qwv {

/** Data kept per while-loop of a standardised outline. */
struct LoopInfo {
  Matrix invariant;  // B: the predicate entering the loop body
  Matrix post;       // A: the predicate after the loop
  Matrix combined;   // M0^dag A M0 + M1^dag B M1
};

/**
 * A standard proof outline: every subprogram carries exactly one
 * effective preceding predicate. User annotation chains are preserved on
 * the tree; the maps record the collapsed form.
 */
struct StandardOutline {
  Program program;
  Mode mode = Mode::Partial;
  Matrix formula_pre;   // A of {A} P* {B}: the outermost leading predicate
  Matrix formula_post;  // B: the outermost trailing predicate
  std::map<const Stmt*, Matrix> pre;  // effective pre per subprogram
  std::map<const Stmt*, bool> user;   // whether pre was user-written
  std::map<const Stmt*, LoopInfo> loops;
  std::map<const Stmt*, RankingSpec> rankings;  // total mode, by loop node
};

/**
 * Completes a partial outline into a standard one by propagating
 * weakest preconditions backwards from the nearest following
 * annotation. User annotations are never altered. Loops in partial mode
 * must carry a user invariant annotation at the head of their body;
 * total mode infers missing loop invariants through the wp fixed point.
 */
StandardOutline standardize(
    const Program& program, Mode mode, const WpOptions& wp_opts = {},
    const std::map<const Stmt*, RankingSpec>& rankings = {},
    const Tolerances& tol = {});

/** One Loewner obligation lhs <= rhs with its provenance. */
struct VerificationCondition {
  Matrix lhs;
  Matrix rhs;
  std::string provenance;  // "rule@line:col"
};

/** Ranking evidence demanded by a loop in a total-mode outline. */
struct RankingObligation {
  const Stmt* loop = nullptr;
  std::string provenance;
  bool evidence_supplied = false;
  RankingReport report;
};

struct VcGenResult {
  std::vector<VerificationCondition> vcs;
  std::vector<RankingObligation> rankings;
};

/**
 * Generates one obligation per annotation boundary following the
 * formation rules: chains of adjacent predicates, the axiom shape at
 * atomic statements, the measurement combination at case statements and
 * the loop-head obligation at while statements.
 */
VcGenResult vcgen(const StandardOutline& outline, const WpOptions& wp_opts = {},
                  const std::vector<Matrix>& ranking_states = {},
                  long ranking_reach = 4, const Tolerances& tol = {});

struct VcVerdict {
  std::string provenance;
  bool holds = false;
  double min_eig = 0.0;
  std::optional<Vector> witness;
};

struct DischargeReport {
  bool all_hold = false;
  std::vector<VcVerdict> verdicts;
};

/** PSD-checks every condition; overall verdict is the conjunction. */
DischargeReport discharge(const std::vector<VerificationCondition>& vcs,
                          double tol);

struct SoundnessViolation {
  long step = 0;
  std::string what;
};

struct SoundnessTraceReport {
  bool ok = false;
  long steps = 0;
  double worst_margin = 0.0;  // min over steps of rhs - lhs
  std::optional<SoundnessViolation> violation;
};

/**
 * Executes the ensemble semantics from <P, rho> and asserts, at every
 * reached ensemble, that (1) each live remainder equals at(T, P) for
 * some subprogram T and (2) tr(A rho) <= sum_i tr(B_i rho_i) + tol with
 * B_i the annotation at T_i, or the trailing predicate once terminated.
 */
SoundnessTraceReport strong_soundness_trace(const StandardOutline& outline,
                                            const Matrix& rho, long max_steps,
                                            double tol);

/**
 * Rebuilds a program whose annotations are exactly the standardised
 * predicates (used for idempotence and annotation-deletion checks).
 */
Program to_annotated_program(const StandardOutline& outline);

}  // namespace qwv
