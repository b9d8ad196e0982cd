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

#include <string>
#include <vector>

#include "qwv/semantics.hpp"

namespace qwv {

/** One channel-labelled control-flow edge. */
struct Transition {
  int from = 0;
  int to = 0;
  Superoperator op;
  std::string tag;  // statement or branch that produced the edge
};

/**
 * A superoperator-valued transition system: the control-flow graph of a
 * program with one location per subprogram entry plus a single exit.
 * The outgoing channels of every non-exit location sum to a
 * trace-preserving map.
 */
struct Svts {
  VarSpace space;
  int locations = 0;
  int initial = 0;
  int exit = 0;
  Matrix theta;  // initial predicate
  std::vector<Transition> transitions;
  std::vector<std::string> location_names;

  std::vector<int> outgoing(int loc) const;  // transition indices
  /** Max-abs entry of (sum of outgoing duals of I) - I at a location. */
  double trace_preserving_residual(int loc) const;
  /** Textual dump, one transition per line. */
  std::string dump() const;
};

Svts build_svts(const Declarations& decls, const StmtPtr& prog,
                const Matrix& theta, const Tolerances& tol = {});

/** A path through the SVTS with its composed channel. */
struct SvtsPath {
  std::vector<int> transitions;
  Superoperator op;
};

struct PrimePathSet {
  std::vector<SvtsPath> paths;  // no member is a proper prefix of another
  Superoperator total;          // sum of the path channels
  bool truncated = false;       // unexplored extensions hit max_len
};

/**
 * The first-reach prime set at a location: every path from the initial
 * location whose endpoint is the target and whose proper prefixes never
 * visit it, truncated at max_len transitions.
 */
PrimePathSet prime_paths(const Svts& svts, int target, long max_len);

/**
 * Every path from the initial location to the target with at most
 * max_len transitions, including ones that revisit the target. Any
 * prefix-free subset of these is a prime set.
 */
PrimePathSet all_paths(const Svts& svts, int target, long max_len);

struct InvariantSubsetCheck {
  std::string which;      // "first-reach cutoff k", "singleton i", "random"
  double op_margin = 0;   // min eig of I - E*(I) + E*(O) - Theta
  double sample_margin = 0;  // worst sampled rhs - lhs
};

struct InvariantReport {
  bool holds_bounded = false;   // all checked subsets pass
  bool inconclusive_beyond_cutoff = false;
  double worst_margin = 0.0;
  std::string worst_subset;
  std::vector<InvariantSubsetCheck> checks;
  std::optional<Vector> witness;  // eigvector behind the worst margin
  unsigned long long seed = 0;
  long cutoff = 0;
};

/**
 * Bounded invariant check at a location: for the first-reach prime set
 * at every cutoff, every singleton, and `subset_budget` random prime
 * subsets, verifies tr(Theta rho) <= 1 - tr(E(rho)) + tr(O E(rho)),
 * both in operator form and on sampled states (random densities plus
 * the eigenvectors of Theta). A pass is always labelled with the
 * cutoff; it is never an unbounded claim.
 */
InvariantReport check_invariant(const Svts& svts, int location, const Matrix& o,
                                long max_len, long subset_budget,
                                long sample_count, unsigned long long seed,
                                double tol);

enum class TerminationVerdict {
  ConvergedCertain,    // probability >= 1 - tol
  ConvergedBelow,      // converged but short of 1 - tol
  Inconclusive,
};

struct TerminateReport {
  std::vector<double> probabilities;  // monotone nondecreasing sequence
  double final_probability = 0.0;
  double residual = 0.0;
  TerminationVerdict verdict = TerminationVerdict::Inconclusive;
  std::string reason;
};

/**
 * Wraps the termination-probability sequence with convergence
 * detection: residual live mass below tolerance, a vanishing exit
 * branch (the loop can never terminate further), or a geometric tail
 * bound when iterated continue-branch duals contract.
 */
TerminateReport terminate_report(const Declarations& decls,
                                 const StmtPtr& prog, const Matrix& rho,
                                 long budget, double tol = 1e-6);

}  // namespace qwv
