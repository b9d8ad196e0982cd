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

#include <optional>
#include <string>
#include <vector>

#include "qwv/wp.hpp"

namespace qwv {

enum class RuleTag {
  AxSk,
  AxInB,
  AxInI,
  AxUT,
  RSC,
  RIF,
  RLP,
  RLT,
  ROr,
  AxInv,
  RTI,
  RCC,
  RInv,
  RSO,
};

std::string rule_name(RuleTag tag);
RuleTag rule_from_name(const std::string& name);

/**
 * A ranking certificate for loop termination. The integer measure is
 * t(rho) = ceil(tr(N rho) / eps_rank); alternatively an explicit table
 * assigns t per enumerated state. Both conditions of a ranking function
 * are checked over the supplied states and their iterates:
 *   1. t([body](M1 rho M1^dag)) <= t(rho), and
 *   2. tr(target rho) >= eps implies strict decrease.
 */
struct RankingSpec {
  Matrix observable;       // N, Hermitian and positive
  double eps_rank = 1e-3;  // rounding granularity of the measure
  Matrix target;           // predicate paired with eps
  double eps = 1e-3;
  std::optional<std::vector<long>> table;  // t values by enumeration index
};

struct RankingReport {
  bool pass = true;
  std::string violation;  // names the failed condition and state index
  long states_checked = 0;
  std::vector<long> t_values;  // measure per enumerated state
  bool bounded = false;        // some successors fell outside the table
};

/**
 * Checks the two ranking conditions for each supplied state and every
 * state reachable from them within reach_depth loop iterations.
 */
RankingReport ranking_check(const Declarations& decls, const StmtPtr& loop,
                            const RankingSpec& spec,
                            const std::vector<Matrix>& states,
                            long reach_depth, const Tolerances& tol = {});

/** Whether R.SO maps predicates through the dual or the plain channel. */
enum class SoDirection { Dual, Forward };

/**
 * One rule application: the tag selects which side-data fields are read.
 * Premises carry the already-proved conclusions of subderivations.
 */
struct RuleApplication {
  RuleTag tag = RuleTag::AxSk;
  Mode mode = Mode::Partial;
  std::vector<CorrectnessFormula> premises;

  StmtPtr stmt;  // axiom statement, or the program for Ax.Inv
  Matrix post;   // axiom postcondition A

  std::string meas;  // R.IF / R.LP / R.LT
  std::vector<std::string> meas_vars;
  std::string continue_label;  // R.LP / R.LT
  Matrix loop_post;            // A of R.LP / R.LT
  Matrix loop_invariant;       // B of R.LP / R.LT

  Matrix weaker_pre;    // R.Or A
  Matrix stronger_post; // R.Or B

  std::vector<double> weights;  // R.CC

  double p = 0.0, q = 0.0;            // R.Inv
  Matrix aux_pred;                    // Ax.Inv / R.Inv predicate on aux_vars
  std::vector<std::string> aux_vars;  // Ax.Inv V, R.TI W, R.Inv V, R.SO V

  std::optional<Superoperator> channel;  // R.SO, on aux_vars
  SoDirection direction = SoDirection::Dual;

  std::optional<RankingSpec> ranking;  // R.LT evidence
  std::vector<Matrix> ranking_states;
  long ranking_reach = 4;
};

/**
 * Result of a rule application. `ok` is true only when every side
 * condition of the rule holds; otherwise `violations` names each failed
 * condition. The conclusion formula is returned in both cases so that
 * reports can show what the rule would conclude.
 */
struct RuleResult {
  CorrectnessFormula formula;
  bool ok = true;
  std::vector<std::string> violations;
};

RuleResult apply_rule(const Declarations& decls, const RuleApplication& app,
                      const Tolerances& tol = {});

/** A derivation node; children are indices of earlier nodes. */
struct DerivationNode {
  std::string name;
  RuleApplication app;  // premises are filled from children when verified
  std::vector<size_t> children;
};

struct Derivation {
  std::vector<DerivationNode> nodes;  // children precede parents
  size_t root = 0;
  Mode mode = Mode::Partial;
};

struct NodeReport {
  std::string name;
  std::string rule;
  bool ok = false;
  std::vector<std::string> violations;
  CorrectnessFormula formula;
  std::optional<TripleVerdict> semantic;  // filled by the cross-check
};

struct DerivationReport {
  bool ok = false;            // all side conditions hold
  bool semantic_ok = true;    // all cross-checked triples hold
  std::vector<NodeReport> nodes;
};

/**
 * Machine-checks a derivation bottom-up. With semantic_check, every
 * node's conclusion is additionally decided against the semantics via
 * check_triple.
 */
DerivationReport verify_derivation(const Declarations& decls,
                                   const Derivation& derivation,
                                   bool semantic_check, double tol,
                                   const Tolerances& tols = {});

}  // namespace qwv
