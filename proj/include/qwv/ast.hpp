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
#include <memory>
#include <string>
#include <vector>

#include "qwv/operators.hpp"

namespace qwv {

struct SourceLoc {
  int line = 0;
  int col = 0;
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

/** A predicate annotation attached to a program point. */
struct Annot {
  Matrix pred;       // on the full declared space
  bool user = true;  // false for predicates inserted by standardisation
  SourceLoc loc;
};

enum class StmtKind { Skip, Init, Unitary, Seq, Case, While };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct CaseBranch {
  std::string label;
  StmtPtr body;
};

/**
 * One node of a quantum while-program. Statements are immutable after
 * construction and shared freely; sequencing is binary and folded
 * left-associatively by the parser.
 */
struct Stmt {
  StmtKind kind = StmtKind::Skip;
  SourceLoc loc;

  // Annotations textually before this statement, and (for the last
  // statement of a block) the block's trailing annotations.
  std::vector<Annot> pre;
  std::vector<Annot> post;

  std::string var;                // Init target
  std::string gate;               // Unitary gate name
  std::vector<std::string> vars;  // Unitary / Case / While operands

  StmtPtr lhs, rhs;  // Seq

  std::string meas;                 // Case / While measurement name
  std::vector<CaseBranch> branches; // Case, in declaration label order
  StmtPtr body;                     // While
  std::string continue_label;       // While label that re-enters the loop
};

StmtPtr make_skip(SourceLoc loc = {});
StmtPtr make_init(std::string var, SourceLoc loc = {});
StmtPtr make_unitary(std::string gate, std::vector<std::string> vars,
                     SourceLoc loc = {});
StmtPtr make_seq(StmtPtr lhs, StmtPtr rhs, SourceLoc loc = {});
StmtPtr make_case(std::string meas, std::vector<std::string> vars,
                  std::vector<CaseBranch> branches, SourceLoc loc = {});
StmtPtr make_while(std::string meas, std::vector<std::string> vars,
                   std::string continue_label, StmtPtr body,
                   SourceLoc loc = {});

/** A measurement: outcome labels with their operators, in declared order. */
struct Measurement {
  std::vector<std::string> labels;
  std::vector<Matrix> ops;

  long index_of(const std::string& label) const;
};

struct NamedPredicate {
  Matrix mat;                     // on the listed variables
  std::vector<std::string> vars;  // declaration order subset
};

/** Static declaration environment shared by a program and its predicates. */
struct Declarations {
  VarSpace vars;  // all declared variables, in declaration order
  std::map<std::string, Matrix> gates;
  std::map<std::string, Measurement> measurements;
  std::map<std::string, NamedPredicate> predicates;

  const Matrix& gate(const std::string& name) const;
  const Measurement& measurement(const std::string& name) const;
};

/** A parsed program: declarations plus statement tree. */
struct Program {
  Declarations decls;
  StmtPtr root;
  bool annotated = false;  // carries at least one predicate annotation
};

/** Builtin gates (I, X, Y, Z, H, S, T, CNOT, SWAP, CZ). */
const std::map<std::string, Matrix>& builtin_gates();

/** Variables occurring in P, in declaration order. */
std::vector<std::string> vars_of(const StmtPtr& stmt, const Declarations& d);

/** Exit (label 0) and continue (label 1) operators of a While node. */
std::pair<Matrix, Matrix> while_ops(const Stmt& w, const Declarations& d);

/** Structural equality; annotations are ignored. */
bool stmt_equal(const StmtPtr& a, const StmtPtr& b);

/** Navigation step into a statement tree. */
struct PathStep {
  enum Kind { SeqL, SeqR, Branch, Body } kind;
  int branch = 0;  // for Branch
};
using Path = std::vector<PathStep>;

/** All subprograms of root, pre-order, each with its navigation path. */
std::vector<std::pair<Path, StmtPtr>> subprograms(const StmtPtr& root);

StmtPtr stmt_at(const StmtPtr& root, const Path& path);

/**
 * The remainder of `root` still to execute when control sits at the
 * subprogram addressed by `path`:
 *   at(T, P) = P                        if T = P
 *   at(T, P1;P2) = at(T,P1);P2          if T inside P1
 *   at(T, P1;P2) = at(T,P2)             if T inside P2
 *   at(T, if ...) = at(T, P_m)          if T inside branch m
 *   at(T, while ... do P' od) = at(T,P');while...
 */
StmtPtr at_remainder(const StmtPtr& root, const Path& path);

/** Canonical source text; annotations included when with_annotations. */
std::string pretty_print(const Program& program, bool with_annotations = true);
std::string pretty_stmt(const StmtPtr& stmt, int indent = 0,
                        bool with_annotations = false);

}  // namespace qwv
