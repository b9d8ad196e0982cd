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

#include "qwv/ast.hpp"
#include "qwv/lexer.hpp"

namespace qwv {

/**
 * Recursive-descent parser for program files, predicate expressions and
 * state files. Stateless across calls and reentrant; every static check
 * (unitarity of gates, completeness of measurements, predicate bounds,
 * arities, dimension cap) runs during parsing and reports source
 * positions.
 */
class Parser {
 public:
  explicit Parser(const std::string& text, Tolerances tol = {});

  /** Parses `decl* "prog" block` and runs all static checks. */
  Program parse_program();

  /** Parses `decl*`; stops before the first non-declaration token. */
  Declarations parse_declarations();

  /**
   * Predicate expression against an environment. A bare identifier
   * naming a declared predicate is cylindrically extended to the full
   * space; any other expression must already match it.
   */
  Matrix parse_predexpr_on_full_space(const Declarations& decls);

  /** Predicate expression with the dimension implied by the expression. */
  Matrix parse_predexpr(const Declarations& decls);

  /** Ket expression (weighted sums, juxtaposition tensor). */
  Vector parse_ket_expr();

  Complex parse_scalar();
  Matrix parse_matrix_literal();

  /** Statement block `{ stmt* annot* }` against the declarations. */
  StmtPtr parse_block(const Declarations& decls, bool* saw_annotation);

  // Token access, shared with other text formats built on this grammar.
  const Token& peek(int off = 0) const;
  Token next();
  bool at_punct(const std::string& p) const;
  bool accept_punct(const std::string& p);
  Token expect_punct(const std::string& p);
  Token expect_ident();
  Token expect_ident(const std::string& word);
  long expect_int();
  void expect_end();
  [[noreturn]] void fail(const std::string& msg) const;

  const Tolerances& tolerances() const { return tol_; }

 private:
  Matrix parse_pred_term(const Declarations& decls);
  Matrix parse_pred_factor(const Declarations& decls);
  Matrix parse_pred_atom(const Declarations& decls);
  Vector parse_ket_term();
  Vector parse_ket_atom();
  Vector ket_from_token(const Token& tok);
  Complex parse_scalar_term();
  Complex parse_scalar_factor();
  Annot parse_annotation(const Declarations& decls);
  StmtPtr parse_core(const Declarations& decls, bool* saw_annotation);
  std::vector<std::string> parse_var_list(const Declarations& decls);
  std::string parse_label();
  bool scalar_starts_here() const;

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Tolerances tol_;
};

/** Convenience wrappers over Parser. */
Program parse_program(const std::string& text, const Tolerances& tol = {});

/** Whole-file predicate expression on the program's full space. */
Matrix parse_predicate_file(const std::string& text, const Declarations& decls,
                            const Tolerances& tol = {});

/**
 * Whole-file state: a ket expression (taken to the rank-1 density
 * operator) or a density-matrix literal, on the program's full space.
 */
Matrix parse_state_file(const std::string& text, const Declarations& decls,
                        const Tolerances& tol = {});

}  // namespace qwv
