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

#include "qwv/parser.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qwv/relations.hpp"

namespace qwv {

Parser::Parser(const std::string& text, Tolerances tol)
    : toks_(tokenize(text)), tol_(tol) {}

const Token& Parser::peek(int off) const {
  size_t idx = pos_ + static_cast<size_t>(off);
  if (idx >= toks_.size()) idx = toks_.size() - 1;
  return toks_[idx];
}

Token Parser::next() {
  Token t = peek();
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool Parser::at_punct(const std::string& p) const {
  return peek().kind == TokKind::Punct && peek().text == p;
}

bool Parser::accept_punct(const std::string& p) {
  if (!at_punct(p)) return false;
  next();
  return true;
}

Token Parser::expect_punct(const std::string& p) {
  if (!at_punct(p)) fail("expected '" + p + "'");
  return next();
}

Token Parser::expect_ident() {
  if (peek().kind != TokKind::Ident) fail("expected identifier");
  return next();
}

Token Parser::expect_ident(const std::string& word) {
  if (peek().kind != TokKind::Ident || peek().text != word)
    fail("expected '" + word + "'");
  return next();
}

long Parser::expect_int() {
  if (peek().kind != TokKind::Number ||
      peek().text.find_first_of(".eE") != std::string::npos)
    fail("expected an integer");
  return std::stol(next().text);
}

void Parser::expect_end() {
  if (peek().kind != TokKind::End) fail("unexpected trailing input");
}

void Parser::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string got = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(t.loc, msg + " (found " + got + ")");
}

// ---------------------------------------------------------------------------
// Scalars: expressions over decimal floats, i, pi and sqrt(...).

namespace {

bool scalar_start_token(const Token& t) {
  if (t.kind == TokKind::Number || t.kind == TokKind::ImagNum) return true;
  if (t.kind == TokKind::Ident)
    return t.text == "i" || t.text == "pi" || t.text == "sqrt";
  return false;
}

}  // namespace

bool Parser::scalar_starts_here() const { return scalar_start_token(peek()); }

Complex Parser::parse_scalar() {
  Complex value = parse_scalar_term();
  while (at_punct("+") || at_punct("-")) {
    bool plus = next().text == "+";
    Complex rhs = parse_scalar_term();
    value = plus ? value + rhs : value - rhs;
  }
  return value;
}

Complex Parser::parse_scalar_term() {
  Complex value = parse_scalar_factor();
  // A '*' continues the scalar only when a scalar follows; otherwise it
  // separates a weight from the ket or predicate it multiplies.
  while ((at_punct("*") || at_punct("/")) &&
         (scalar_start_token(peek(1)) ||
          (peek(1).kind == TokKind::Punct && peek(1).text == "-"))) {
    bool mul = next().text == "*";
    Complex rhs = parse_scalar_factor();
    if (!mul && rhs == Complex(0.0, 0.0)) fail("division by zero in scalar");
    value = mul ? value * rhs : value / rhs;
  }
  return value;
}

Complex Parser::parse_scalar_factor() {
  if (accept_punct("-")) return -parse_scalar_factor();
  const Token& t = peek();
  if (t.kind == TokKind::Number) return Complex(std::stod(next().text), 0.0);
  if (t.kind == TokKind::ImagNum) return Complex(0.0, std::stod(next().text));
  if (t.kind == TokKind::Ident && t.text == "i") {
    next();
    return Complex(0.0, 1.0);
  }
  if (t.kind == TokKind::Ident && t.text == "pi") {
    next();
    return Complex(M_PI, 0.0);
  }
  if (t.kind == TokKind::Ident && t.text == "sqrt") {
    next();
    expect_punct("(");
    Complex inner = parse_scalar();
    expect_punct(")");
    return std::sqrt(inner);
  }
  if (at_punct("(")) {
    next();
    Complex inner = parse_scalar();
    expect_punct(")");
    return inner;
  }
  fail("expected a scalar");
}

// ---------------------------------------------------------------------------
// Kets.

Vector Parser::ket_from_token(const Token& tok) {
  const std::string& body = tok.text;
  if (body.empty()) throw ParseError(tok.loc, "empty ket");
  if (body.find(':') != std::string::npos) {
    // |n:d> selects basis state n of one d-dimensional factor.
    size_t colon = body.find(':');
    std::string n_str = body.substr(0, colon);
    std::string d_str = body.substr(colon + 1);
    if (n_str.empty() || d_str.empty() ||
        n_str.find_first_not_of("0123456789") != std::string::npos ||
        d_str.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(tok.loc, "malformed ket |" + body + ">");
    long n = std::stol(n_str);
    long d = std::stol(d_str);
    if (d < 1 || n >= d)
      throw ParseError(tok.loc, "ket index " + n_str + " out of range for dimension " + d_str);
    return basis_ket(d, n);
  }
  // Each character is one qubit-sized digit; |01> = |0> tensor |1>.
  Vector v = Vector::Ones(1);
  for (char c : body) {
    if (c < '0' || c > '1')
      throw ParseError(tok.loc, std::string("ket digit '") + c +
                                    "' needs an explicit dimension, e.g. |" +
                                    c + ":4>");
    Vector factor = basis_ket(2, c - '0');
    Vector merged(v.size() * 2);
    for (long a = 0; a < v.size(); ++a)
      for (long b = 0; b < 2; ++b) merged(a * 2 + b) = v(a) * factor(b);
    v = merged;
  }
  return v;
}

Vector Parser::parse_ket_atom() {
  if (peek().kind == TokKind::Ket) return ket_from_token(next());
  if (at_punct("(")) {
    next();
    Vector inner = parse_ket_expr();
    expect_punct(")");
    return inner;
  }
  fail("expected a ket");
}

Vector Parser::parse_ket_term() {
  Complex weight(1.0, 0.0);
  bool negated = false;
  if (at_punct("-") && (peek(1).kind == TokKind::Ket ||
                        (peek(1).kind == TokKind::Punct &&
                         peek(1).text == "("))) {
    next();  // bare minus on a ket
    negated = true;
  } else if (scalar_starts_here() || at_punct("-")) {
    weight = parse_scalar();
    expect_punct("*");
  }
  if (negated) weight = -weight;
  Vector v = parse_ket_atom();
  while (peek().kind == TokKind::Ket || at_punct("(")) {
    Vector rhs = parse_ket_atom();
    Vector merged(v.size() * rhs.size());
    for (long a = 0; a < v.size(); ++a)
      for (long b = 0; b < rhs.size(); ++b)
        merged(a * rhs.size() + b) = v(a) * rhs(b);
    v = merged;
  }
  return weight * v;
}

Vector Parser::parse_ket_expr() {
  Vector v = parse_ket_term();
  while (at_punct("+") || at_punct("-")) {
    bool plus = next().text == "+";
    Vector rhs = parse_ket_term();
    if (rhs.size() != v.size())
      fail("ket terms have mismatched dimensions");
    v = plus ? Vector(v + rhs) : Vector(v - rhs);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Matrices and predicate expressions.

Matrix Parser::parse_matrix_literal() {
  expect_punct("[");
  std::vector<std::vector<Complex>> rows;
  while (true) {
    expect_punct("[");
    std::vector<Complex> row;
    row.push_back(parse_scalar());
    while (accept_punct(",")) row.push_back(parse_scalar());
    expect_punct("]");
    rows.push_back(std::move(row));
    if (!accept_punct(",")) break;
  }
  expect_punct("]");
  const size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) fail("matrix rows have unequal lengths");
  Matrix m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix Parser::parse_pred_atom(const Declarations& decls) {
  if (at_punct("[")) return parse_matrix_literal();
  if (at_punct("(")) {
    next();
    Matrix inner = parse_predexpr(decls);
    expect_punct(")");
    return inner;
  }
  if (peek().kind != TokKind::Ident) fail("expected a predicate expression");
  Token name = next();
  if (name.text == "proj") {
    expect_punct("(");
    Vector v = parse_ket_expr();
    expect_punct(")");
    return outer(v);
  }
  if (name.text == "I") {
    expect_punct("(");
    long d = expect_int();
    expect_punct(")");
    if (d < 1) throw ParseError(name.loc, "identity dimension must be positive");
    return identity(d);
  }
  if (name.text == "swap") {
    expect_punct("(");
    long d = expect_int();
    expect_punct(")");
    return swap_operator(d);
  }
  if (name.text == "sym") {
    expect_punct("(");
    long d = expect_int();
    expect_punct(",");
    int sign = at_punct("+") ? +1 : at_punct("-") ? -1 : 0;
    if (sign == 0) fail("expected '+' or '-' in sym(d, +|-)");
    next();
    expect_punct(")");
    return symmetrizer(d, sign);
  }
  if (name.text == "eq") {
    expect_punct("(");
    long d = expect_int();
    expect_punct(")");
    return equality_pred(identity(d));
  }
  auto it = decls.predicates.find(name.text);
  if (it == decls.predicates.end())
    throw ParseError(name.loc, "unknown predicate " + name.text);
  return it->second.mat;
}

Matrix Parser::parse_pred_factor(const Declarations& decls) {
  if (scalar_starts_here() || at_punct("-")) {
    Complex weight = parse_scalar();
    expect_punct("*");
    return weight * parse_pred_factor(decls);
  }
  return parse_pred_atom(decls);
}

Matrix Parser::parse_pred_term(const Declarations& decls) {
  Matrix m = parse_pred_factor(decls);
  while (at_punct("(x)")) {
    next();
    m = kron(m, parse_pred_factor(decls));
  }
  return m;
}

Matrix Parser::parse_predexpr(const Declarations& decls) {
  Matrix m = parse_pred_term(decls);
  while (at_punct("+") || at_punct("-")) {
    bool plus = next().text == "+";
    Matrix rhs = parse_pred_term(decls);
    if (rhs.rows() != m.rows() || rhs.cols() != m.cols())
      fail("predicate terms have mismatched dimensions");
    m = plus ? Matrix(m + rhs) : Matrix(m - rhs);
  }
  return m;
}

Matrix Parser::parse_predexpr_on_full_space(const Declarations& decls) {
  // A bare identifier naming a declared predicate extends cylindrically.
  if (peek().kind == TokKind::Ident &&
      decls.predicates.count(peek().text) > 0 &&
      (peek(1).kind == TokKind::End ||
       (peek(1).kind == TokKind::Punct && peek(1).text == "}"))) {
    const NamedPredicate& p = decls.predicates.at(next().text);
    return embed(p.mat, p.vars, decls.vars);
  }
  Matrix m = parse_predexpr(decls);
  long full = decls.vars.dim(tol_.dim_cap);
  if (m.rows() != full)
    fail("predicate dimension " + std::to_string(m.rows()) +
         " does not match the declared space (" + std::to_string(full) + ")");
  return m;
}

// ---------------------------------------------------------------------------
// Declarations.

Declarations Parser::parse_declarations() {
  Declarations decls;
  while (peek().kind == TokKind::Ident) {
    const std::string& kw = peek().text;
    if (kw == "var") {
      next();
      Token name = expect_ident();
      expect_punct(":");
      long dim = expect_int();
      expect_punct(";");
      if (decls.vars.contains(name.text))
        throw ParseError(name.loc, "variable " + name.text + " redeclared");
      if (dim < 1) throw ParseError(name.loc, "dimension must be positive");
      decls.vars.names.push_back(name.text);
      decls.vars.dims.push_back(dim);
    } else if (kw == "gate") {
      next();
      Token name = expect_ident();
      expect_punct("=");
      Matrix u = parse_matrix_literal();
      expect_punct(";");
      if (decls.gates.count(name.text) || builtin_gates().count(name.text))
        throw ParseError(name.loc, "gate " + name.text + " redeclared");
      if (u.rows() != u.cols())
        throw ParseError(name.loc, "gate " + name.text + " is not square");
      if (!approx_equal(dagger(u) * u, identity(u.rows()), tol_.eq))
        throw ParseError(name.loc, "non-unitary gate " + name.text);
      decls.gates[name.text] = std::move(u);
    } else if (kw == "meas") {
      next();
      Token name = expect_ident();
      expect_punct("=");
      expect_punct("{");
      Measurement m;
      while (!at_punct("}")) {
        std::string label = parse_label();
        expect_punct(":");
        Matrix op = parse_matrix_literal();
        expect_punct(";");
        if (std::find(m.labels.begin(), m.labels.end(), label) !=
            m.labels.end())
          throw ParseError(name.loc, "measurement " + name.text +
                                         " repeats outcome " + label);
        m.labels.push_back(label);
        m.ops.push_back(std::move(op));
      }
      expect_punct("}");
      expect_punct(";");
      if (m.ops.empty())
        throw ParseError(name.loc, "measurement " + name.text + " is empty");
      long d = m.ops.front().rows();
      Matrix sum = Matrix::Zero(d, d);
      for (const auto& op : m.ops) {
        if (op.rows() != d || op.cols() != d)
          throw ParseError(name.loc, "measurement " + name.text +
                                         " mixes operator shapes");
        sum += dagger(op) * op;
      }
      if (!approx_equal(sum, identity(d), tol_.eq))
        throw ParseError(name.loc, "incomplete measurement " + name.text +
                                       " (sum of M^dag M differs from I)");
      if (decls.measurements.count(name.text))
        throw ParseError(name.loc, "measurement " + name.text + " redeclared");
      decls.measurements[name.text] = std::move(m);
    } else if (kw == "pred") {
      next();
      Token name = expect_ident();
      expect_ident("on");
      std::vector<std::string> vars;
      vars.push_back(expect_ident().text);
      while (accept_punct(",")) vars.push_back(expect_ident().text);
      expect_punct("=");
      Matrix mat = parse_predexpr(decls);
      expect_punct(";");
      std::set<std::string> seen;
      long d = 1;
      for (const auto& v : vars) {
        if (!decls.vars.contains(v))
          throw ParseError(name.loc, "unknown variable " + v +
                                         " in predicate " + name.text);
        if (!seen.insert(v).second)
          throw ParseError(name.loc, "repeated variable " + v +
                                         " in predicate " + name.text);
        d *= decls.vars.dim_of(v);
      }
      if (mat.rows() != d)
        throw ParseError(name.loc,
                         "predicate " + name.text + " has dimension " +
                             std::to_string(mat.rows()) + ", expected " +
                             std::to_string(d));
      try {
        make_predicate(mat, decls.vars.restrict_to(vars), tol_);
      } catch (const Error& e) {
        throw ParseError(name.loc,
                         "predicate " + name.text + ": " + e.what());
      }
      decls.predicates[name.text] = NamedPredicate{std::move(mat), vars};
    } else {
      break;
    }
  }
  return decls;
}

std::string Parser::parse_label() {
  if (peek().kind == TokKind::Ident) return next().text;
  if (peek().kind == TokKind::Number &&
      peek().text.find_first_of(".eE") == std::string::npos)
    return next().text;
  fail("expected an outcome label");
}

std::vector<std::string> Parser::parse_var_list(const Declarations& decls) {
  expect_punct("(");
  std::vector<std::string> vars;
  vars.push_back(expect_ident().text);
  while (accept_punct(",")) vars.push_back(expect_ident().text);
  expect_punct(")");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!decls.vars.contains(v))
      fail("unknown variable " + v);
    if (!seen.insert(v).second) fail("repeated variable " + v);
  }
  return vars;
}

Annot Parser::parse_annotation(const Declarations& decls) {
  Token at = expect_punct("@");
  expect_punct("{");
  Matrix mat = parse_predexpr_on_full_space(decls);
  expect_punct("}");
  try {
    make_predicate(mat, decls.vars, tol_);
  } catch (const Error& e) {
    throw ParseError(at.loc, std::string("annotation: ") + e.what());
  }
  return Annot{std::move(mat), true, at.loc};
}

// ---------------------------------------------------------------------------
// Statements.

StmtPtr Parser::parse_core(const Declarations& decls, bool* saw_annotation) {
  Token head = peek();
  if (head.kind != TokKind::Ident) fail("expected a statement");
  if (head.text == "skip") {
    next();
    expect_punct(";");
    return make_skip(head.loc);
  }
  if (head.text == "apply") {
    next();
    Token gate = expect_ident();
    std::vector<std::string> vars = parse_var_list(decls);
    expect_punct(";");
    const Matrix* u = nullptr;
    try {
      u = &decls.gate(gate.text);
    } catch (const Error& e) {
      throw ParseError(gate.loc, e.what());
    }
    long d = 1;
    for (const auto& v : vars) d *= decls.vars.dim_of(v);
    if (u->rows() != d)
      throw ParseError(gate.loc, "gate " + gate.text + " has dimension " +
                                     std::to_string(u->rows()) +
                                     " but operands span " + std::to_string(d));
    return make_unitary(gate.text, std::move(vars), head.loc);
  }
  if (head.text == "case") {
    next();
    Token meas = expect_ident();
    std::vector<std::string> vars = parse_var_list(decls);
    const Measurement* m = nullptr;
    try {
      m = &decls.measurement(meas.text);
    } catch (const Error& e) {
      throw ParseError(meas.loc, e.what());
    }
    long d = 1;
    for (const auto& v : vars) d *= decls.vars.dim_of(v);
    if (m->ops.front().rows() != d)
      throw ParseError(meas.loc, "measurement " + meas.text +
                                     " does not match operand dimensions");
    expect_punct("{");
    std::map<std::string, StmtPtr> bodies;
    while (!at_punct("}")) {
      std::string label = parse_label();
      expect_punct(":");
      StmtPtr body = parse_block(decls, saw_annotation);
      if (bodies.count(label))
        throw ParseError(meas.loc, "duplicate case branch " + label);
      if (std::find(m->labels.begin(), m->labels.end(), label) ==
          m->labels.end())
        throw ParseError(meas.loc, "label " + label +
                                       " is not an outcome of " + meas.text);
      bodies[label] = std::move(body);
    }
    expect_punct("}");
    if (bodies.size() != m->labels.size())
      throw ParseError(meas.loc,
                       "case must cover every outcome of " + meas.text);
    std::vector<CaseBranch> branches;
    for (const auto& label : m->labels)
      branches.push_back(CaseBranch{label, bodies.at(label)});
    return make_case(meas.text, std::move(vars), std::move(branches),
                     head.loc);
  }
  if (head.text == "while") {
    next();
    Token meas = expect_ident();
    std::vector<std::string> vars = parse_var_list(decls);
    expect_punct("==");
    std::string label = parse_label();
    const Measurement* m = nullptr;
    try {
      m = &decls.measurement(meas.text);
    } catch (const Error& e) {
      throw ParseError(meas.loc, e.what());
    }
    if (m->labels.size() != 2)
      throw ParseError(meas.loc, "while needs a two-outcome measurement; " +
                                     meas.text + " has " +
                                     std::to_string(m->labels.size()));
    if (std::find(m->labels.begin(), m->labels.end(), label) ==
        m->labels.end())
      throw ParseError(meas.loc,
                       "label " + label + " is not an outcome of " + meas.text);
    long d = 1;
    for (const auto& v : vars) d *= decls.vars.dim_of(v);
    if (m->ops.front().rows() != d)
      throw ParseError(meas.loc, "measurement " + meas.text +
                                     " does not match operand dimensions");
    StmtPtr body = parse_block(decls, saw_annotation);
    return make_while(meas.text, std::move(vars), label, std::move(body),
                      head.loc);
  }
  // Initialisation: ID := |0> ;
  if (peek(1).kind == TokKind::Punct && peek(1).text == ":=") {
    Token var = next();
    next();  // :=
    if (peek().kind != TokKind::Ket || peek().text != "0")
      fail("initialisation must assign |0>");
    next();
    expect_punct(";");
    if (!decls.vars.contains(var.text))
      throw ParseError(var.loc, "unknown variable " + var.text);
    return make_init(var.text, head.loc);
  }
  fail("expected a statement");
}

StmtPtr Parser::parse_block(const Declarations& decls, bool* saw_annotation) {
  Token open = expect_punct("{");
  std::vector<StmtPtr> stmts;
  std::vector<Annot> trailing;
  while (true) {
    std::vector<Annot> annots;
    while (at_punct("@")) {
      annots.push_back(parse_annotation(decls));
      if (saw_annotation) *saw_annotation = true;
    }
    if (at_punct("}")) {
      trailing = std::move(annots);
      break;
    }
    StmtPtr core = parse_core(decls, saw_annotation);
    if (!annots.empty()) {
      auto with_pre = std::make_shared<Stmt>(*core);
      with_pre->pre = std::move(annots);
      core = with_pre;
    }
    stmts.push_back(std::move(core));
  }
  expect_punct("}");

  StmtPtr folded;
  if (stmts.empty()) {
    folded = make_skip(open.loc);
  } else {
    folded = stmts.front();
    for (size_t i = 1; i < stmts.size(); ++i)
      folded = make_seq(folded, stmts[i], stmts[i]->loc);
  }
  if (!trailing.empty()) {
    auto with_post = std::make_shared<Stmt>(*folded);
    with_post->post = std::move(trailing);
    folded = with_post;
  }
  return folded;
}

Program Parser::parse_program() {
  Declarations decls = parse_declarations();
  decls.vars.dim(tol_.dim_cap);  // enforce the cap before building states
  expect_ident("prog");
  bool annotated = false;
  StmtPtr root = parse_block(decls, &annotated);
  expect_end();
  return Program{std::move(decls), std::move(root), annotated};
}

Program parse_program(const std::string& text, const Tolerances& tol) {
  Parser p(text, tol);
  return p.parse_program();
}

Matrix parse_predicate_file(const std::string& text, const Declarations& decls,
                            const Tolerances& tol) {
  Parser p(text, tol);
  Matrix m = p.parse_predexpr_on_full_space(decls);
  p.expect_end();
  make_predicate(m, decls.vars, tol);
  return m;
}

Matrix parse_state_file(const std::string& text, const Declarations& decls,
                        const Tolerances& tol) {
  Parser p(text, tol);
  Matrix rho;
  if (p.at_punct("[")) {
    rho = p.parse_matrix_literal();
  } else {
    Vector v = p.parse_ket_expr();
    rho = outer(v);
  }
  p.expect_end();
  long full = decls.vars.dim(tol.dim_cap);
  if (rho.rows() != full)
    throw Error("state dimension " + std::to_string(rho.rows()) +
                " does not match the declared space (" + std::to_string(full) +
                ")");
  make_density(rho, decls.vars, tol);
  return rho;
}

}  // namespace qwv
