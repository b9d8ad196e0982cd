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

#include "qwv/ast.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace qwv {

namespace {

std::shared_ptr<Stmt> blank(StmtKind kind, SourceLoc loc) {
  auto s = std::make_shared<Stmt>();
  s->kind = kind;
  s->loc = loc;
  return s;
}

}  // namespace

StmtPtr make_skip(SourceLoc loc) { return blank(StmtKind::Skip, loc); }

StmtPtr make_init(std::string var, SourceLoc loc) {
  auto s = blank(StmtKind::Init, loc);
  s->var = std::move(var);
  return s;
}

StmtPtr make_unitary(std::string gate, std::vector<std::string> vars,
                     SourceLoc loc) {
  auto s = blank(StmtKind::Unitary, loc);
  s->gate = std::move(gate);
  s->vars = std::move(vars);
  return s;
}

StmtPtr make_seq(StmtPtr lhs, StmtPtr rhs, SourceLoc loc) {
  auto s = blank(StmtKind::Seq, loc);
  s->lhs = std::move(lhs);
  s->rhs = std::move(rhs);
  return s;
}

StmtPtr make_case(std::string meas, std::vector<std::string> vars,
                  std::vector<CaseBranch> branches, SourceLoc loc) {
  auto s = blank(StmtKind::Case, loc);
  s->meas = std::move(meas);
  s->vars = std::move(vars);
  s->branches = std::move(branches);
  return s;
}

StmtPtr make_while(std::string meas, std::vector<std::string> vars,
                   std::string continue_label, StmtPtr body, SourceLoc loc) {
  auto s = blank(StmtKind::While, loc);
  s->meas = std::move(meas);
  s->vars = std::move(vars);
  s->continue_label = std::move(continue_label);
  s->body = std::move(body);
  return s;
}

long Measurement::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw Error("unknown measurement outcome " + label);
  return static_cast<long>(it - labels.begin());
}

const Matrix& Declarations::gate(const std::string& name) const {
  auto it = gates.find(name);
  if (it != gates.end()) return it->second;
  const auto& builtins = builtin_gates();
  auto bit = builtins.find(name);
  if (bit != builtins.end()) return bit->second;
  throw Error("unknown gate " + name);
}

const Measurement& Declarations::measurement(const std::string& name) const {
  auto it = measurements.find(name);
  if (it == measurements.end()) throw Error("unknown measurement " + name);
  return it->second;
}

const std::map<std::string, Matrix>& builtin_gates() {
  static const std::map<std::string, Matrix> gates = [] {
    const double rh = 1.0 / std::sqrt(2.0);
    std::map<std::string, Matrix> g;
    Matrix i2 = identity(2);
    g["I"] = i2;
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    g["X"] = x;
    Matrix y(2, 2);
    y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    g["Y"] = y;
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    g["Z"] = z;
    Matrix h(2, 2);
    h << rh, rh, rh, -rh;
    g["H"] = h;
    Matrix s(2, 2);
    s << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 1);
    g["S"] = s;
    Matrix t(2, 2);
    t << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(rh, rh);
    g["T"] = t;
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    g["CNOT"] = cnot;
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
    g["SWAP"] = swap;
    Matrix cz = identity(4);
    cz(3, 3) = -1;
    g["CZ"] = cz;
    return g;
  }();
  return gates;
}

namespace {

void collect_vars(const StmtPtr& s, std::vector<std::string>& acc) {
  if (!s) return;
  switch (s->kind) {
    case StmtKind::Skip:
      break;
    case StmtKind::Init:
      acc.push_back(s->var);
      break;
    case StmtKind::Unitary:
      for (const auto& v : s->vars) acc.push_back(v);
      break;
    case StmtKind::Seq:
      collect_vars(s->lhs, acc);
      collect_vars(s->rhs, acc);
      break;
    case StmtKind::Case:
      for (const auto& v : s->vars) acc.push_back(v);
      for (const auto& b : s->branches) collect_vars(b.body, acc);
      break;
    case StmtKind::While:
      for (const auto& v : s->vars) acc.push_back(v);
      collect_vars(s->body, acc);
      break;
  }
}

}  // namespace

std::vector<std::string> vars_of(const StmtPtr& stmt, const Declarations& d) {
  std::vector<std::string> occurring;
  collect_vars(stmt, occurring);
  std::vector<std::string> ordered;
  for (const auto& name : d.vars.names)
    if (std::find(occurring.begin(), occurring.end(), name) != occurring.end())
      ordered.push_back(name);
  return ordered;
}

std::pair<Matrix, Matrix> while_ops(const Stmt& w, const Declarations& d) {
  const Measurement& m = d.measurement(w.meas);
  if (m.labels.size() != 2)
    throw Error("while measurement " + w.meas + " must have two outcomes");
  long cont = m.index_of(w.continue_label);
  long exit = 1 - cont;
  return {m.ops[exit], m.ops[cont]};
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case StmtKind::Skip:
      return true;
    case StmtKind::Init:
      return a->var == b->var;
    case StmtKind::Unitary:
      return a->gate == b->gate && a->vars == b->vars;
    case StmtKind::Seq:
      return stmt_equal(a->lhs, b->lhs) && stmt_equal(a->rhs, b->rhs);
    case StmtKind::Case: {
      if (a->meas != b->meas || a->vars != b->vars) return false;
      if (a->branches.size() != b->branches.size()) return false;
      for (size_t i = 0; i < a->branches.size(); ++i) {
        if (a->branches[i].label != b->branches[i].label) return false;
        if (!stmt_equal(a->branches[i].body, b->branches[i].body))
          return false;
      }
      return true;
    }
    case StmtKind::While:
      return a->meas == b->meas && a->vars == b->vars &&
             a->continue_label == b->continue_label &&
             stmt_equal(a->body, b->body);
  }
  return false;
}

namespace {

void collect_subprograms(const StmtPtr& s, Path& path,
                         std::vector<std::pair<Path, StmtPtr>>& out) {
  out.emplace_back(path, s);
  switch (s->kind) {
    case StmtKind::Seq:
      path.push_back({PathStep::SeqL, 0});
      collect_subprograms(s->lhs, path, out);
      path.back() = {PathStep::SeqR, 0};
      collect_subprograms(s->rhs, path, out);
      path.pop_back();
      break;
    case StmtKind::Case:
      for (size_t i = 0; i < s->branches.size(); ++i) {
        path.push_back({PathStep::Branch, static_cast<int>(i)});
        collect_subprograms(s->branches[i].body, path, out);
        path.pop_back();
      }
      break;
    case StmtKind::While:
      path.push_back({PathStep::Body, 0});
      collect_subprograms(s->body, path, out);
      path.pop_back();
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<std::pair<Path, StmtPtr>> subprograms(const StmtPtr& root) {
  std::vector<std::pair<Path, StmtPtr>> out;
  Path path;
  collect_subprograms(root, path, out);
  return out;
}

StmtPtr stmt_at(const StmtPtr& root, const Path& path) {
  StmtPtr cur = root;
  for (const auto& step : path) {
    if (!cur) throw Error("invalid subprogram path");
    switch (step.kind) {
      case PathStep::SeqL:
        if (cur->kind != StmtKind::Seq) throw Error("invalid subprogram path");
        cur = cur->lhs;
        break;
      case PathStep::SeqR:
        if (cur->kind != StmtKind::Seq) throw Error("invalid subprogram path");
        cur = cur->rhs;
        break;
      case PathStep::Branch:
        if (cur->kind != StmtKind::Case ||
            step.branch >= static_cast<int>(cur->branches.size()))
          throw Error("invalid subprogram path");
        cur = cur->branches[step.branch].body;
        break;
      case PathStep::Body:
        if (cur->kind != StmtKind::While)
          throw Error("invalid subprogram path");
        cur = cur->body;
        break;
    }
  }
  return cur;
}

namespace {

StmtPtr at_impl(const StmtPtr& node, const Path& path, size_t depth) {
  if (depth == path.size()) return node;
  const PathStep& step = path[depth];
  switch (step.kind) {
    case PathStep::SeqL: {
      StmtPtr inner = at_impl(node->lhs, path, depth + 1);
      return make_seq(inner, node->rhs, node->loc);
    }
    case PathStep::SeqR:
      return at_impl(node->rhs, path, depth + 1);
    case PathStep::Branch:
      return at_impl(node->branches[step.branch].body, path, depth + 1);
    case PathStep::Body: {
      StmtPtr inner = at_impl(node->body, path, depth + 1);
      return make_seq(inner, node, node->loc);
    }
  }
  throw Error("invalid subprogram path");
}

}  // namespace

StmtPtr at_remainder(const StmtPtr& root, const Path& path) {
  stmt_at(root, path);  // validates the path
  return at_impl(root, path, 0);
}

namespace {

std::string fmt_double(double x) {
  // Shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    std::ostringstream os;
    os << std::setprecision(prec) << x;
    double back = 0.0;
    std::istringstream(os.str()) >> back;
    if (back == x) return os.str();
  }
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string fmt_complex(Complex z) {
  if (z.imag() == 0.0) return fmt_double(z.real());
  if (z.real() == 0.0) return fmt_double(z.imag()) + "i";
  std::string out = fmt_double(z.real());
  if (z.imag() >= 0.0) out += "+";
  out += fmt_double(z.imag()) + "i";
  return out;
}

std::string fmt_matrix(const Matrix& m) {
  std::string out = "[";
  for (long i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (long j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += fmt_complex(m(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

std::string ind(int n) { return std::string(2 * n, ' '); }

void print_annots(const std::vector<Annot>& annots, int indent,
                  std::string& out) {
  for (const auto& a : annots)
    out += ind(indent) + "@{ " + fmt_matrix(a.pred) + " }\n";
}

void print_stmt(const StmtPtr& s, int indent, bool with_annots,
                std::string& out) {
  if (with_annots) print_annots(s->pre, indent, out);
  switch (s->kind) {
    case StmtKind::Skip:
      out += ind(indent) + "skip;\n";
      break;
    case StmtKind::Init:
      out += ind(indent) + s->var + " := |0>;\n";
      break;
    case StmtKind::Unitary: {
      out += ind(indent) + "apply " + s->gate + "(";
      for (size_t i = 0; i < s->vars.size(); ++i) {
        if (i) out += ", ";
        out += s->vars[i];
      }
      out += ");\n";
      break;
    }
    case StmtKind::Seq:
      print_stmt(s->lhs, indent, with_annots, out);
      print_stmt(s->rhs, indent, with_annots, out);
      break;
    case StmtKind::Case: {
      out += ind(indent) + "case " + s->meas + "(";
      for (size_t i = 0; i < s->vars.size(); ++i) {
        if (i) out += ", ";
        out += s->vars[i];
      }
      out += ") {\n";
      for (const auto& b : s->branches) {
        out += ind(indent + 1) + b.label + ": {\n";
        print_stmt(b.body, indent + 2, with_annots, out);
        if (with_annots) print_annots(b.body->post, indent + 2, out);
        out += ind(indent + 1) + "}\n";
      }
      out += ind(indent) + "}\n";
      break;
    }
    case StmtKind::While: {
      out += ind(indent) + "while " + s->meas + "(";
      for (size_t i = 0; i < s->vars.size(); ++i) {
        if (i) out += ", ";
        out += s->vars[i];
      }
      out += ") == " + s->continue_label + " {\n";
      print_stmt(s->body, indent + 1, with_annots, out);
      if (with_annots) print_annots(s->body->post, indent + 1, out);
      out += ind(indent) + "}\n";
      break;
    }
  }
}

}  // namespace

std::string pretty_stmt(const StmtPtr& stmt, int indent, bool with_annots) {
  std::string out;
  print_stmt(stmt, indent, with_annots, out);
  return out;
}

std::string pretty_print(const Program& program, bool with_annotations) {
  std::string out;
  const Declarations& d = program.decls;
  for (long i = 0; i < d.vars.size(); ++i)
    out += "var " + d.vars.names[i] + " : " + std::to_string(d.vars.dims[i]) +
           ";\n";
  for (const auto& [name, mat] : d.gates)
    out += "gate " + name + " = " + fmt_matrix(mat) + ";\n";
  for (const auto& [name, m] : d.measurements) {
    out += "meas " + name + " = {";
    for (size_t i = 0; i < m.labels.size(); ++i)
      out += " " + m.labels[i] + ": " + fmt_matrix(m.ops[i]) + ";";
    out += " };\n";
  }
  for (const auto& [name, p] : d.predicates) {
    out += "pred " + name + " on ";
    for (size_t i = 0; i < p.vars.size(); ++i) {
      if (i) out += ", ";
      out += p.vars[i];
    }
    out += " = " + fmt_matrix(p.mat) + ";\n";
  }
  out += "prog {\n";
  print_stmt(program.root, 1, with_annotations, out);
  if (with_annotations) print_annots(program.root->post, 1, out);
  out += "}\n";
  return out;
}

}  // namespace qwv
