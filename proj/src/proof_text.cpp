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

#include "qwv/proof_text.hpp"

#include <map>

#include "qwv/parser.hpp"

namespace qwv {

namespace {

class ProofParser : public Parser {
 public:
  ProofParser(const std::string& text, Tolerances tol)
      : Parser(text, tol), tol_(tol) {}

  ProofFile parse() {
    ProofFile file;
    file.decls = parse_declarations();
    expect_ident("proof");
    Token mode = expect_ident();
    if (mode.text == "par")
      file.derivation.mode = Mode::Partial;
    else if (mode.text == "tot")
      file.derivation.mode = Mode::Total;
    else
      throw ParseError(mode.loc, "expected 'par' or 'tot'");
    expect_punct("{");
    std::map<std::string, size_t> index;
    bool have_root = false;
    while (!at_punct("}")) {
      Token head = expect_ident();
      if (head.text == "root") {
        Token name = expect_ident();
        expect_punct(";");
        auto it = index.find(name.text);
        if (it == index.end())
          throw ParseError(name.loc, "unknown proof node " + name.text);
        file.derivation.root = it->second;
        have_root = true;
        continue;
      }
      expect_punct(":");
      DerivationNode node;
      node.name = head.text;
      node.app.tag = parse_rule_tag();
      parse_fields(file.decls, index, node);
      expect_punct(";");
      if (index.count(node.name))
        throw ParseError(head.loc, "duplicate proof node " + node.name);
      index[node.name] = file.derivation.nodes.size();
      file.derivation.nodes.push_back(std::move(node));
    }
    expect_punct("}");
    expect_end();
    if (file.derivation.nodes.empty())
      throw Error("proof has no nodes");
    if (!have_root)
      file.derivation.root = file.derivation.nodes.size() - 1;
    return file;
  }

 private:
  RuleTag parse_rule_tag() {
    Token first = expect_ident();
    std::string name = first.text;
    while (at_punct(".")) {
      next();
      name += "." + expect_ident().text;
    }
    try {
      return rule_from_name(name);
    } catch (const Error& e) {
      throw ParseError(first.loc, e.what());
    }
  }

  Matrix parse_braced_predexpr(const Declarations& decls, bool full_space) {
    expect_punct("{");
    Matrix m = full_space ? parse_predexpr_on_full_space(decls)
                          : parse_predexpr(decls);
    expect_punct("}");
    return m;
  }

  double parse_number_field() {
    bool neg = accept_punct("-");
    if (peek().kind != TokKind::Number) fail("expected a number");
    double v = std::stod(next().text);
    return neg ? -v : v;
  }

  std::vector<std::string> parse_name_list() {
    expect_punct("(");
    std::vector<std::string> names;
    names.push_back(expect_ident().text);
    while (accept_punct(",")) names.push_back(expect_ident().text);
    expect_punct(")");
    return names;
  }

  void parse_fields(const Declarations& decls,
                    const std::map<std::string, size_t>& index,
                    DerivationNode& node) {
    while (peek().kind == TokKind::Ident) {
      Token field = next();
      const std::string& f = field.text;
      if (f == "premise") {
        Token name = expect_ident();
        auto it = index.find(name.text);
        if (it == index.end())
          throw ParseError(name.loc, "unknown proof node " + name.text);
        node.children.push_back(it->second);
      } else if (f == "stmt") {
        node.app.stmt = parse_block(decls, nullptr);
      } else if (f == "post") {
        node.app.post = parse_braced_predexpr(decls, true);
        node.app.stronger_post = node.app.post;
      } else if (f == "pre") {
        node.app.weaker_pre = parse_braced_predexpr(decls, true);
      } else if (f == "meas") {
        node.app.meas = expect_ident().text;
      } else if (f == "vars") {
        node.app.meas_vars = parse_name_list();
      } else if (f == "continue") {
        if (peek().kind == TokKind::Ident || peek().kind == TokKind::Number)
          node.app.continue_label = next().text;
        else
          fail("expected a label");
      } else if (f == "a") {
        node.app.loop_post = parse_braced_predexpr(decls, true);
      } else if (f == "b") {
        node.app.loop_invariant = parse_braced_predexpr(decls, true);
      } else if (f == "on") {
        node.app.aux_vars = parse_name_list();
      } else if (f == "pred") {
        node.app.aux_pred = parse_braced_predexpr(decls, false);
      } else if (f == "weights") {
        expect_punct("(");
        node.app.weights.push_back(parse_number_field());
        while (accept_punct(",")) node.app.weights.push_back(parse_number_field());
        expect_punct(")");
      } else if (f == "p") {
        node.app.p = parse_number_field();
      } else if (f == "q") {
        node.app.q = parse_number_field();
      } else if (f == "kraus") {
        expect_punct("[");
        std::vector<Matrix> ks;
        ks.push_back(parse_matrix_literal());
        while (accept_punct(",")) ks.push_back(parse_matrix_literal());
        expect_punct("]");
        node.app.channel = Superoperator::from_kraus(std::move(ks), tol_);
      } else if (f == "direction") {
        Token dir = expect_ident();
        if (dir.text == "dual")
          node.app.direction = SoDirection::Dual;
        else if (dir.text == "forward")
          node.app.direction = SoDirection::Forward;
        else
          throw ParseError(dir.loc, "direction must be dual or forward");
      } else if (f == "obs") {
        if (!node.app.ranking) node.app.ranking = RankingSpec{};
        node.app.ranking->observable = parse_braced_predexpr(decls, false);
      } else if (f == "eps") {
        if (!node.app.ranking) node.app.ranking = RankingSpec{};
        node.app.ranking->eps = parse_number_field();
      } else if (f == "epsrank") {
        if (!node.app.ranking) node.app.ranking = RankingSpec{};
        node.app.ranking->eps_rank = parse_number_field();
      } else if (f == "reach") {
        node.app.ranking_reach = static_cast<long>(parse_number_field());
      } else if (f == "state") {
        expect_punct("{");
        Matrix rho;
        if (at_punct("[")) {
          rho = parse_matrix_literal();
        } else {
          Vector v = parse_ket_expr();
          rho = outer(v);
        }
        expect_punct("}");
        node.app.ranking_states.push_back(std::move(rho));
      } else {
        throw ParseError(field.loc, "unknown proof field " + f);
      }
    }
  }

  Tolerances tol_;
};

}  // namespace

ProofFile parse_proof_file(const std::string& text, const Tolerances& tol) {
  ProofParser parser(text, tol);
  return parser.parse();
}

}  // namespace qwv
