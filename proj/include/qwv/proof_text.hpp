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

#include "qwv/rules.hpp"

namespace qwv {

/** A parsed proof object: declarations plus rule-application tree. */
struct ProofFile {
  Declarations decls;
  Derivation derivation;
};

/**
 * Parses the structured proof format:
 *
 *   decl*
 *   proof (par|tot) {
 *     <name>: <rule> <field>* ;
 *     ...
 *     root <name>;
 *   }
 *
 * Fields select the rule's side data: premise n1 n2..., stmt {...},
 * post {...}, pre {...}, meas M, vars (q,...), continue <label>,
 * a {...}, b {...}, on (v,...), pred {...}, weights (p1,...), p x, q x,
 * kraus [[...],...], direction dual|forward, obs {...}, eps x,
 * epsrank x, reach n, state { ket or matrix }.
 */
ProofFile parse_proof_file(const std::string& text, const Tolerances& tol = {});

}  // namespace qwv
