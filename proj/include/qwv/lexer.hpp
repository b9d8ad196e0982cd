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

#include "qwv/ast.hpp"

namespace qwv {

/** Parse failure with source position; what() is "line:col: message". */
class ParseError : public Error {
 public:
  ParseError(SourceLoc loc, const std::string& msg)
      : Error(loc.str() + ": " + msg), loc_(loc) {}
  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

enum class TokKind {
  Ident,
  Number,   // 12, 3.5, 1e-3
  ImagNum,  // 2i, 0.5i
  Ket,      // |...> ; text holds the content between the bars
  Punct,    // one of ; : , = == := { } ( ) [ ] @ + - * / and the tensor (x)
  End,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  SourceLoc loc;
};

/** Tokenises source text; '#' starts a comment to end of line. */
std::vector<Token> tokenize(const std::string& text);

}  // namespace qwv
