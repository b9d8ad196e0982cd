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

#include "qwv/lexer.hpp"

#include <cctype>

namespace qwv {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto loc_here = [&] { return SourceLoc{line, col}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (i < text.size() && text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto peek = [&](size_t off) -> char {
    return i + off < text.size() ? text[i + off] : '\0';
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourceLoc loc = loc_here();
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({TokKind::Ident, text.substr(i, j - i), loc});
      advance(j - i);
      continue;
    }
    if (digit(c)) {
      size_t j = i;
      while (j < text.size() && digit(text[j])) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        while (j < text.size() && digit(text[j])) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && digit(text[k])) {
          while (k < text.size() && digit(text[k])) ++k;
          j = k;
        }
      }
      // An immediately following bare 'i' makes an imaginary literal.
      bool imag = j < text.size() && text[j] == 'i' &&
                  (j + 1 >= text.size() || !ident_char(text[j + 1]));
      out.push_back({imag ? TokKind::ImagNum : TokKind::Number,
                     text.substr(i, j - i), loc});
      advance(j - i + (imag ? 1 : 0));
      continue;
    }
    if (c == '|') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '>' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '>')
        throw ParseError(loc, "unterminated ket; expected '>'");
      out.push_back({TokKind::Ket, text.substr(i + 1, j - i - 1), loc});
      advance(j - i + 1);
      continue;
    }
    if (c == '(' && peek(1) == 'x' && peek(2) == ')') {
      out.push_back({TokKind::Punct, "(x)", loc});
      advance(3);
      continue;
    }
    if (c == ':' && peek(1) == '=') {
      out.push_back({TokKind::Punct, ":=", loc});
      advance(2);
      continue;
    }
    if (c == '=' && peek(1) == '=') {
      out.push_back({TokKind::Punct, "==", loc});
      advance(2);
      continue;
    }
    static const std::string singles = ";:,={}()[]@+-*/.";
    if (singles.find(c) != std::string::npos) {
      out.push_back({TokKind::Punct, std::string(1, c), loc});
      advance(1);
      continue;
    }
    throw ParseError(loc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({TokKind::End, "", loc_here()});
  return out;
}

}  // namespace qwv
