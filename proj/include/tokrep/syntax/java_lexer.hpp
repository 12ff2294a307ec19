// Copyright 2026 The tokrep Authors
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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tokrep/error.hpp"

namespace tokrep::syntax {

/// Malformed source. Carries a 1-based line/column.
class SyntaxError : public DataError {
 public:
  SyntaxError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Valid Java outside the supported subset (records, patterns, ...).
class UnsupportedConstruct : public DataError {
 public:
  UnsupportedConstruct(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class TokenKind {
  Identifier,
  Keyword,
  IntegerLiteral,
  FloatingLiteral,
  CharLiteral,
  StringLiteral,
  TextBlock,
  Operator,  // operators and separators; '>' is always a single token
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  std::size_t offset = 0;
  int line = 1;
  int column = 1;
};

/// Splits Java source into tokens, dropping whitespace and comments. The
/// returned views point into \p source. The last token is always End.
std::vector<Token> lex_java(std::string_view source);

bool is_java_keyword(std::string_view word);

}  // namespace tokrep::syntax
