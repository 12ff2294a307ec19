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
#include "tokrep/syntax/java_lexer.hpp"

#include <algorithm>
#include <array>

namespace tokrep::syntax {

SyntaxError::SyntaxError(int line, int column, const std::string& message)
    : DataError("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                message),
      line_(line),
      column_(column) {}

UnsupportedConstruct::UnsupportedConstruct(int line, int column, const std::string& what)
    : DataError("unsupported construct at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + what),
      line_(line),
      column_(column) {}

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",      "catch",
    "char",     "class",      "const",     "continue",  "default",   "do",        "double",
    "else",     "enum",       "extends",   "final",     "finally",   "float",     "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",      "interface",
    "long",     "native",     "new",       "package",   "private",   "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",      "volatile",
    "while",    "true",       "false",     "null"};

// Longest first so that greedy matching works.
constexpr std::array<std::string_view, 45> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=", "*=", "/=",
    "&=",  "|=",  "^=", "%=", "<<", "(",  ")",  "{",  "}",  "[",  "]",  ";",  ",",  ".",  "@",
    "=",   ">",   "<",  "!",  "~",  "?",  ":",  "+",  "-",  "*",  "/",  "&",  "|",  "^", "%"};

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_hex(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.offset = src_.size();
    end.line = line_;
    end.column = column();
    out.push_back(end);
    return out;
  }

 private:
  int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(line_, column(), msg); }

  char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        advance();
      } else if (c == '/' && at(pos_ + 1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && at(pos_ + 1) == '*') {
        int line = line_;
        int col = column();
        advance();
        advance();
        while (pos_ < src_.size() && !(src_[pos_] == '*' && at(pos_ + 1) == '/')) advance();
        if (pos_ >= src_.size()) throw SyntaxError(line, col, "unterminated comment");
        advance();
        advance();
      } else if (static_cast<unsigned char>(c) == 0xEF && at(pos_ + 1) == '\xBB' &&
                 at(pos_ + 2) == '\xBF') {
        pos_ += 3;  // UTF-8 byte order mark
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start, int line, int col) const {
    Token t;
    t.kind = kind;
    t.text = src_.substr(start, pos_ - start);
    t.offset = start;
    t.line = line;
    t.column = col;
    return t;
  }

  Token next() {
    const std::size_t start = pos_;
    const int line = line_;
    const int col = column();
    const auto c = static_cast<unsigned char>(src_[pos_]);

    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(src_[pos_]))) advance();
      Token t = make(TokenKind::Identifier, start, line, col);
      if (is_java_keyword(t.text)) t.kind = TokenKind::Keyword;
      return t;
    }
    if (is_digit(c) || (c == '.' && is_digit(static_cast<unsigned char>(at(pos_ + 1))))) {
      return number(start, line, col);
    }
    if (c == '"') {
      if (at(pos_ + 1) == '"' && at(pos_ + 2) == '"') return text_block(start, line, col);
      quoted('"');
      return make(TokenKind::StringLiteral, start, line, col);
    }
    if (c == '\'') {
      quoted('\'');
      return make(TokenKind::CharLiteral, start, line, col);
    }
    for (auto op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return make(TokenKind::Operator, start, line, col);
      }
    }
    fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  Token number(std::size_t start, int line, int col) {
    bool floating = false;
    if (src_[pos_] == '0' && (at(pos_ + 1) == 'x' || at(pos_ + 1) == 'X')) {
      advance();
      advance();
      while (is_hex(static_cast<unsigned char>(at(pos_))) || at(pos_) == '_') advance();
      if (at(pos_) == '.' || at(pos_) == 'p' || at(pos_) == 'P') {
        floating = true;
        if (at(pos_) == '.') {
          advance();
          while (is_hex(static_cast<unsigned char>(at(pos_))) || at(pos_) == '_') advance();
        }
        if (at(pos_) == 'p' || at(pos_) == 'P') exponent();
      }
    } else if (src_[pos_] == '0' && (at(pos_ + 1) == 'b' || at(pos_ + 1) == 'B')) {
      advance();
      advance();
      while (at(pos_) == '0' || at(pos_) == '1' || at(pos_) == '_') advance();
    } else {
      while (is_digit(static_cast<unsigned char>(at(pos_))) || at(pos_) == '_') advance();
      if (at(pos_) == '.' && is_digit(static_cast<unsigned char>(at(pos_ + 1)))) {
        floating = true;
        advance();
        while (is_digit(static_cast<unsigned char>(at(pos_))) || at(pos_) == '_') advance();
      } else if (at(pos_) == '.' && !ident_start(static_cast<unsigned char>(at(pos_ + 1))) &&
                 at(pos_ + 1) != '.') {
        floating = true;  // "1." is a valid double literal
        advance();
      }
      if (at(pos_) == 'e' || at(pos_) == 'E') {
        floating = true;
        exponent();
      }
    }
    const char suffix = at(pos_);
    if (suffix == 'l' || suffix == 'L') {
      advance();
    } else if (suffix == 'f' || suffix == 'F' || suffix == 'd' || suffix == 'D') {
      floating = true;
      advance();
    }
    if (ident_part(static_cast<unsigned char>(at(pos_)))) fail("malformed number literal");
    return make(floating ? TokenKind::FloatingLiteral : TokenKind::IntegerLiteral, start, line, col);
  }

  void exponent() {
    advance();
    if (at(pos_) == '+' || at(pos_) == '-') advance();
    if (!is_digit(static_cast<unsigned char>(at(pos_)))) fail("malformed exponent");
    while (is_digit(static_cast<unsigned char>(at(pos_))) || at(pos_) == '_') advance();
  }

  void quoted(char quote) {
    advance();
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') fail("unterminated literal");
      if (src_[pos_] == '\\') {
        advance();
        if (pos_ >= src_.size()) fail("unterminated literal");
        advance();
        continue;
      }
      if (src_[pos_] == quote) {
        advance();
        return;
      }
      advance();
    }
  }

  Token text_block(std::size_t start, int line, int col) {
    advance();
    advance();
    advance();
    while (true) {
      if (pos_ >= src_.size()) fail("unterminated text block");
      if (src_[pos_] == '\\') {
        advance();
        if (pos_ < src_.size()) advance();
        continue;
      }
      if (src_[pos_] == '"' && at(pos_ + 1) == '"' && at(pos_ + 2) == '"') {
        advance();
        advance();
        advance();
        return make(TokenKind::TextBlock, start, line, col);
      }
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> lex_java(std::string_view source) { return Lexer(source).run(); }

}  // namespace tokrep::syntax
