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

#include "tokrep/syntax/java_parser.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tokrep::syntax {
namespace {

using K = NodeKind;

constexpr std::array<std::string_view, 8> kPrimitives = {"boolean", "byte",  "char", "short",
                                                         "int",     "long",  "float", "double"};

constexpr std::array<std::string_view, 11> kModifierKeywords = {
    "public",   "protected",    "private",   "static",   "abstract", "final",
    "native",   "synchronized", "transient", "volatile", "strictfp"};

constexpr std::array<std::string_view, 10> kAssignOps = {"=",  "+=", "-=", "*=", "/=",
                                                         "&=", "|=", "^=", "%=", "<<="};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view word) {
  return std::find(set.begin(), set.end(), word) != set.end();
}

bool is_name(const AstNode& n) { return n.kind == K::SimpleName || n.kind == K::QualifiedName; }

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex_java(src)) {}

  AstNode parse() {
    if (at_end()) fail("empty source");
    if (looks_like_compilation_unit()) return compilation_unit();
    if (looks_like_member()) {
      AstNode member = class_body_declaration();
      if (!at_end()) fail("trailing input after declaration");
      if (member.kind != K::MethodDeclaration) fail("expected a method declaration");
      return member;
    }
    AstNode root = node(K::Block, tok().offset);
    while (!at_end()) add(root, block_statement());
    return close(root);
  }

 private:
  // ---- token access --------------------------------------------------------

  const Token& at(std::size_t i) const { return toks_[std::min(i, toks_.size() - 1)]; }
  const Token& tok(std::size_t ahead = 0) const { return at(pos_ + ahead); }
  bool at_end() const { return tok().kind == TokenKind::End; }

  bool op_at(std::size_t i, std::string_view s) const {
    const Token& t = at(i);
    return t.kind == TokenKind::Operator && t.text == s;
  }
  bool kw_at(std::size_t i, std::string_view s) const {
    const Token& t = at(i);
    return t.kind == TokenKind::Keyword && t.text == s;
  }
  bool ident_at(std::size_t i) const { return at(i).kind == TokenKind::Identifier; }
  bool primitive_at(std::size_t i) const {
    return at(i).kind == TokenKind::Keyword && contains(kPrimitives, at(i).text);
  }
  bool adjacent(std::size_t i) const {
    return at(i + 1).offset == at(i).offset + at(i).text.size();
  }

  bool is_op(std::string_view s, std::size_t ahead = 0) const { return op_at(pos_ + ahead, s); }
  bool is_kw(std::string_view s, std::size_t ahead = 0) const { return kw_at(pos_ + ahead, s); }
  bool is_ident(std::size_t ahead = 0) const { return ident_at(pos_ + ahead); }
  bool is_contextual(std::string_view word, std::size_t ahead = 0) const {
    return is_ident(ahead) && tok(ahead).text == word;
  }

  bool accept_op(std::string_view s) {
    if (!is_op(s)) return false;
    ++pos_;
    return true;
  }
  bool accept_kw(std::string_view s) {
    if (!is_kw(s)) return false;
    ++pos_;
    return true;
  }
  void expect_op(std::string_view s) {
    if (!accept_op(s)) fail("expected '" + std::string(s) + "'");
  }
  void expect_kw(std::string_view s) {
    if (!accept_kw(s)) fail("expected '" + std::string(s) + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = tok();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + std::string(t.text) + "'";
    throw SyntaxError(t.line, t.column, msg + ", found " + found);
  }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw UnsupportedConstruct(tok().line, tok().column, what);
  }

  // ---- node construction ---------------------------------------------------

  static AstNode node(K kind, std::size_t begin) {
    AstNode n;
    n.kind = kind;
    n.span.begin = begin;
    return n;
  }
  std::size_t prev_end() const {
    const Token& t = toks_[pos_ == 0 ? 0 : pos_ - 1];
    return t.offset + t.text.size();
  }
  AstNode close(AstNode& n) const {
    n.span.end = prev_end();
    return std::move(n);
  }
  static void add(AstNode& parent, AstNode child, Role role = Role::None) {
    if (role != Role::None) child.role = role;
    parent.children.push_back(std::move(child));
  }
  static void add_all(AstNode& parent, std::vector<AstNode> children, Role role = Role::None) {
    for (auto& c : children) add(parent, std::move(c), role);
  }
  AstNode leaf(K kind) {
    const Token& t = tok();
    AstNode n = node(kind, t.offset);
    n.content = std::string(t.text);
    n.span.end = t.offset + t.text.size();
    ++pos_;
    return n;
  }
  AstNode simple_name() {
    if (!is_ident()) fail("expected identifier");
    return leaf(K::SimpleName);
  }
  AstNode wrap(K kind, AstNode first, Role role = Role::None) const {
    AstNode n = node(kind, first.span.begin);
    add(n, std::move(first), role);
    n.span.end = prev_end();
    return n;
  }

  // ---- lookahead scanners (no node construction) ---------------------------

  std::optional<std::size_t> matching(std::size_t i, std::string_view open,
                                      std::string_view close_op) const {
    int depth = 0;
    for (std::size_t j = i; j < toks_.size(); ++j) {
      if (op_at(j, open)) ++depth;
      if (op_at(j, close_op) && --depth == 0) return j;
      if (at(j).kind == TokenKind::End) break;
    }
    return std::nullopt;
  }

  std::size_t skip_annotation(std::size_t i) const {
    ++i;  // '@'
    if (ident_at(i)) ++i;
    while (op_at(i, ".") && ident_at(i + 1)) i += 2;
    if (op_at(i, "(")) {
      auto close_paren = matching(i, "(", ")");
      return close_paren ? *close_paren + 1 : i;
    }
    return i;
  }

  std::size_t skip_annotations(std::size_t i) const {
    while (op_at(i, "@") && !kw_at(i + 1, "interface")) i = skip_annotation(i);
    return i;
  }

  std::size_t skip_modifiers(std::size_t i) const {
    while (true) {
      if (op_at(i, "@") && !kw_at(i + 1, "interface")) {
        i = skip_annotation(i);
      } else if (at(i).kind == TokenKind::Keyword && contains(kModifierKeywords, at(i).text)) {
        ++i;
      } else {
        return i;
      }
    }
  }

  std::optional<std::size_t> scan_type_args(std::size_t i) const {
    ++i;  // '<'
    if (op_at(i, ">")) return i + 1;
    while (true) {
      i = skip_annotations(i);
      if (op_at(i, "?")) {
        ++i;
        if (kw_at(i, "extends") || kw_at(i, "super")) {
          auto e = scan_type(i + 1);
          if (!e) return std::nullopt;
          i = *e;
        }
      } else {
        auto e = scan_type(i);
        if (!e) return std::nullopt;
        i = *e;
      }
      if (op_at(i, ",")) {
        ++i;
        continue;
      }
      if (op_at(i, ">")) return i + 1;
      return std::nullopt;
    }
  }

  std::optional<std::size_t> scan_type(std::size_t i) const {
    i = skip_annotations(i);
    if (primitive_at(i)) {
      ++i;
    } else if (ident_at(i)) {
      ++i;
      if (op_at(i, "<")) {
        auto e = scan_type_args(i);
        if (!e) return std::nullopt;
        i = *e;
      }
      while (op_at(i, ".") && ident_at(i + 1)) {
        i += 2;
        if (op_at(i, "<")) {
          auto e = scan_type_args(i);
          if (!e) return std::nullopt;
          i = *e;
        }
      }
    } else {
      return std::nullopt;
    }
    while (op_at(i, "[") && op_at(i + 1, "]")) i += 2;
    return i;
  }

  bool is_local_var_decl(std::size_t i) const {
    std::size_t j = skip_modifiers(i);
    auto e = scan_type(j);
    if (!e || !ident_at(*e)) return false;
    std::size_t k = *e + 1;
    return op_at(k, "=") || op_at(k, ";") || op_at(k, ",") || op_at(k, "[") || op_at(k, ":");
  }

  bool type_decl_keyword_at(std::size_t i) const {
    return kw_at(i, "class") || kw_at(i, "interface") || kw_at(i, "enum") ||
           (op_at(i, "@") && kw_at(i + 1, "interface")) ||
           (ident_at(i) && at(i).text == "record" && ident_at(i + 1));
  }

  bool looks_like_compilation_unit() const {
    std::size_t i = skip_modifiers(0);
    return kw_at(i, "package") || kw_at(i, "import") || type_decl_keyword_at(i);
  }

  bool looks_like_member() const {
    std::size_t i = skip_modifiers(0);
    if (kw_at(i, "default")) ++i;
    if (op_at(i, "<")) {
      auto e = scan_type_args(i);
      if (!e) return false;
      i = *e;
    }
    std::size_t name = 0;
    if (ident_at(i) && op_at(i + 1, "(")) {
      name = i;  // constructor
    } else if (kw_at(i, "void")) {
      name = i + 1;
    } else {
      auto e = scan_type(i);
      if (!e) return false;
      name = *e;
    }
    if (!ident_at(name) || !op_at(name + 1, "(")) return false;
    auto close_paren = matching(name + 1, "(", ")");
    if (!close_paren) return false;
    std::size_t k = *close_paren + 1;
    return op_at(k, "{") || kw_at(k, "throws") || op_at(k, ";") || op_at(k, "[");
  }

  bool lambda_ahead() const {
    if (is_ident() && is_op("->", 1)) return true;
    if (!is_op("(")) return false;
    auto close_paren = matching(pos_, "(", ")");
    return close_paren && op_at(*close_paren + 1, "->");
  }

  bool cast_ahead() const {
    // pos_ is at '('
    std::size_t i = pos_ + 1;
    const bool primitive = primitive_at(skip_annotations(i));
    auto e = scan_type(i);
    if (!e) return false;
    while (op_at(*e, "&")) {
      e = scan_type(*e + 1);
      if (!e) return false;
    }
    if (!op_at(*e, ")")) return false;
    if (primitive) return true;
    const Token& next = at(*e + 1);
    switch (next.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntegerLiteral:
      case TokenKind::FloatingLiteral:
      case TokenKind::CharLiteral:
      case TokenKind::StringLiteral:
      case TokenKind::TextBlock:
        return true;
      case TokenKind::Keyword:
        return next.text == "this" || next.text == "super" || next.text == "new" ||
               next.text == "true" || next.text == "false" || next.text == "null" ||
               next.text == "switch" || contains(kPrimitives, next.text) || next.text == "void";
      case TokenKind::Operator:
        return next.text == "(" || next.text == "!" || next.text == "~";
      default:
        return false;
    }
  }

  // Returns the combined operator starting at '>' and the token count, or an
  // empty string when the tokens do not form a '>'-family operator.
  std::pair<std::string, std::size_t> greater_operator(std::size_t i) const {
    std::size_t n = 1;
    while (n < 3 && adjacent(i + n - 1) && op_at(i + n, ">")) ++n;
    const bool eq = adjacent(i + n - 1) && op_at(i + n, "=");
    std::string text(n, '>');
    if (eq) {
      text += "=";
      return {text, n + 1};
    }
    return {text, n};
  }

  // ---- declarations --------------------------------------------------------

  AstNode compilation_unit() {
    AstNode cu = node(K::CompilationUnit, tok().offset);
    {
      const std::size_t save = pos_;
      const std::size_t begin = tok().offset;
      std::vector<AstNode> annotations = modifiers();
      if (is_kw("package")) {
        AstNode pkg = node(K::PackageDeclaration, begin);
        add_all(pkg, std::move(annotations), Role::Modifier);
        ++pos_;
        add(pkg, qualified_name(), Role::Name);
        expect_op(";");
        add(cu, close(pkg));
      } else {
        pos_ = save;
      }
    }
    while (is_kw("import")) {
      AstNode imp = node(K::ImportDeclaration, tok().offset);
      ++pos_;
      if (accept_kw("static")) imp.op = "static";
      add(imp, qualified_name(), Role::Name);
      if (is_op(".") && is_op("*", 1)) {
        pos_ += 2;
        imp.op += ".*";
      }
      expect_op(";");
      add(cu, close(imp));
    }
    while (!at_end()) {
      if (accept_op(";")) continue;
      const std::size_t begin = tok().offset;
      std::vector<AstNode> mods = modifiers();
      add(cu, type_declaration(begin, std::move(mods)));
    }
    return close(cu);
  }

  std::vector<AstNode> modifiers() {
    std::vector<AstNode> mods;
    while (true) {
      if (is_op("@") && !is_kw("interface", 1)) {
        mods.push_back(annotation());
      } else if (tok().kind == TokenKind::Keyword && contains(kModifierKeywords, tok().text)) {
        mods.push_back(leaf(K::Modifier));
      } else if (is_kw("default") && !is_op(":", 1) && !is_op("->", 1)) {
        mods.push_back(leaf(K::Modifier));
      } else if ((is_contextual("sealed") || is_contextual("non")) &&
                 (tok(1).kind == TokenKind::Keyword || is_op("-", 1))) {
        unsupported("sealed class hierarchy");
      } else {
        break;
      }
    }
    for (auto& m : mods) m.role = Role::Modifier;
    return mods;
  }

  AstNode type_declaration(std::size_t begin, std::vector<AstNode> mods) {
    if (is_kw("class") || is_kw("interface")) {
      AstNode decl = node(K::TypeDeclaration, begin);
      const bool interface = is_kw("interface");
      decl.op = std::string(tok().text);
      ++pos_;
      add_all(decl, std::move(mods), Role::Modifier);
      add(decl, simple_name(), Role::Name);
      if (is_op("<")) add_all(decl, type_parameters());
      if (accept_kw("extends")) {
        add(decl, type(), Role::Type);
        while (interface && accept_op(",")) add(decl, type(), Role::Type);
      }
      if (accept_kw("implements")) {
        add(decl, type(), Role::Type);
        while (accept_op(",")) add(decl, type(), Role::Type);
      }
      if (is_contextual("permits")) unsupported("sealed class hierarchy");
      class_body(decl);
      return close(decl);
    }
    if (is_kw("enum")) {
      AstNode decl = node(K::EnumDeclaration, begin);
      ++pos_;
      add_all(decl, std::move(mods), Role::Modifier);
      add(decl, simple_name(), Role::Name);
      if (accept_kw("implements")) {
        add(decl, type(), Role::Type);
        while (accept_op(",")) add(decl, type(), Role::Type);
      }
      expect_op("{");
      while (!is_op(";") && !is_op("}")) {
        add(decl, enum_constant());
        if (!accept_op(",")) break;
      }
      if (accept_op(";")) {
        while (!is_op("}")) {
          if (at_end()) fail("unterminated enum body");
          if (accept_op(";")) continue;
          add(decl, class_body_declaration());
        }
      }
      expect_op("}");
      return close(decl);
    }
    if (is_op("@") && is_kw("interface", 1)) {
      AstNode decl = node(K::AnnotationTypeDeclaration, begin);
      pos_ += 2;
      add_all(decl, std::move(mods), Role::Modifier);
      add(decl, simple_name(), Role::Name);
      class_body(decl);
      return close(decl);
    }
    if (is_contextual("record")) unsupported("record declaration");
    fail("expected type declaration");
  }

  AstNode enum_constant() {
    AstNode c = node(K::EnumConstantDeclaration, tok().offset);
    add_all(c, modifiers(), Role::Modifier);
    add(c, simple_name(), Role::Name);
    if (is_op("(")) add_all(c, arguments(), Role::Argument);
    if (is_op("{")) {
      AstNode anon = node(K::AnonymousClassDeclaration, tok().offset);
      class_body(anon);
      add(c, close(anon), Role::Body);
    }
    return close(c);
  }

  void class_body(AstNode& owner) {
    expect_op("{");
    while (!is_op("}")) {
      if (at_end()) fail("unterminated class body");
      if (accept_op(";")) continue;
      add(owner, class_body_declaration());
    }
    expect_op("}");
  }

  AstNode class_body_declaration() {
    const std::size_t begin = tok().offset;
    if (is_op("{") || (is_kw("static") && is_op("{", 1))) {
      AstNode init = node(K::Initializer, begin);
      if (is_kw("static")) add(init, leaf(K::Modifier), Role::Modifier);
      add(init, block(), Role::Body);
      return close(init);
    }
    std::vector<AstNode> mods = modifiers();
    if (type_decl_keyword_at(pos_)) return type_declaration(begin, std::move(mods));

    std::vector<AstNode> type_params;
    if (is_op("<")) type_params = type_parameters();

    if (is_ident() && is_op("(", 1)) {
      AstNode ctor = node(K::MethodDeclaration, begin);
      ctor.op = "constructor";
      add_all(ctor, std::move(mods), Role::Modifier);
      add_all(ctor, std::move(type_params));
      add(ctor, simple_name(), Role::Name);
      method_rest(ctor);
      return close(ctor);
    }

    AstNode result_type = is_kw("void") ? leaf(K::PrimitiveType) : type();
    AstNode name = simple_name();
    if (is_op("(")) {
      AstNode method = node(K::MethodDeclaration, begin);
      add_all(method, std::move(mods), Role::Modifier);
      add_all(method, std::move(type_params));
      add(method, std::move(result_type), Role::Type);
      add(method, std::move(name), Role::Name);
      method_rest(method);
      return close(method);
    }
    if (!type_params.empty()) fail("type parameters on a field");
    AstNode field = node(K::FieldDeclaration, begin);
    add_all(field, std::move(mods), Role::Modifier);
    add(field, std::move(result_type), Role::Type);
    add(field, fragment_rest(std::move(name)));
    while (accept_op(",")) add(field, fragment_rest(simple_name()));
    expect_op(";");
    return close(field);
  }

  void method_rest(AstNode& method) {
    expect_op("(");
    if (!is_op(")")) {
      do {
        add(method, formal_parameter());
      } while (accept_op(","));
    }
    expect_op(")");
    while (is_op("[")) add(method, dimension());
    if (accept_kw("throws")) {
      add(method, type(), Role::Type);
      while (accept_op(",")) add(method, type(), Role::Type);
    }
    if (is_op("{")) {
      add(method, block(), Role::Body);
    } else if (accept_kw("default")) {
      method.kind = K::AnnotationTypeMemberDeclaration;
      add(method, element_value());
      expect_op(";");
    } else {
      expect_op(";");
    }
  }

  AstNode formal_parameter() {
    AstNode param = node(K::SingleVariableDeclaration, tok().offset);
    add_all(param, modifiers(), Role::Modifier);
    add(param, type(), Role::Type);
    if (accept_op("...")) param.op = "...";
    if (is_kw("this")) unsupported("receiver parameter");
    add(param, simple_name(), Role::Name);
    while (is_op("[")) add(param, dimension());
    return close(param);
  }

  AstNode fragment_rest(AstNode name) {
    AstNode frag = node(K::VariableDeclarationFragment, name.span.begin);
    add(frag, std::move(name), Role::Name);
    while (is_op("[")) add(frag, dimension());
    if (accept_op("=")) add(frag, variable_initializer(), Role::Operand);
    return close(frag);
  }

  AstNode variable_initializer() { return is_op("{") ? array_initializer() : expression(); }

  AstNode array_initializer() {
    AstNode init = node(K::ArrayInitializer, tok().offset);
    expect_op("{");
    while (!is_op("}")) {
      add(init, variable_initializer());
      if (!accept_op(",")) break;
    }
    expect_op("}");
    return close(init);
  }

  AstNode dimension() {
    AstNode dim = node(K::Dimension, tok().offset);
    expect_op("[");
    expect_op("]");
    return close(dim);
  }

  std::vector<AstNode> type_parameters() {
    std::vector<AstNode> params;
    expect_op("<");
    do {
      AstNode p = node(K::TypeParameter, tok().offset);
      add_all(p, modifiers(), Role::Modifier);
      add(p, simple_name(), Role::Name);
      if (accept_kw("extends")) {
        add(p, type(), Role::Type);
        while (accept_op("&")) add(p, type(), Role::Type);
      }
      params.push_back(close(p));
    } while (accept_op(","));
    expect_op(">");
    return params;
  }

  // ---- annotations ---------------------------------------------------------

  AstNode qualified_name() {
    AstNode name = simple_name();
    while (is_op(".") && is_ident(1)) {
      ++pos_;
      AstNode q = wrap(K::QualifiedName, std::move(name));
      add(q, simple_name(), Role::Name);
      name = close(q);
    }
    return name;
  }

  AstNode annotation() {
    const std::size_t begin = tok().offset;
    expect_op("@");
    AstNode name = qualified_name();
    if (!is_op("(")) {
      AstNode a = node(K::MarkerAnnotation, begin);
      add(a, std::move(name), Role::Name);
      return close(a);
    }
    ++pos_;
    AstNode a = node(K::NormalAnnotation, begin);
    add(a, std::move(name), Role::Name);
    if (is_op(")")) {
      // "@Foo()" is a normal annotation without pairs
    } else if (is_ident() && is_op("=", 1)) {
      do {
        AstNode pair = node(K::MemberValuePair, tok().offset);
        add(pair, simple_name(), Role::Name);
        expect_op("=");
        add(pair, element_value(), Role::Operand);
        add(a, close(pair));
      } while (accept_op(","));
    } else {
      a.kind = K::SingleMemberAnnotation;
      add(a, element_value(), Role::Operand);
    }
    expect_op(")");
    return close(a);
  }

  AstNode element_value() {
    if (is_op("@")) return annotation();
    if (is_op("{")) {
      AstNode init = node(K::ArrayInitializer, tok().offset);
      ++pos_;
      while (!is_op("}")) {
        add(init, element_value());
        if (!accept_op(",")) break;
      }
      expect_op("}");
      return close(init);
    }
    return conditional();
  }

  // ---- types ---------------------------------------------------------------

  AstNode type() {
    std::vector<AstNode> annotations;
    while (is_op("@") && !is_kw("interface", 1)) annotations.push_back(annotation());
    AstNode t = non_array_type();
    if (is_op("[") && is_op("]", 1)) {
      AstNode arr = wrap(K::ArrayType, std::move(t), Role::Type);
      while (is_op("[") && is_op("]", 1)) add(arr, dimension());
      t = close(arr);
    }
    if (!annotations.empty()) {
      t.span.begin = annotations.front().span.begin;
      for (auto& a : annotations) a.role = Role::Modifier;
      t.children.insert(t.children.begin(), std::make_move_iterator(annotations.begin()),
                        std::make_move_iterator(annotations.end()));
    }
    return t;
  }

  AstNode non_array_type() {
    if (primitive_at(pos_)) return leaf(K::PrimitiveType);
    if (is_ident()) return class_type();
    fail("expected type");
  }

  AstNode class_type() {
    AstNode name = simple_name();
    while (is_op(".") && is_ident(1)) {
      ++pos_;
      AstNode q = wrap(K::QualifiedName, std::move(name));
      add(q, simple_name(), Role::Name);
      name = close(q);
    }
    AstNode t = wrap(K::SimpleType, std::move(name), Role::Name);
    if (is_op("<")) t = parameterized(std::move(t));
    while (is_op(".") && is_ident(1)) {
      ++pos_;
      AstNode q = wrap(K::QualifiedType, std::move(t), Role::Type);
      add(q, simple_name(), Role::Name);
      t = close(q);
      if (is_op("<")) t = parameterized(std::move(t));
    }
    return t;
  }

  AstNode parameterized(AstNode base) {
    AstNode p = wrap(K::ParameterizedType, std::move(base), Role::Type);
    add_all(p, type_arguments(), Role::TypeArgument);
    return close(p);
  }

  std::vector<AstNode> type_arguments() {
    std::vector<AstNode> args;
    expect_op("<");
    if (accept_op(">")) return args;  // diamond
    do {
      if (is_op("?") || (is_op("@") && !is_kw("interface", 1) && op_at(skip_annotations(pos_), "?"))) {
        const std::size_t begin = tok().offset;
        std::vector<AstNode> annotations;
        while (is_op("@")) annotations.push_back(annotation());
        AstNode w = node(K::WildcardType, begin);
        add_all(w, std::move(annotations), Role::Modifier);
        expect_op("?");
        if (is_kw("extends") || is_kw("super")) {
          w.op = std::string(tok().text);
          ++pos_;
          add(w, type(), Role::Type);
        }
        args.push_back(close(w));
      } else {
        args.push_back(type());
      }
    } while (accept_op(","));
    expect_op(">");
    return args;
  }

  // ---- statements ----------------------------------------------------------

  AstNode block() {
    AstNode b = node(K::Block, tok().offset);
    expect_op("{");
    while (!is_op("}")) {
      if (at_end()) fail("unterminated block");
      add(b, block_statement());
    }
    expect_op("}");
    return close(b);
  }

  AstNode block_statement() {
    const std::size_t begin = tok().offset;
    if (type_decl_keyword_at(skip_modifiers(pos_))) {
      std::vector<AstNode> mods = modifiers();
      AstNode stmt = node(K::TypeDeclarationStatement, begin);
      add(stmt, type_declaration(begin, std::move(mods)));
      return close(stmt);
    }
    if (!is_contextual("yield") && is_local_var_decl(pos_)) {
      AstNode decl = node(K::VariableDeclarationStatement, begin);
      local_declaration(decl);
      expect_op(";");
      return close(decl);
    }
    return statement();
  }

  void local_declaration(AstNode& decl) {
    add_all(decl, modifiers(), Role::Modifier);
    add(decl, type(), Role::Type);
    do {
      add(decl, fragment_rest(simple_name()));
    } while (accept_op(","));
  }

  bool yield_statement_ahead() const {
    if (!is_contextual("yield")) return false;
    const Token& next = tok(1);
    if (next.kind != TokenKind::Operator) return true;
    static constexpr std::array<std::string_view, 8> kNotYield = {"=", ".", "[", "++",
                                                                  "--", "->", ":", ";"};
    if (contains(kNotYield, next.text) || contains(kAssignOps, next.text)) return false;
    return true;
  }

  AstNode statement() {
    const std::size_t begin = tok().offset;
    if (is_op("{")) return block();
    if (accept_op(";")) {
      AstNode empty = node(K::EmptyStatement, begin);
      return close(empty);
    }
    if (accept_kw("if")) {
      AstNode s = node(K::IfStatement, begin);
      add(s, paren_expression(), Role::Operand);
      add(s, statement(), Role::Body);
      if (accept_kw("else")) add(s, statement(), Role::Body);
      return close(s);
    }
    if (accept_kw("while")) {
      AstNode s = node(K::WhileStatement, begin);
      add(s, paren_expression(), Role::Operand);
      add(s, statement(), Role::Body);
      return close(s);
    }
    if (accept_kw("do")) {
      AstNode s = node(K::DoStatement, begin);
      add(s, statement(), Role::Body);
      expect_kw("while");
      add(s, paren_expression(), Role::Operand);
      expect_op(";");
      return close(s);
    }
    if (is_kw("for")) return for_statement();
    if (is_kw("try")) return try_statement();
    if (is_kw("switch")) {
      AstNode s = switch_construct(K::SwitchStatement);
      return s;
    }
    if (accept_kw("return")) {
      AstNode s = node(K::ReturnStatement, begin);
      if (!is_op(";")) add(s, expression(), Role::Operand);
      expect_op(";");
      return close(s);
    }
    if (is_kw("break") || is_kw("continue")) {
      AstNode s = node(is_kw("break") ? K::BreakStatement : K::ContinueStatement, begin);
      ++pos_;
      if (is_ident()) add(s, simple_name(), Role::Name);
      expect_op(";");
      return close(s);
    }
    if (accept_kw("throw")) {
      AstNode s = node(K::ThrowStatement, begin);
      add(s, expression(), Role::Operand);
      expect_op(";");
      return close(s);
    }
    if (is_kw("synchronized") && is_op("(", 1)) {
      ++pos_;
      AstNode s = node(K::SynchronizedStatement, begin);
      add(s, paren_expression(), Role::Operand);
      add(s, block(), Role::Body);
      return close(s);
    }
    if (accept_kw("assert")) {
      AstNode s = node(K::AssertStatement, begin);
      add(s, expression(), Role::Operand);
      if (accept_op(":")) add(s, expression(), Role::Operand);
      expect_op(";");
      return close(s);
    }
    if ((is_kw("this") || is_kw("super")) && is_op("(", 1)) {
      AstNode s = node(is_kw("this") ? K::ConstructorInvocation : K::SuperConstructorInvocation,
                       begin);
      ++pos_;
      add_all(s, arguments(), Role::Argument);
      expect_op(";");
      return close(s);
    }
    if (is_op("<")) unsupported("explicit constructor type arguments");
    if (yield_statement_ahead()) {
      ++pos_;
      AstNode s = node(K::YieldStatement, begin);
      add(s, expression(), Role::Operand);
      expect_op(";");
      return close(s);
    }
    if (is_ident() && is_op(":", 1)) {
      AstNode s = node(K::LabeledStatement, begin);
      add(s, simple_name(), Role::Name);
      ++pos_;
      add(s, statement(), Role::Body);
      return close(s);
    }
    AstNode expr = expression();
    expect_op(";");
    if (expr.kind == K::SuperConstructorInvocation) {
      expr.span.end = prev_end();
      return expr;
    }
    AstNode s = wrap(K::ExpressionStatement, std::move(expr), Role::Operand);
    return close(s);
  }

  AstNode paren_expression() {
    expect_op("(");
    AstNode e = expression();
    expect_op(")");
    return e;
  }

  AstNode for_statement() {
    const std::size_t begin = tok().offset;
    expect_kw("for");
    expect_op("(");
    {
      std::size_t j = skip_modifiers(pos_);
      auto e = scan_type(j);
      if (e && ident_at(*e) && op_at(*e + 1, ":")) {
        AstNode s = node(K::EnhancedForStatement, begin);
        AstNode var = node(K::SingleVariableDeclaration, tok().offset);
        add_all(var, modifiers(), Role::Modifier);
        add(var, type(), Role::Type);
        add(var, simple_name(), Role::Name);
        add(s, close(var));
        expect_op(":");
        add(s, expression(), Role::Operand);
        expect_op(")");
        add(s, statement(), Role::Body);
        return close(s);
      }
    }
    AstNode s = node(K::ForStatement, begin);
    if (!is_op(";")) {
      if (is_local_var_decl(pos_)) {
        AstNode decl = node(K::VariableDeclarationExpression, tok().offset);
        local_declaration(decl);
        add(s, close(decl));
      } else {
        do {
          add(s, expression(), Role::Operand);
        } while (accept_op(","));
      }
    }
    expect_op(";");
    if (!is_op(";")) add(s, expression(), Role::Operand);
    expect_op(";");
    if (!is_op(")")) {
      do {
        add(s, expression(), Role::Operand);
      } while (accept_op(","));
    }
    expect_op(")");
    add(s, statement(), Role::Body);
    return close(s);
  }

  AstNode try_statement() {
    AstNode s = node(K::TryStatement, tok().offset);
    expect_kw("try");
    bool resources = false;
    if (accept_op("(")) {
      resources = true;
      while (!is_op(")")) {
        if (is_local_var_decl(pos_)) {
          AstNode decl = node(K::VariableDeclarationExpression, tok().offset);
          add_all(decl, modifiers(), Role::Modifier);
          add(decl, type(), Role::Type);
          add(decl, fragment_rest(simple_name()));
          add(s, close(decl));
        } else {
          add(s, expression(), Role::Operand);
        }
        if (!accept_op(";")) break;
      }
      expect_op(")");
    }
    add(s, block(), Role::Body);
    bool handlers = false;
    while (is_kw("catch")) {
      handlers = true;
      AstNode c = node(K::CatchClause, tok().offset);
      ++pos_;
      expect_op("(");
      AstNode var = node(K::SingleVariableDeclaration, tok().offset);
      add_all(var, modifiers(), Role::Modifier);
      AstNode t = type();
      if (is_op("|")) {
        AstNode u = wrap(K::UnionType, std::move(t), Role::Type);
        while (accept_op("|")) add(u, type(), Role::Type);
        t = close(u);
      }
      add(var, std::move(t), Role::Type);
      add(var, simple_name(), Role::Name);
      add(c, close(var));
      expect_op(")");
      add(c, block(), Role::Body);
      add(s, close(c));
    }
    if (accept_kw("finally")) {
      handlers = true;
      add(s, block(), Role::Body);
    }
    if (!handlers && !resources) fail("expected 'catch' or 'finally'");
    return close(s);
  }

  AstNode switch_construct(K kind) {
    AstNode s = node(kind, tok().offset);
    expect_kw("switch");
    add(s, paren_expression(), Role::Operand);
    expect_op("{");
    while (!is_op("}")) {
      if (at_end()) fail("unterminated switch");
      if (is_kw("case") || is_kw("default")) {
        AstNode c = node(K::SwitchCase, tok().offset);
        if (accept_kw("case")) {
          do {
            if (is_ident() && (is_ident(1) || is_op("(", 1)) && !is_op("->", 1)) {
              auto e = scan_type(pos_);
              if (e && ident_at(*e)) unsupported("type pattern in switch label");
            }
            add(c, conditional(), Role::Operand);
          } while (accept_op(","));
        } else {
          ++pos_;
        }
        if (accept_op("->")) {
          c.op = "->";
          add(s, close(c));
          if (is_op("{")) {
            add(s, block());
          } else if (is_kw("throw")) {
            add(s, statement());
          } else {
            AstNode body = node(kind == K::SwitchExpression ? K::YieldStatement
                                                            : K::ExpressionStatement,
                                tok().offset);
            add(body, expression(), Role::Operand);
            expect_op(";");
            add(s, close(body));
          }
        } else {
          expect_op(":");
          add(s, close(c));
        }
      } else {
        add(s, block_statement());
      }
    }
    expect_op("}");
    return close(s);
  }

  // ---- expressions ---------------------------------------------------------

  AstNode expression() {
    if (lambda_ahead()) return lambda();
    AstNode lhs = conditional();
    std::string op;
    std::size_t width = 0;
    if (tok().kind == TokenKind::Operator && contains(kAssignOps, tok().text)) {
      op = std::string(tok().text);
      width = 1;
    } else if (is_op(">")) {
      auto [text, n] = greater_operator(pos_);
      if (text == ">>=" || text == ">>>=") {
        op = text;
        width = n;
      }
    }
    if (width == 0) return lhs;
    pos_ += width;
    AstNode a = wrap(K::Assignment, std::move(lhs), Role::Operand);
    a.op = op;
    add(a, expression(), Role::Operand);
    return close(a);
  }

  AstNode lambda() {
    AstNode l = node(K::LambdaExpression, tok().offset);
    if (is_ident()) {
      AstNode frag = node(K::VariableDeclarationFragment, tok().offset);
      add(frag, simple_name(), Role::Name);
      add(l, close(frag));
    } else {
      expect_op("(");
      l.op = "()";
      if (is_op(")")) {
        // no parameters
      } else if (is_ident() && (is_op(",", 1) || is_op(")", 1))) {
        do {
          AstNode frag = node(K::VariableDeclarationFragment, tok().offset);
          add(frag, simple_name(), Role::Name);
          add(l, close(frag));
        } while (accept_op(","));
      } else {
        do {
          add(l, formal_parameter());
        } while (accept_op(","));
      }
      expect_op(")");
    }
    expect_op("->");
    add(l, is_op("{") ? block() : expression(), Role::Body);
    return close(l);
  }

  AstNode conditional() {
    AstNode c = binary(1);
    if (!is_op("?")) return c;
    ++pos_;
    AstNode cond = wrap(K::ConditionalExpression, std::move(c), Role::Operand);
    add(cond, expression(), Role::Operand);
    expect_op(":");
    add(cond, lambda_ahead() ? lambda() : conditional(), Role::Operand);
    return close(cond);
  }

  // Returns precedence (0 when the current token is not a binary operator),
  // the operator text and its width in tokens.
  int binary_operator(std::string& op, std::size_t& width) const {
    const Token& t = tok();
    width = 1;
    if (t.kind == TokenKind::Keyword && t.text == "instanceof") {
      op = "instanceof";
      return 7;
    }
    if (t.kind != TokenKind::Operator) return 0;
    op = std::string(t.text);
    if (op == ">") {
      auto [text, n] = greater_operator(pos_);
      op = text;
      width = n;
      if (op == ">" || op == ">=") return 7;
      if (op == ">>" || op == ">>>") return 8;
      return 0;
    }
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "|") return 3;
    if (op == "^") return 4;
    if (op == "&") return 5;
    if (op == "==" || op == "!=") return 6;
    if (op == "<" || op == "<=") return 7;
    if (op == "<<") return 8;
    if (op == "+" || op == "-") return 9;
    if (op == "*" || op == "/" || op == "%") return 10;
    return 0;
  }

  AstNode binary(int min_prec) {
    AstNode lhs = unary();
    while (true) {
      std::string op;
      std::size_t width = 0;
      const int prec = binary_operator(op, width);
      if (prec == 0 || prec < min_prec) break;
      pos_ += width;
      if (op == "instanceof") {
        if (is_kw("final")) unsupported("pattern matching instanceof");
        AstNode inst = wrap(K::InstanceofExpression, std::move(lhs), Role::Operand);
        add(inst, type(), Role::Type);
        if (is_ident()) unsupported("pattern matching instanceof");
        lhs = close(inst);
        continue;
      }
      AstNode infix = wrap(K::InfixExpression, std::move(lhs), Role::Operand);
      infix.op = op;
      add(infix, binary(prec + 1), Role::Operand);
      lhs = close(infix);
    }
    return lhs;
  }

  AstNode unary() {
    const Token& t = tok();
    if (t.kind == TokenKind::Operator &&
        (t.text == "++" || t.text == "--" || t.text == "+" || t.text == "-" || t.text == "!" ||
         t.text == "~")) {
      AstNode pre = node(K::PrefixExpression, t.offset);
      pre.op = std::string(t.text);
      ++pos_;
      add(pre, unary(), Role::Operand);
      return close(pre);
    }
    if (is_op("(") && cast_ahead()) {
      AstNode cast = node(K::CastExpression, t.offset);
      ++pos_;
      AstNode target = type();
      if (is_op("&")) {
        AstNode inter = wrap(K::IntersectionType, std::move(target), Role::Type);
        while (accept_op("&")) add(inter, type(), Role::Type);
        target = close(inter);
      }
      expect_op(")");
      add(cast, std::move(target), Role::Type);
      add(cast, lambda_ahead() ? lambda() : unary(), Role::Operand);
      return close(cast);
    }
    AstNode e = primary();
    while (is_op("++") || is_op("--")) {
      AstNode post = wrap(K::PostfixExpression, std::move(e), Role::Operand);
      post.op = std::string(tok().text);
      ++pos_;
      e = close(post);
    }
    return e;
  }

  std::vector<AstNode> arguments() {
    std::vector<AstNode> args;
    expect_op("(");
    if (!is_op(")")) {
      do {
        args.push_back(expression());
      } while (accept_op(","));
    }
    expect_op(")");
    return args;
  }

  AstNode primary() {
    const Token& t = tok();
    const std::size_t begin = t.offset;
    switch (t.kind) {
      case TokenKind::IntegerLiteral:
      case TokenKind::FloatingLiteral:
        return selectors(leaf(K::NumberLiteral));
      case TokenKind::StringLiteral:
        return selectors(leaf(K::StringLiteral));
      case TokenKind::TextBlock:
        return selectors(leaf(K::TextBlock));
      case TokenKind::CharLiteral:
        return selectors(leaf(K::CharacterLiteral));
      case TokenKind::Keyword: {
        if (t.text == "true" || t.text == "false") return selectors(leaf(K::BooleanLiteral));
        if (t.text == "null") return leaf(K::NullLiteral);
        if (t.text == "this") {
          ++pos_;
          AstNode self = node(K::ThisExpression, begin);
          return selectors(close(self));
        }
        if (t.text == "super") {
          ++pos_;
          return selectors(super_suffix(begin, std::nullopt));
        }
        if (t.text == "new") return selectors(creation(std::nullopt));
        if (t.text == "switch") return selectors(switch_construct(K::SwitchExpression));
        if (contains(kPrimitives, t.text) || t.text == "void") {
          AstNode ty = t.text == "void" ? leaf(K::PrimitiveType) : type();
          return type_suffix(std::move(ty));
        }
        fail("expected expression");
      }
      case TokenKind::Operator: {
        if (t.text == "(") {
          ++pos_;
          AstNode paren = node(K::ParenthesizedExpression, begin);
          add(paren, expression(), Role::Operand);
          expect_op(")");
          return selectors(close(paren));
        }
        fail("expected expression");
      }
      case TokenKind::Identifier: {
        // Generic or array types used as expressions: Foo<Bar>::new, int[].class
        auto e = scan_type(pos_);
        if (e && *e > pos_ + 1 && (op_at(*e, "::") || (op_at(*e, ".") && kw_at(*e + 1, "class")))) {
          bool complex = false;
          for (std::size_t i = pos_; i < *e; ++i) complex |= op_at(i, "<") || op_at(i, "[");
          if (complex) return type_suffix(type());
        }
        AstNode name = simple_name();
        if (is_op("(")) {
          AstNode call = node(K::MethodInvocation, begin);
          add(call, std::move(name), Role::MethodName);
          add_all(call, arguments(), Role::Argument);
          return selectors(close(call));
        }
        while (is_op(".") && is_ident(1) && !is_op("(", 2)) {
          ++pos_;
          AstNode q = wrap(K::QualifiedName, std::move(name));
          add(q, simple_name(), Role::Name);
          name = close(q);
        }
        return selectors(std::move(name));
      }
      default:
        fail("expected expression");
    }
  }

  // "::new", "::name" or ".class" after a type.
  AstNode type_suffix(AstNode ty) {
    if (is_op(".") && is_kw("class", 1)) {
      pos_ += 2;
      AstNode lit = wrap(K::TypeLiteral, std::move(ty), Role::Type);
      return selectors(close(lit));
    }
    if (accept_op("::")) {
      if (accept_kw("new")) {
        AstNode ref = wrap(K::CreationReference, std::move(ty), Role::Type);
        return close(ref);
      }
      AstNode ref = wrap(K::TypeMethodReference, std::move(ty), Role::Type);
      if (is_op("<")) add_all(ref, type_arguments(), Role::TypeArgument);
      add(ref, simple_name(), Role::Name);
      return close(ref);
    }
    fail("expected '.class' or '::' after type");
  }

  AstNode super_suffix(std::size_t begin, std::optional<AstNode> qualifier) {
    if (accept_op("::")) {
      AstNode ref = node(K::SuperMethodReference, begin);
      if (qualifier) add(ref, std::move(*qualifier), Role::SuperClass);
      if (is_op("<")) add_all(ref, type_arguments(), Role::TypeArgument);
      add(ref, simple_name(), Role::Name);
      return close(ref);
    }
    expect_op(".");
    std::vector<AstNode> targs;
    if (is_op("<")) targs = type_arguments();
    AstNode name = simple_name();
    if (is_op("(")) {
      AstNode call = node(K::SuperMethodInvocation, begin);
      if (qualifier) add(call, std::move(*qualifier), Role::SuperClass);
      add_all(call, std::move(targs), Role::TypeArgument);
      add(call, std::move(name), Role::MethodName);
      add_all(call, arguments(), Role::Argument);
      return close(call);
    }
    if (!targs.empty()) fail("expected '('");
    AstNode field = node(K::SuperFieldAccess, begin);
    if (qualifier) add(field, std::move(*qualifier), Role::SuperClass);
    add(field, std::move(name), Role::Name);
    return close(field);
  }

  AstNode creation(std::optional<AstNode> outer) {
    const std::size_t begin = outer ? outer->span.begin : tok().offset;
    expect_kw("new");
    std::vector<AstNode> targs;
    if (is_op("<")) targs = type_arguments();
    std::vector<AstNode> annotations;
    while (is_op("@")) annotations.push_back(annotation());
    AstNode base = non_array_type();
    if (is_op("[")) {
      if (outer) fail("qualified array creation");
      AstNode arr = node(K::ArrayCreation, begin);
      AstNode arr_type = wrap(K::ArrayType, std::move(base), Role::Type);
      std::vector<AstNode> sizes;
      while (is_op("[")) {
        AstNode dim = node(K::Dimension, tok().offset);
        ++pos_;
        if (!is_op("]")) sizes.push_back(expression());
        expect_op("]");
        add(arr_type, close(dim));
      }
      arr_type.span.end = prev_end();
      add(arr, std::move(arr_type), Role::Type);
      add_all(arr, std::move(sizes), Role::Operand);
      if (is_op("{")) add(arr, array_initializer(), Role::Operand);
      return close(arr);
    }
    AstNode create = node(K::ClassInstanceCreation, begin);
    if (outer) add(create, std::move(*outer), Role::Receiver);
    add_all(create, std::move(targs), Role::TypeArgument);
    add_all(create, std::move(annotations), Role::Modifier);
    add(create, std::move(base), Role::Type);
    add_all(create, arguments(), Role::Argument);
    if (is_op("{")) {
      AstNode anon = node(K::AnonymousClassDeclaration, tok().offset);
      class_body(anon);
      add(create, close(anon), Role::Body);
    }
    return close(create);
  }

  AstNode selectors(AstNode cur) {
    while (true) {
      const std::size_t begin = cur.span.begin;
      if (is_op(".")) {
        if (is_ident(1)) {
          ++pos_;
          AstNode name = simple_name();
          if (is_op("(")) {
            AstNode call = node(K::MethodInvocation, begin);
            add(call, std::move(cur), Role::Receiver);
            add(call, std::move(name), Role::MethodName);
            add_all(call, arguments(), Role::Argument);
            cur = close(call);
          } else if (is_name(cur)) {
            AstNode q = wrap(K::QualifiedName, std::move(cur));
            add(q, std::move(name), Role::Name);
            cur = close(q);
          } else {
            AstNode field = wrap(K::FieldAccess, std::move(cur), Role::Operand);
            add(field, std::move(name), Role::Name);
            cur = close(field);
          }
        } else if (is_op("<", 1)) {
          ++pos_;
          std::vector<AstNode> targs = type_arguments();
          AstNode call = node(K::MethodInvocation, begin);
          add(call, std::move(cur), Role::Receiver);
          add_all(call, std::move(targs), Role::TypeArgument);
          add(call, simple_name(), Role::MethodName);
          add_all(call, arguments(), Role::Argument);
          cur = close(call);
        } else if (is_kw("new", 1)) {
          ++pos_;
          cur = creation(std::move(cur));
        } else if (is_kw("this", 1) && is_name(cur)) {
          pos_ += 2;
          AstNode self = wrap(K::ThisExpression, std::move(cur), Role::Name);
          cur = close(self);
        } else if (is_kw("class", 1) && is_name(cur)) {
          pos_ += 2;
          AstNode ty = wrap(K::SimpleType, std::move(cur), Role::Name);
          AstNode lit = wrap(K::TypeLiteral, std::move(ty), Role::Type);
          cur = close(lit);
        } else if (is_kw("super", 1)) {
          pos_ += 2;
          if (is_op("(")) {
            AstNode call = node(K::SuperConstructorInvocation, begin);
            add(call, std::move(cur), Role::SuperClass);
            add_all(call, arguments(), Role::Argument);
            return close(call);
          }
          cur = super_suffix(begin, std::move(cur));
        } else {
          ++pos_;
          fail("expected member name");
        }
      } else if (is_op("[")) {
        ++pos_;
        AstNode access = wrap(K::ArrayAccess, std::move(cur), Role::Operand);
        add(access, expression(), Role::Operand);
        expect_op("]");
        cur = close(access);
      } else if (is_op("::")) {
        ++pos_;
        if (accept_kw("new")) {
          if (!is_name(cur)) fail("expected type before '::new'");
          AstNode ty = wrap(K::SimpleType, std::move(cur), Role::Name);
          AstNode ref = wrap(K::CreationReference, std::move(ty), Role::Type);
          cur = close(ref);
        } else {
          AstNode ref = wrap(K::ExpressionMethodReference, std::move(cur), Role::Operand);
          if (is_op("<")) add_all(ref, type_arguments(), Role::TypeArgument);
          add(ref, simple_name(), Role::Name);
          cur = close(ref);
        }
      } else {
        return cur;
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

AstNode parse_java(std::string_view source) { return Parser(source).parse(); }

}  // namespace tokrep::syntax
