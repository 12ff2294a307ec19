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
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tokrep::syntax {

// Node kinds follow the Eclipse JDT DOM names so that filter rules can be
// written against the familiar vocabulary.
#define TOKREP_NODE_KINDS(X)                                               \
  X(CompilationUnit) X(PackageDeclaration) X(ImportDeclaration)            \
  X(TypeDeclaration) X(EnumDeclaration) X(EnumConstantDeclaration)         \
  X(AnnotationTypeDeclaration) X(AnnotationTypeMemberDeclaration)          \
  X(AnonymousClassDeclaration) X(FieldDeclaration) X(MethodDeclaration)    \
  X(Initializer) X(SingleVariableDeclaration)                              \
  X(VariableDeclarationFragment) X(VariableDeclarationStatement)           \
  X(VariableDeclarationExpression) X(TypeDeclarationStatement)             \
  X(Block) X(EmptyStatement) X(ExpressionStatement) X(IfStatement)         \
  X(WhileStatement) X(DoStatement) X(ForStatement) X(EnhancedForStatement) \
  X(ReturnStatement) X(BreakStatement) X(ContinueStatement)                \
  X(LabeledStatement) X(SwitchStatement) X(SwitchExpression) X(SwitchCase) \
  X(YieldStatement) X(ThrowStatement) X(TryStatement) X(CatchClause)       \
  X(SynchronizedStatement) X(AssertStatement) X(ConstructorInvocation)     \
  X(SuperConstructorInvocation) X(Assignment) X(ConditionalExpression)     \
  X(InfixExpression) X(InstanceofExpression) X(PrefixExpression)           \
  X(PostfixExpression) X(CastExpression) X(ParenthesizedExpression)        \
  X(LambdaExpression) X(MethodInvocation) X(SuperMethodInvocation)         \
  X(ClassInstanceCreation) X(ArrayCreation) X(ArrayInitializer)            \
  X(ArrayAccess) X(FieldAccess) X(SuperFieldAccess) X(ThisExpression)      \
  X(TypeLiteral) X(ExpressionMethodReference) X(TypeMethodReference)       \
  X(SuperMethodReference) X(CreationReference) X(SimpleName)               \
  X(QualifiedName) X(NumberLiteral) X(StringLiteral) X(TextBlock)          \
  X(CharacterLiteral) X(BooleanLiteral) X(NullLiteral) X(Modifier)         \
  X(PrimitiveType) X(SimpleType) X(QualifiedType) X(ParameterizedType)     \
  X(ArrayType) X(WildcardType) X(UnionType) X(IntersectionType)            \
  X(TypeParameter) X(Dimension) X(MarkerAnnotation) X(NormalAnnotation)    \
  X(SingleMemberAnnotation) X(MemberValuePair) X(Other)

enum class NodeKind : std::uint8_t {
#define TOKREP_ENUM_ENTRY(name) name,
  TOKREP_NODE_KINDS(TOKREP_ENUM_ENTRY)
#undef TOKREP_ENUM_ENTRY
};

/// Position of a child inside its parent. Only the invocation kinds rely
/// on it for filtering; elsewhere it is informational.
enum class Role : std::uint8_t {
  None,
  Name,          // declared or referenced name of the parent construct
  Receiver,      // expression before the dot of a method invocation
  MethodName,    // invoked method name
  Argument,      // invocation argument
  TypeArgument,  // explicit invocation type argument
  SuperClass,    // qualifier naming the super class / outer instance
  Type,
  Body,
  Operand,
  Modifier,
};

std::string_view kind_name(NodeKind kind);
std::optional<NodeKind> kind_from_name(std::string_view name);
std::string_view role_name(Role role);

/// True for the kinds that carry source text and never have children.
bool is_leaf_kind(NodeKind kind);

struct SourceSpan {
  std::size_t begin = 0;  // byte offset of the first character
  std::size_t end = 0;    // one past the last character
};

struct AstNode {
  NodeKind kind = NodeKind::Other;
  Role role = Role::None;
  std::string content;  // leaves only
  std::string op;       // operator or flavor of an internal node, e.g. "+"
  SourceSpan span;
  bool is_variable = false;
  std::vector<AstNode> children;

  bool is_leaf() const { return is_leaf_kind(kind); }
};

/// Pre-order visit with access to the parent (null for the root).
void visit_preorder(const AstNode& root,
                    const std::function<void(const AstNode& node, const AstNode* parent)>& fn);

std::size_t count_nodes(const AstNode& root);

}  // namespace tokrep::syntax
