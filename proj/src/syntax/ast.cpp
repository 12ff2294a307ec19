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

#include "tokrep/syntax/ast.hpp"

#include <array>

namespace tokrep::syntax {

namespace {

constexpr std::array kKindNames = {
#define TOKREP_NAME_ENTRY(name) std::string_view{#name},
    TOKREP_NODE_KINDS(TOKREP_NAME_ENTRY)
#undef TOKREP_NAME_ENTRY
};

void preorder(const AstNode& node, const AstNode* parent,
              const std::function<void(const AstNode&, const AstNode*)>& fn) {
  fn(node, parent);
  for (const auto& child : node.children) preorder(child, &node, fn);
}

}  // namespace

std::string_view kind_name(NodeKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<NodeKind> kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<NodeKind>(i);
  }
  return std::nullopt;
}

std::string_view role_name(Role role) {
  switch (role) {
    case Role::None: return "none";
    case Role::Name: return "name";
    case Role::Receiver: return "receiver";
    case Role::MethodName: return "method-name";
    case Role::Argument: return "argument";
    case Role::TypeArgument: return "type-argument";
    case Role::SuperClass: return "super-class";
    case Role::Type: return "type";
    case Role::Body: return "body";
    case Role::Operand: return "operand";
    case Role::Modifier: return "modifier";
  }
  return "none";
}

bool is_leaf_kind(NodeKind kind) {
  switch (kind) {
    case NodeKind::SimpleName:
    case NodeKind::NumberLiteral:
    case NodeKind::StringLiteral:
    case NodeKind::TextBlock:
    case NodeKind::CharacterLiteral:
    case NodeKind::BooleanLiteral:
    case NodeKind::NullLiteral:
    case NodeKind::Modifier:
    case NodeKind::PrimitiveType:
      return true;
    default:
      return false;
  }
}

void visit_preorder(const AstNode& root,
                    const std::function<void(const AstNode&, const AstNode*)>& fn) {
  preorder(root, nullptr, fn);
}

std::size_t count_nodes(const AstNode& root) {
  std::size_t n = 1;
  for (const auto& child : root.children) n += count_nodes(child);
  return n;
}

}  // namespace tokrep::syntax
