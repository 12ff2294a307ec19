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
#include "tokrep/syntax/variable_resolver.hpp"

#include <unordered_map>

namespace tokrep::syntax {
namespace {

using K = NodeKind;

bool is_type_body(K kind) {
  return kind == K::TypeDeclaration || kind == K::EnumDeclaration ||
         kind == K::AnnotationTypeDeclaration || kind == K::AnonymousClassDeclaration;
}

bool opens_scope(K kind) {
  switch (kind) {
    case K::MethodDeclaration:
    case K::Initializer:
    case K::LambdaExpression:
    case K::Block:
    case K::SwitchStatement:
    case K::SwitchExpression:
    case K::ForStatement:
    case K::CatchClause:
      return true;
    default:
      return false;
  }
}

// Parents under which a SimpleName is a type, label, package, annotation,
// member or method name rather than an expression.
bool is_name_context(const AstNode& parent, Role role) {
  switch (parent.kind) {
    case K::SimpleType:
    case K::QualifiedType:
    case K::QualifiedName:
    case K::TypeParameter:
    case K::MarkerAnnotation:
    case K::NormalAnnotation:
    case K::MemberValuePair:
    case K::MethodDeclaration:
    case K::TypeDeclaration:
    case K::EnumDeclaration:
    case K::AnnotationTypeDeclaration:
    case K::AnnotationTypeMemberDeclaration:
    case K::LabeledStatement:
    case K::BreakStatement:
    case K::ContinueStatement:
    case K::TypeMethodReference:
    case K::SuperMethodReference:
    case K::SuperFieldAccess:
    case K::ThisExpression:
    case K::PackageDeclaration:
    case K::ImportDeclaration:
      return true;
    case K::SingleMemberAnnotation:
    case K::ExpressionMethodReference:
      return role == Role::Name;
    case K::MethodInvocation:
      return role == Role::MethodName;
    case K::SuperMethodInvocation:
      return role == Role::MethodName || role == Role::SuperClass;
    default:
      return false;
  }
}

struct Frame {
  bool type_frame = false;
  std::unordered_map<std::string, SourceSpan> names;
};

class Resolver {
 public:
  std::vector<Binding> run(AstNode& root) {
    frames_.push_back({});
    visit(root, nullptr);
    return std::move(out_);
  }

 private:
  void declare(AstNode& name) {
    name.is_variable = true;
    frames_.back().names[name.content] = name.span;
    out_.push_back({name.content, name.span, name.span});
  }

  std::optional<SourceSpan> lookup(const std::string& name, bool fields_only) const {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      if (fields_only && !it->type_frame) continue;
      auto found = it->names.find(name);
      if (found != it->names.end()) return found->second;
      if (fields_only) return std::nullopt;  // innermost type only
    }
    return std::nullopt;
  }

  void reference(AstNode& name, bool fields_only = false) {
    auto decl = lookup(name.content, fields_only);
    name.is_variable = decl.has_value();
    out_.push_back({name.content, name.span, decl});
  }

  void enter_type(AstNode& type) {
    Frame frame;
    frame.type_frame = true;
    for (auto& member : type.children) {
      if (member.kind == K::FieldDeclaration) {
        for (auto& frag : member.children) {
          if (frag.kind != K::VariableDeclarationFragment) continue;
          frame.names[frag.children.front().content] = frag.children.front().span;
        }
      } else if (member.kind == K::EnumConstantDeclaration) {
        for (auto& c : member.children) {
          if (c.kind == K::SimpleName && c.role == Role::Name) {
            frame.names[c.content] = c.span;
            break;
          }
        }
      }
    }
    frames_.push_back(std::move(frame));
  }

  void visit_children(AstNode& node) {
    for (auto& child : node.children) visit(child, &node);
  }

  void visit(AstNode& node, AstNode* parent) {
    if (is_type_body(node.kind)) {
      enter_type(node);
      visit_children(node);
      frames_.pop_back();
      return;
    }
    switch (node.kind) {
      case K::SimpleName:
        if (parent == nullptr || !is_name_context(*parent, node.role)) reference(node);
        return;
      case K::QualifiedName: {
        if (parent != nullptr && is_name_context(*parent, node.role)) return;
        AstNode* head = &node;
        while (head->kind == K::QualifiedName) head = &head->children.front();
        if (head->kind == K::SimpleName) reference(*head);
        return;
      }
      case K::FieldAccess: {
        AstNode& target = node.children.front();
        visit(target, &node);
        if (target.kind == K::ThisExpression && target.children.empty()) {
          reference(node.children.back(), /*fields_only=*/true);
        }
        return;
      }
      case K::VariableDeclarationFragment: {
        AstNode& name = node.children.front();
        if (parent != nullptr && parent->kind == K::FieldDeclaration) {
          name.is_variable = true;
          out_.push_back({name.content, name.span, name.span});
        } else {
          declare(name);
        }
        for (std::size_t i = 1; i < node.children.size(); ++i) visit(node.children[i], &node);
        return;
      }
      case K::SingleVariableDeclaration:
        for (auto& child : node.children) {
          if (child.kind == K::SimpleName && child.role == Role::Name) {
            declare(child);
          } else {
            visit(child, &node);
          }
        }
        return;
      case K::EnumConstantDeclaration:
        for (auto& child : node.children) {
          if (child.kind == K::SimpleName && child.role == Role::Name) {
            child.is_variable = true;
            out_.push_back({child.content, child.span, child.span});
          } else {
            visit(child, &node);
          }
        }
        return;
      case K::EnhancedForStatement: {
        // The iterated expression is outside the loop variable's scope.
        frames_.push_back({});
        visit(node.children[1], &node);
        visit(node.children[0], &node);
        for (std::size_t i = 2; i < node.children.size(); ++i) visit(node.children[i], &node);
        frames_.pop_back();
        return;
      }
      case K::TryStatement: {
        frames_.push_back({});
        std::size_t i = 0;
        for (; i < node.children.size(); ++i) {
          visit(node.children[i], &node);
          if (node.children[i].kind == K::Block) break;
        }
        frames_.pop_back();
        for (++i; i < node.children.size(); ++i) visit(node.children[i], &node);
        return;
      }
      default:
        break;
    }
    if (opens_scope(node.kind)) {
      frames_.push_back({});
      visit_children(node);
      frames_.pop_back();
      return;
    }
    visit_children(node);
  }

  std::vector<Frame> frames_;
  std::vector<Binding> out_;
};

}  // namespace

std::vector<Binding> resolve_variables(AstNode& root) { return Resolver().run(root); }

}  // namespace tokrep::syntax
