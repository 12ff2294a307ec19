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
#include "tokrep/syntax/filter_rules.hpp"

#include <algorithm>

namespace tokrep::syntax {

std::string_view node_class_name(NodeClass cls) {
  switch (cls) {
    case NodeClass::NotSimpleName: return "not-sn";
    case NodeClass::FilteredSimpleName: return "filtered";
    case NodeClass::Cared: return "cared";
  }
  return "not-sn";
}

std::optional<NodeClass> node_class_from_name(std::string_view name) {
  if (name == "not-sn") return NodeClass::NotSimpleName;
  if (name == "filtered") return NodeClass::FilteredSimpleName;
  if (name == "cared") return NodeClass::Cared;
  return std::nullopt;
}

FilterRuleSet FilterRuleSet::standard() {
  using K = NodeKind;
  using C = ExtraCondition;
  return FilterRuleSet({
      {K::ContinueStatement, C::None},
      {K::SimpleType, C::None},
      {K::TypeParameter, C::None},
      {K::MarkerAnnotation, C::None},
      {K::NormalAnnotation, C::None},
      {K::MemberValuePair, C::None},
      {K::QualifiedType, C::None},
      {K::QualifiedName, C::None},
      {K::MethodDeclaration, C::None},
      {K::LabeledStatement, C::None},
      {K::BreakStatement, C::None},
      {K::ExpressionMethodReference, C::None},
      {K::SwitchCase, C::None},
      {K::MethodInvocation, C::IsMethodName},
      {K::SuperConstructorInvocation, C::IsSuperClass},
      {K::SuperMethodInvocation, C::IsMethodNameOrSuperClass},
  });
}

bool FilterRuleSet::matches(NodeKind parent, Role role) const {
  return std::any_of(rules_.begin(), rules_.end(), [&](const FilterRule& rule) {
    if (rule.parent != parent) return false;
    switch (rule.condition) {
      case ExtraCondition::None: return true;
      case ExtraCondition::IsMethodName: return role == Role::MethodName;
      case ExtraCondition::IsSuperClass: return role == Role::SuperClass;
      case ExtraCondition::IsMethodNameOrSuperClass:
        return role == Role::MethodName || role == Role::SuperClass;
    }
    return false;
  });
}

NodeClass classify(const AstNode& node, const AstNode* parent, const FilterRuleSet& rules) {
  if (node.kind != NodeKind::SimpleName) return NodeClass::NotSimpleName;
  if (parent != nullptr && rules.matches(parent->kind, node.role)) {
    return NodeClass::FilteredSimpleName;
  }
  return NodeClass::Cared;
}

}  // namespace tokrep::syntax
