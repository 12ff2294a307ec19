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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tokrep/syntax/ast.hpp"

namespace tokrep::syntax {

enum class NodeClass : std::uint8_t { NotSimpleName, FilteredSimpleName, Cared };

std::string_view node_class_name(NodeClass cls);  // "not-sn" | "filtered" | "cared"
std::optional<NodeClass> node_class_from_name(std::string_view name);

enum class ExtraCondition : std::uint8_t {
  None,
  IsMethodName,
  IsSuperClass,
  IsMethodNameOrSuperClass,
};

struct FilterRule {
  NodeKind parent;
  ExtraCondition condition = ExtraCondition::None;
};

/// Parent-kind rules that exclude a SimpleName from the repetition model.
/// Membership depends only on (parent kind, role in parent).
class FilterRuleSet {
 public:
  explicit FilterRuleSet(std::vector<FilterRule> rules) : rules_(std::move(rules)) {}

  /// The sixteen exclusion rows used throughout the toolkit: labels, type
  /// names, annotations, qualified names, declared method names, switch
  /// labels, method references and invoked method / super class names.
  static FilterRuleSet standard();

  bool matches(NodeKind parent, Role role) const;
  std::span<const FilterRule> rules() const { return rules_; }

 private:
  std::vector<FilterRule> rules_;
};

/// not-sn for non-SimpleName leaves, filtered when a rule matches the
/// parent, cared otherwise. \p parent may be null for a bare root leaf.
NodeClass classify(const AstNode& node, const AstNode* parent, const FilterRuleSet& rules);

}  // namespace tokrep::syntax
