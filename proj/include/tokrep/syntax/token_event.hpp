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
#include <iosfwd>
#include <string>
#include <vector>

#include "tokrep/syntax/ast.hpp"
#include "tokrep/syntax/filter_rules.hpp"

namespace tokrep::syntax {

/// One token of a linearized method: either the type token of a node or the
/// content token of a leaf.
struct TokenEvent {
  std::string text;
  bool is_content = false;
  NodeClass node_class = NodeClass::NotSimpleName;
  bool is_variable = false;
  std::string function_id;
  std::size_t position = 0;
  std::string parent_kind;  // kind name of the node's parent, empty at the root

  bool operator==(const TokenEvent&) const = default;
};

struct FunctionEvents {
  std::string id;
  std::vector<TokenEvent> events;

  bool operator==(const FunctionEvents&) const = default;
};

/// Text of the type token emitted for \p node ("InfixExpression:+").
std::string type_token_text(const AstNode& node);

/// Pre-order linearization. Internal nodes emit one type token; leaves emit
/// their type token followed by a content token. Positions count from 0.
std::vector<TokenEvent> linearize(const AstNode& root,
                                  const FilterRuleSet& rules = FilterRuleSet::standard(),
                                  const std::string& function_id = {});

// Token-event JSONL: one object per line with keys fn, pos, text, content,
// class, var, parent, in that order.
void write_events(std::ostream& out, const std::vector<FunctionEvents>& functions);
std::vector<FunctionEvents> read_events(std::istream& in);

}  // namespace tokrep::syntax
