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

#include <optional>
#include <string>
#include <vector>

#include "tokrep/syntax/ast.hpp"

namespace tokrep::syntax {

/// Outcome for one SimpleName in a position that can denote a variable.
struct Binding {
  std::string name;
  SourceSpan use;
  std::optional<SourceSpan> declaration;  // empty when unresolved
};

/// Lexical stand-in for semantic binding resolution.
///
/// Marks \c is_variable on every SimpleName that declares, or lexically
/// resolves to, a formal parameter, local variable, for / enhanced-for
/// variable, catch parameter, lambda parameter, or a field (enum constants
/// included) declared in an enclosing type of the same file. Block nesting
/// and shadowing follow Java scoping; inherited members are not visible.
///
/// Returns one record per declaration and per candidate reference, in
/// pre-order.
std::vector<Binding> resolve_variables(AstNode& root);

}  // namespace tokrep::syntax
