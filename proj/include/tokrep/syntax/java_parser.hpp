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

#include <string_view>

#include "tokrep/syntax/ast.hpp"
#include "tokrep/syntax/java_lexer.hpp"

namespace tokrep::syntax {

// Parses Java source into a JDT-shaped tree.
//
// The input may be a full compilation unit, a single method declaration, or a
// bare list of block statements (the body of a method without its braces).
// The root is CompilationUnit, MethodDeclaration, or Block respectively.
//
// Supported subset: classes, interfaces, enums, annotation types, nested and
// anonymous classes, generics with wildcards, annotations, lambdas, method
// references, classic and arrow switch, try-with-resources, text blocks.
// Records, sealed types and pattern matching raise UnsupportedConstruct.
AstNode parse_java(std::string_view source);

}  // namespace tokrep::syntax
