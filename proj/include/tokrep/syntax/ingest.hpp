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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tokrep/syntax/ast.hpp"
#include "tokrep/syntax/filter_rules.hpp"
#include "tokrep/syntax/token_event.hpp"

namespace tokrep::syntax {

/// Method declarations with a body, in source order. Methods of member types
/// are included; methods of local or anonymous classes stay inside the
/// enclosing method. A MethodDeclaration or Block root is its own function.
std::vector<const AstNode*> function_roots(const AstNode& root);

/// Parse, resolve variables and linearize every function of one source.
/// Function ids are "<path_id>#<ordinal>". Throws SyntaxError or
/// UnsupportedConstruct.
std::vector<FunctionEvents> ingest_source(std::string_view source, const std::string& path_id,
                                          const FilterRuleSet& rules = FilterRuleSet::standard());

struct SourceFile {
  std::string path;  // relative to the corpus root, '/' separated
  std::vector<FunctionEvents> functions;
};

struct SkippedFile {
  std::string path;
  std::string reason;
};

struct IngestResult {
  std::vector<SourceFile> files;  // lexicographic by path
  std::vector<SkippedFile> skipped;

  std::vector<FunctionEvents> all_functions() const;
};

/// Ingest every .java file below \p dir. Files that fail to parse are
/// reported in \c skipped. Output order is by relative path regardless of
/// the number of worker threads.
IngestResult ingest_directory(const std::filesystem::path& dir,
                              const FilterRuleSet& rules = FilterRuleSet::standard(),
                              unsigned threads = 0);

}  // namespace tokrep::syntax
