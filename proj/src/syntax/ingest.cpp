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
#include "tokrep/syntax/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "tokrep/error.hpp"
#include "tokrep/parallel.hpp"
#include "tokrep/syntax/java_parser.hpp"
#include "tokrep/syntax/variable_resolver.hpp"

namespace tokrep::syntax {
namespace {

bool has_body(const AstNode& method) {
  return std::any_of(method.children.begin(), method.children.end(),
                     [](const AstNode& c) { return c.kind == NodeKind::Block; });
}

void collect_members(const AstNode& type, std::vector<const AstNode*>& out) {
  for (const auto& member : type.children) {
    switch (member.kind) {
      case NodeKind::MethodDeclaration:
        if (has_body(member)) out.push_back(&member);
        break;
      case NodeKind::TypeDeclaration:
      case NodeKind::EnumDeclaration:
      case NodeKind::AnnotationTypeDeclaration:
        collect_members(member, out);
        break;
      default:
        break;  // fields, initializers and enum constants are skipped
    }
  }
}

}  // namespace

std::vector<const AstNode*> function_roots(const AstNode& root) {
  std::vector<const AstNode*> out;
  if (root.kind == NodeKind::MethodDeclaration || root.kind == NodeKind::Block) {
    out.push_back(&root);
  } else if (root.kind == NodeKind::CompilationUnit) {
    collect_members(root, out);
  }
  return out;
}

std::vector<FunctionEvents> ingest_source(std::string_view source, const std::string& path_id,
                                          const FilterRuleSet& rules) {
  AstNode root = parse_java(source);
  resolve_variables(root);
  std::vector<FunctionEvents> functions;
  std::size_t ordinal = 0;
  for (const AstNode* fn : function_roots(root)) {
    std::string id = path_id + "#" + std::to_string(ordinal++);
    auto events = linearize(*fn, rules, id);
    functions.push_back({std::move(id), std::move(events)});
  }
  return functions;
}

std::vector<FunctionEvents> IngestResult::all_functions() const {
  std::vector<FunctionEvents> out;
  for (const auto& file : files) out.insert(out.end(), file.functions.begin(), file.functions.end());
  return out;
}

IngestResult ingest_directory(const std::filesystem::path& dir, const FilterRuleSet& rules,
                              unsigned threads) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::vector<std::string> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") {
      paths.push_back(fs::relative(entry.path(), dir).generic_string());
    }
  }
  std::sort(paths.begin(), paths.end());

  struct Outcome {
    std::optional<SourceFile> file;
    std::optional<SkippedFile> skipped;
  };
  std::vector<Outcome> outcomes(paths.size());
  parallel_for(
      paths.size(),
      [&](std::size_t i) {
        std::ifstream in(dir / paths[i], std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        if (!in) {
          outcomes[i].skipped = SkippedFile{paths[i], "unreadable file"};
          return;
        }
        try {
          outcomes[i].file = SourceFile{paths[i], ingest_source(buf.str(), paths[i], rules)};
        } catch (const DataError& e) {
          outcomes[i].skipped = SkippedFile{paths[i], e.what()};
        }
      },
      threads);

  IngestResult result;
  for (auto& o : outcomes) {
    if (o.file) result.files.push_back(std::move(*o.file));
    if (o.skipped) result.skipped.push_back(std::move(*o.skipped));
  }
  return result;
}

}  // namespace tokrep::syntax
