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
#include "tokrep/syntax/token_event.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "tokrep/error.hpp"

namespace tokrep::syntax {

std::string type_token_text(const AstNode& node) {
  std::string text(kind_name(node.kind));
  if (!node.op.empty()) {
    text += ':';
    text += node.op;
  }
  return text;
}

namespace {

void emit(const AstNode& node, const AstNode* parent, const FilterRuleSet& rules,
          const std::string& function_id, std::vector<TokenEvent>& out) {
  const std::string parent_kind = parent ? std::string(kind_name(parent->kind)) : std::string();
  TokenEvent type_token;
  type_token.text = type_token_text(node);
  type_token.function_id = function_id;
  type_token.position = out.size();
  type_token.parent_kind = parent_kind;
  out.push_back(std::move(type_token));

  if (node.is_leaf()) {
    TokenEvent content;
    content.text = node.content;
    content.is_content = true;
    content.node_class = classify(node, parent, rules);
    content.is_variable = node.is_variable && content.node_class == NodeClass::Cared;
    content.function_id = function_id;
    content.position = out.size();
    content.parent_kind = parent_kind;
    out.push_back(std::move(content));
    return;
  }
  for (const auto& child : node.children) emit(child, &node, rules, function_id, out);
}

}  // namespace

std::vector<TokenEvent> linearize(const AstNode& root, const FilterRuleSet& rules,
                                  const std::string& function_id) {
  std::vector<TokenEvent> out;
  emit(root, nullptr, rules, function_id, out);
  return out;
}

void write_events(std::ostream& out, const std::vector<FunctionEvents>& functions) {
  for (const auto& fn : functions) {
    for (const auto& ev : fn.events) {
      nlohmann::ordered_json line;
      line["fn"] = fn.id;
      line["pos"] = ev.position;
      line["text"] = ev.text;
      line["content"] = ev.is_content;
      line["class"] = node_class_name(ev.node_class);
      line["var"] = ev.is_variable;
      line["parent"] = ev.parent_kind;
      out << line.dump() << '\n';
    }
  }
}

std::vector<FunctionEvents> read_events(std::istream& in) {
  std::vector<FunctionEvents> functions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    TokenEvent ev;
    try {
      auto j = nlohmann::json::parse(line);
      ev.function_id = j.at("fn").get<std::string>();
      ev.position = j.at("pos").get<std::size_t>();
      ev.text = j.at("text").get<std::string>();
      ev.is_content = j.at("content").get<bool>();
      auto cls = node_class_from_name(j.at("class").get<std::string>());
      if (!cls) throw DataError("unknown node class");
      ev.node_class = *cls;
      ev.is_variable = j.at("var").get<bool>();
      ev.parent_kind = j.value("parent", std::string());
    } catch (const nlohmann::json::exception& e) {
      throw DataError("token-event line " + std::to_string(line_no) + ": " + e.what());
    }
    if (functions.empty() || functions.back().id != ev.function_id) {
      functions.push_back({ev.function_id, {}});
    }
    auto& fn = functions.back();
    if (ev.position != fn.events.size()) {
      throw DataError("token-event line " + std::to_string(line_no) +
                      ": non-consecutive position in function " + fn.id);
    }
    fn.events.push_back(std::move(ev));
  }
  return functions;
}

}  // namespace tokrep::syntax
