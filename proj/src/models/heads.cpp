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
#include "tokrep/models/heads.hpp"

#include <algorithm>
#include <set>

#include "tokrep/error.hpp"
#include "tokrep/syntax/ast.hpp"

namespace tokrep::models {

const char* head_mode_name(HeadMode mode) {
  switch (mode) {
    case HeadMode::Single: return "single";
    case HeadMode::PerKind: return "per-kind";
    case HeadMode::VariablesOnly: return "variables-only";
  }
  return "single";
}

HeadMode head_mode_from_name(const std::string& name) {
  if (name == "single") return HeadMode::Single;
  if (name == "per-kind") return HeadMode::PerKind;
  if (name == "variables-only") return HeadMode::VariablesOnly;
  throw UsageError("unknown head mode '" + name + "' (single, per-kind, variables-only)");
}

nlohmann::ordered_json HeadRouting::to_json() const {
  nlohmann::ordered_json j;
  j["mode"] = head_mode_name(mode);
  j["kinds"] = kinds;
  return j;
}

HeadRouting HeadRouting::from_json(const nlohmann::json& j) {
  HeadRouting r;
  try {
    r.mode = head_mode_from_name(j.at("mode").get<std::string>());
    if (j.contains("kinds")) r.kinds = j.at("kinds").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed head routing: ") + e.what());
  }
  std::set<std::string> seen;
  for (const auto& k : r.kinds) {
    if (!syntax::kind_from_name(k) || *syntax::kind_from_name(k) == syntax::NodeKind::Other) {
      throw UsageError("head routing names unknown node kind '" + k + "'");
    }
    if (!seen.insert(k).second) throw UsageError("head routing lists kind '" + k + "' twice");
  }
  if (r.mode != HeadMode::PerKind && !r.kinds.empty()) {
    throw UsageError("head routing kinds are only meaningful in per-kind mode");
  }
  return r;
}

RepHeadSet::RepHeadSet(HeadRouting routing) : routing_(std::move(routing)) {
  heads_.push_back(kDefaultHead);
  if (routing_.mode == HeadMode::PerKind) {
    heads_.insert(heads_.end(), routing_.kinds.begin(), routing_.kinds.end());
  }
}

std::size_t RepHeadSet::route(const std::string& parent_kind) const {
  if (routing_.mode != HeadMode::PerKind) return 0;
  auto it = std::find(heads_.begin() + 1, heads_.end(), parent_kind);
  return it == heads_.end() ? 0 : static_cast<std::size_t>(it - heads_.begin());
}

ContextStates RepHeadSet::effective_context(const ContextStates& ctx) const {
  if (routing_.mode == HeadMode::VariablesOnly) return variables_only(ctx);
  return ctx;
}

std::vector<std::string> RepHeadSet::param_names(std::size_t head) const {
  const std::string prefix = "rep." + heads_.at(head) + ".";
  return {prefix + "pointer", prefix + "repeat", prefix + "fresh"};
}

void RepHeadSet::register_params(nn::ParamStore& store, Eigen::Index hidden) const {
  for (std::size_t h = 0; h < heads_.size(); ++h) {
    for (const auto& name : param_names(h)) store.add(name, hidden, hidden);
  }
}

RepParams RepHeadSet::params(const nn::ParamStore& store, std::size_t head) const {
  const auto names = param_names(head);
  return {&store.get(names[0]).value, &store.get(names[1]).value, &store.get(names[2]).value};
}

RepTapeHead RepHeadSet::bind(nn::Tape& tape, nn::ParamStore& store, std::size_t head) const {
  const auto names = param_names(head);
  return {tape.param(store.get(names[0])), tape.param(store.get(names[1])),
          tape.param(store.get(names[2]))};
}

RepParams route_head(const std::string& parent_kind, const RepHeadSet& heads,
                     const nn::ParamStore& store) {
  return heads.params(store, heads.route(parent_kind));
}

}  // namespace tokrep::models
