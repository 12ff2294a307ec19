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
#include <string>
#include <vector>

#include "json.hpp"
#include "tokrep/models/rep.hpp"
#include "tokrep/nn/tape.hpp"
#include "tokrep/nn/tensor.hpp"

namespace tokrep::models {

enum class HeadMode { Single, PerKind, VariablesOnly };

const char* head_mode_name(HeadMode mode);
/// Throws UsageError for an unknown name.
HeadMode head_mode_from_name(const std::string& name);

/// {"mode": "single" | "per-kind" | "variables-only", "kinds": [...]}.
/// In per-kind mode every listed parent kind gets its own head and the
/// remaining kinds share a default head.
struct HeadRouting {
  HeadMode mode = HeadMode::Single;
  std::vector<std::string> kinds;

  nlohmann::ordered_json to_json() const;
  /// Validates the mode and every kind name (UsageError).
  static HeadRouting from_json(const nlohmann::json& j);
  bool operator==(const HeadRouting&) const = default;
};

inline constexpr const char* kDefaultHead = "default";

/// The REP heads of one model and the rule that picks one per prediction.
class RepHeadSet {
 public:
  explicit RepHeadSet(HeadRouting routing = {});

  const HeadRouting& routing() const { return routing_; }
  const std::vector<std::string>& head_names() const { return heads_; }
  std::size_t head_count() const { return heads_.size(); }

  /// Head index for a cared token whose parent has kind \p parent_kind.
  std::size_t route(const std::string& parent_kind) const;
  /// Context the head sees: all cared entries, or only variables.
  ContextStates effective_context(const ContextStates& ctx) const;

  void register_params(nn::ParamStore& store, Eigen::Index hidden) const;
  RepParams params(const nn::ParamStore& store, std::size_t head) const;
  RepTapeHead bind(nn::Tape& tape, nn::ParamStore& store, std::size_t head) const;
  /// Parameter names of one head: pointer, repeat, fresh.
  std::vector<std::string> param_names(std::size_t head) const;

 private:
  HeadRouting routing_;
  std::vector<std::string> heads_;
};

/// Params of the head responsible for \p parent_kind.
RepParams route_head(const std::string& parent_kind, const RepHeadSet& heads,
                     const nn::ParamStore& store);

}  // namespace tokrep::models
