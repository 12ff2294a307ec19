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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tokrep/syntax/token_event.hpp"

namespace tokrep::corpus {

/// Token <-> id map over the training split. The least frequent training
/// tokens share the UNK id.
class Vocabulary {
 public:
  static constexpr int kUnkId = 0;
  static constexpr int kBosId = 1;
  static constexpr std::string_view kUnkToken = "<unk>";
  static constexpr std::string_view kBosToken = "<bos>";
  static constexpr std::size_t kDefaultUnkBudget = 1000;

  /// UNK receives min(unk_budget, distinct - 1) tokens: ascending frequency,
  /// ties in lexicographic order. At least the most frequent token keeps its
  /// own id. Throws DataError when the training split has no tokens.
  static Vocabulary build(std::span<const syntax::FunctionEvents> training,
                          std::size_t unk_budget = kDefaultUnkBudget);

  std::size_t size() const { return tokens_.size(); }
  int encode(std::string_view token) const;
  const std::string& decode(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  /// True when \p token has its own id (not UNK, not a reserved symbol).
  bool known(std::string_view token) const;
  bool is_special(int id) const { return id == kUnkId || id == kBosId; }

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<std::string>& unk_tokens() const { return unk_tokens_; }
  const std::map<std::string, std::size_t>& frequencies() const { return frequencies_; }

  nlohmann::ordered_json to_json() const;
  static Vocabulary from_json(const nlohmann::json& j);

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_ && unk_tokens_ == other.unk_tokens_ &&
           frequencies_ == other.frequencies_;
  }

 private:
  void index();

  std::vector<std::string> tokens_;      // id -> token; [0]=<unk>, [1]=<bos>
  std::vector<std::string> unk_tokens_;  // training tokens mapped to UNK, sorted
  std::map<std::string, std::size_t> frequencies_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace tokrep::corpus
