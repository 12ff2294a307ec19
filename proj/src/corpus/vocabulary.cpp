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
#include "tokrep/corpus/vocabulary.hpp"

#include <algorithm>

#include "tokrep/error.hpp"

namespace tokrep::corpus {

Vocabulary Vocabulary::build(std::span<const syntax::FunctionEvents> training,
                             std::size_t unk_budget) {
  Vocabulary vocab;
  for (const auto& fn : training) {
    for (const auto& ev : fn.events) ++vocab.frequencies_[ev.text];
  }
  if (vocab.frequencies_.empty()) throw DataError("cannot build a vocabulary from an empty training set");

  std::vector<std::pair<std::string, std::size_t>> order(vocab.frequencies_.begin(),
                                                         vocab.frequencies_.end());
  // std::map iteration is lexicographic, stable_sort keeps that within ties.
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  const std::size_t unk_count = std::min(unk_budget, order.size() - 1);

  std::vector<std::string> kept;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i < unk_count) {
      vocab.unk_tokens_.push_back(order[i].first);
    } else {
      kept.push_back(order[i].first);
    }
  }
  std::sort(vocab.unk_tokens_.begin(), vocab.unk_tokens_.end());
  std::sort(kept.begin(), kept.end());
  vocab.tokens_ = {std::string(kUnkToken), std::string(kBosToken)};
  vocab.tokens_.insert(vocab.tokens_.end(), kept.begin(), kept.end());
  vocab.index();
  return vocab;
}

void Vocabulary::index() {
  ids_.clear();
  for (std::size_t i = 0; i < tokens_.size(); ++i) ids_[tokens_[i]] = static_cast<int>(i);
}

int Vocabulary::encode(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end() || it->second == kBosId) return kUnkId;
  return it->second;
}

bool Vocabulary::known(std::string_view token) const {
  const int id = encode(token);
  return !is_special(id);
}

nlohmann::ordered_json Vocabulary::to_json() const {
  nlohmann::ordered_json j;
  j["tokens"] = tokens_;
  j["unk_tokens"] = unk_tokens_;
  nlohmann::ordered_json freq = nlohmann::ordered_json::object();
  for (const auto& [tok, n] : frequencies_) freq[tok] = n;
  j["frequencies"] = freq;
  return j;
}

Vocabulary Vocabulary::from_json(const nlohmann::json& j) {
  Vocabulary vocab;
  try {
    vocab.tokens_ = j.at("tokens").get<std::vector<std::string>>();
    vocab.unk_tokens_ = j.at("unk_tokens").get<std::vector<std::string>>();
    for (const auto& [tok, n] : j.at("frequencies").items()) {
      vocab.frequencies_[tok] = n.get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed vocabulary: ") + e.what());
  }
  if (vocab.tokens_.size() < 2 || vocab.tokens_[0] != kUnkToken || vocab.tokens_[1] != kBosToken) {
    throw DataError("malformed vocabulary: missing reserved tokens");
  }
  vocab.index();
  return vocab;
}

}  // namespace tokrep::corpus
