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
#include "tokrep/corpus/split.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "tokrep/error.hpp"
#include "tokrep/rng.hpp"

namespace tokrep::corpus {

SplitSizes split_sizes(std::size_t n) {
  SplitSizes s;
  // nearest integer to n / 5; n / 5 never ends in exactly one half
  s.validation = (2 * n + 5) / 10;
  s.test = s.validation;
  s.train = n - s.validation - s.test;
  return s;
}

SplitAssignment split_functions(std::span<const std::string> function_ids, std::uint64_t seed) {
  if (function_ids.size() < 5) {
    throw DataError("too few functions to split: " + std::to_string(function_ids.size()) +
                    " (need at least 5)");
  }
  std::set<std::string> unique(function_ids.begin(), function_ids.end());
  if (unique.size() != function_ids.size()) throw DataError("duplicate function ids in corpus");

  std::vector<std::string> order(function_ids.begin(), function_ids.end());
  Rng rng(seed);
  rng.shuffle(order);
  const SplitSizes sizes = split_sizes(order.size());

  SplitAssignment out;
  out.seed = seed;
  auto it = order.begin();
  out.train.assign(it, it + static_cast<std::ptrdiff_t>(sizes.train));
  it += static_cast<std::ptrdiff_t>(sizes.train);
  out.validation.assign(it, it + static_cast<std::ptrdiff_t>(sizes.validation));
  it += static_cast<std::ptrdiff_t>(sizes.validation);
  out.test.assign(it, order.end());
  return out;
}

nlohmann::ordered_json SplitAssignment::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["train"] = train;
  j["validation"] = validation;
  j["test"] = test;
  return j;
}

SplitAssignment SplitAssignment::from_json(const nlohmann::json& j) {
  SplitAssignment a;
  try {
    a.seed = j.at("seed").get<std::uint64_t>();
    a.train = j.at("train").get<std::vector<std::string>>();
    a.validation = j.at("validation").get<std::vector<std::string>>();
    a.test = j.at("test").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed splits: ") + e.what());
  }
  return a;
}

std::vector<int> encode(const syntax::FunctionEvents& function, const Vocabulary& vocab) {
  std::vector<int> ids;
  ids.reserve(function.events.size());
  for (const auto& ev : function.events) ids.push_back(vocab.encode(ev.text));
  return ids;
}

std::vector<syntax::FunctionEvents> select(std::span<const syntax::FunctionEvents> functions,
                                           std::span<const std::string> ids) {
  std::unordered_map<std::string, const syntax::FunctionEvents*> by_id;
  for (const auto& fn : functions) by_id[fn.id] = &fn;
  std::vector<syntax::FunctionEvents> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DataError("split references unknown function '" + id + "'");
    out.push_back(*it->second);
  }
  return out;
}

SplitCorpus assemble(std::span<const syntax::FunctionEvents> functions,
                     const SplitAssignment& assignment, const Vocabulary& vocab) {
  std::unordered_map<std::string, int> which;
  auto mark = [&](const std::vector<std::string>& ids, int split) {
    for (const auto& id : ids) {
      if (!which.emplace(id, split).second) {
        throw DataError("function '" + id + "' assigned to more than one split");
      }
    }
  };
  mark(assignment.train, 0);
  mark(assignment.validation, 1);
  mark(assignment.test, 2);
  if (which.size() != functions.size()) {
    throw DataError("split assignment does not cover the corpus");
  }

  SplitCorpus out;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    auto it = which.find(functions[i].id);
    if (it == which.end()) throw DataError("function '" + functions[i].id + "' has no split");
    EncodedFunction ef{i, functions[i], encode(functions[i], vocab)};
    auto& dst = it->second == 0 ? out.train : it->second == 1 ? out.validation : out.test;
    dst.push_back(std::move(ef));
  }
  return out;
}

std::vector<syntax::FunctionEvents> SplitCorpus::merged() const {
  std::vector<const EncodedFunction*> all;
  for (const auto* part : {&train, &validation, &test}) {
    for (const auto& f : *part) all.push_back(&f);
  }
  std::sort(all.begin(), all.end(),
            [](const auto* a, const auto* b) { return a->source_index < b->source_index; });
  std::vector<syntax::FunctionEvents> out;
  out.reserve(all.size());
  for (const auto* f : all) out.push_back(f->function);
  return out;
}

}  // namespace tokrep::corpus
