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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tokrep/corpus/vocabulary.hpp"
#include "tokrep/syntax/token_event.hpp"

namespace tokrep::corpus {

/// Function ids per split, as persisted in splits.json.
struct SplitAssignment {
  std::uint64_t seed = 0;
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;

  nlohmann::ordered_json to_json() const;
  static SplitAssignment from_json(const nlohmann::json& j);
  bool operator==(const SplitAssignment&) const = default;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

/// Validation and test each take n / 5 rounded to the nearest integer;
/// train takes the remainder. Every share is within one function of 60/20/20.
SplitSizes split_sizes(std::size_t n);

/// Seeded Fisher-Yates shuffle of the ids followed by the 60/20/20 cut.
/// Throws DataError for fewer than 5 functions or duplicate ids.
SplitAssignment split_functions(std::span<const std::string> function_ids, std::uint64_t seed);

/// A function with its event ids. The events keep their raw text.
struct EncodedFunction {
  std::size_t source_index = 0;  // position in the input corpus
  syntax::FunctionEvents function;
  std::vector<int> ids;
};

struct SplitCorpus {
  std::vector<EncodedFunction> train;
  std::vector<EncodedFunction> validation;
  std::vector<EncodedFunction> test;

  /// All functions back in input order.
  std::vector<syntax::FunctionEvents> merged() const;
};

std::vector<syntax::FunctionEvents> select(std::span<const syntax::FunctionEvents> functions,
                                           std::span<const std::string> ids);

/// Partitions and encodes \p functions. Every function must be assigned to
/// exactly one split, otherwise DataError.
SplitCorpus assemble(std::span<const syntax::FunctionEvents> functions,
                     const SplitAssignment& assignment, const Vocabulary& vocab);

std::vector<int> encode(const syntax::FunctionEvents& function, const Vocabulary& vocab);

}  // namespace tokrep::corpus
