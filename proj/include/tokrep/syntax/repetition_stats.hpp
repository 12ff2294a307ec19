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
#include <utility>

#include "tokrep/syntax/token_event.hpp"

namespace tokrep::syntax {

struct RepetitionCounts {
  std::size_t tokens = 0;
  std::size_t repeated = 0;
  double rate() const { return tokens == 0 ? 0.0 : static_cast<double>(repeated) / tokens; }
};

/// How often content tokens repeat a same-class content token among the
/// previous \c window raw tokens of their function.
struct RepetitionReport {
  std::size_t window = 0;
  std::size_t total_events = 0;
  std::size_t content_events = 0;
  std::size_t cared_events = 0;
  std::map<std::pair<NodeClass, std::string>, RepetitionCounts> buckets;  // (class, parent kind)
  std::map<NodeClass, RepetitionCounts> classes;
  RepetitionCounts variables;  // cared tokens marked as variables

  double cared_fraction() const {
    return total_events == 0 ? 0.0 : static_cast<double>(cared_events) / total_events;
  }
};

/// Throws DataError on an empty corpus and UsageError when window == 0.
RepetitionReport repetition_stats(std::span<const FunctionEvents> functions, std::size_t window);

std::string to_json(const RepetitionReport& report);

}  // namespace tokrep::syntax
