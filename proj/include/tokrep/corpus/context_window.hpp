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
#include <span>
#include <vector>

#include "tokrep/syntax/token_event.hpp"

namespace tokrep::corpus {

inline constexpr std::size_t kDefaultContextLength = 25;

/// Cared positions among the \p m raw events before the prediction point.
struct ContextWindow {
  std::vector<std::size_t> positions;  // oldest first
  std::size_t m = kDefaultContextLength;
};

/// Requires pos < events.size() and m >= 1 (UsageError otherwise).
ContextWindow context_window(std::span<const syntax::TokenEvent> events, std::size_t pos,
                             std::size_t m);

}  // namespace tokrep::corpus
