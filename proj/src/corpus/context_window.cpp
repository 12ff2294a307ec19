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
#include "tokrep/corpus/context_window.hpp"

#include <string>

#include "tokrep/error.hpp"

namespace tokrep::corpus {

ContextWindow context_window(std::span<const syntax::TokenEvent> events, std::size_t pos,
                             std::size_t m) {
  if (m == 0) throw UsageError("context length must be at least 1");
  if (pos >= events.size()) {
    throw UsageError("position " + std::to_string(pos) + " outside sequence of length " +
                     std::to_string(events.size()));
  }
  ContextWindow w;
  w.m = m;
  const std::size_t begin = pos > m ? pos - m : 0;
  for (std::size_t p = begin; p < pos; ++p) {
    if (events[p].node_class == syntax::NodeClass::Cared) w.positions.push_back(p);
  }
  return w;
}

}  // namespace tokrep::corpus
