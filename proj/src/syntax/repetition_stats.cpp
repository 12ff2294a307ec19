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
#include "tokrep/syntax/repetition_stats.hpp"

#include "json.hpp"
#include "tokrep/error.hpp"

namespace tokrep::syntax {

RepetitionReport repetition_stats(std::span<const FunctionEvents> functions, std::size_t window) {
  if (window == 0) throw UsageError("repetition window must be at least 1");
  RepetitionReport report;
  report.window = window;
  for (const auto& fn : functions) {
    const auto& events = fn.events;
    for (std::size_t pos = 0; pos < events.size(); ++pos) {
      const TokenEvent& ev = events[pos];
      ++report.total_events;
      if (!ev.is_content) continue;
      ++report.content_events;
      if (ev.node_class == NodeClass::Cared) ++report.cared_events;

      bool repeated = false;
      const std::size_t first = pos > window ? pos - window : 0;
      for (std::size_t k = first; k < pos && !repeated; ++k) {
        const TokenEvent& prev = events[k];
        repeated = prev.is_content && prev.node_class == ev.node_class && prev.text == ev.text;
      }
      auto bump = [repeated](RepetitionCounts& c) {
        ++c.tokens;
        if (repeated) ++c.repeated;
      };
      bump(report.buckets[{ev.node_class, ev.parent_kind}]);
      bump(report.classes[ev.node_class]);
      if (ev.is_variable) bump(report.variables);
    }
  }
  if (report.total_events == 0) throw DataError("repetition statistics over an empty corpus");
  return report;
}

std::string to_json(const RepetitionReport& report) {
  using nlohmann::ordered_json;
  auto counts = [](const RepetitionCounts& c) {
    ordered_json j;
    j["tokens"] = c.tokens;
    j["repeated"] = c.repeated;
    j["rate"] = c.rate();
    return j;
  };
  ordered_json j;
  j["window"] = report.window;
  j["total_events"] = report.total_events;
  j["content_events"] = report.content_events;
  j["cared_events"] = report.cared_events;
  j["cared_fraction"] = report.cared_fraction();
  ordered_json classes = ordered_json::object();
  for (const auto& [cls, c] : report.classes) classes[std::string(node_class_name(cls))] = counts(c);
  j["classes"] = classes;
  j["variables"] = counts(report.variables);
  ordered_json buckets = ordered_json::array();
  for (const auto& [key, c] : report.buckets) {
    ordered_json b = counts(c);
    b["class"] = node_class_name(key.first);
    b["parent"] = key.second;
    buckets.push_back(b);
  }
  j["buckets"] = buckets;
  return j.dump(2);
}

}  // namespace tokrep::syntax
