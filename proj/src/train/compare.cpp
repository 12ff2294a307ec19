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
#include "tokrep/train/compare.hpp"

#include <cstdio>
#include <sstream>

#include "tokrep/error.hpp"

namespace tokrep::train {

namespace {

struct StratumRow {
  const char* key;
  const char* label;
  const StratumCounts SplitReport::*member;
};

constexpr StratumRow kStrata[] = {
    {"all", "all nodes", &SplitReport::all},
    {"cared", "cared nodes", &SplitReport::cared},
    {"unseen_cared", "unseen cared nodes", &SplitReport::unseen},
};

constexpr const char* kSplitOrder[] = {"test", "validation"};

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string display_name(const std::string& model) {
  try {
    return model_display_name(model_kind_from_name(model));
  } catch (const UsageError&) {
    return model;
  }
}

}  // namespace

std::string format_percent(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", accuracy * 100.0);
  return buf;
}

Comparison compare_models(const std::vector<EvalReport>& reports) {
  if (reports.empty()) throw UsageError("nothing to compare");
  Comparison out;
  out.json["models"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) out.json["models"].push_back(r.model);
  out.json["scored"] = "content tokens only";
  nlohmann::ordered_json splits = nlohmann::ordered_json::object();

  std::ostringstream text;
  const std::size_t w0 = 20, w = 8;
  for (const char* split : kSplitOrder) {
    bool any = false;
    for (const auto& r : reports) any = any || r.splits.count(split);
    if (!any) continue;
    for (const auto& r : reports) {
      if (!r.splits.count(split)) {
        throw DataError("report for " + r.model + " lacks the " + split + " split");
      }
    }
    text << split << " set (content tokens only)\n";
    nlohmann::ordered_json sj = nlohmann::ordered_json::object();
    for (const auto& row : kStrata) {
      const std::size_t total = (reports.front().splits.at(split).*row.member).total;
      nlohmann::ordered_json models = nlohmann::ordered_json::object();
      text << pad(row.label, w0);
      for (std::size_t k : kTopK) text << pad("top" + std::to_string(k), w);
      text << "total number\n";
      for (const auto& r : reports) {
        const StratumCounts& s = r.splits.at(split).*row.member;
        if (s.total != total) {
          throw DataError(std::string("stratum '") + row.key + "' of the " + split +
                          " split has different totals across models");
        }
        nlohmann::ordered_json acc = nlohmann::ordered_json::object();
        text << pad(display_name(r.model), w0);
        for (std::size_t i = 0; i < kTopK.size(); ++i) {
          acc["top" + std::to_string(kTopK[i])] = s.accuracy(i);
          text << pad(format_percent(s.accuracy(i)), w);
        }
        text << total << "\n";
        models[r.model] = acc;
      }
      nlohmann::ordered_json stratum;
      stratum["total"] = total;
      stratum["accuracy"] = models;
      sj[row.key] = stratum;
    }
    text << "\n";
    splits[split] = sj;
  }
  out.json["splits"] = splits;
  out.text = text.str();
  return out;
}

}  // namespace tokrep::train
