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

#include <string>
#include <vector>

#include "json.hpp"
#include "tokrep/train/evaluate.hpp"

namespace tokrep::train {

struct Comparison {
  nlohmann::ordered_json json;
  std::string text;  // aligned table, percentages with one decimal
};

/// Side-by-side table per split and stratum. All reports must agree on the
/// token totals of every stratum (DataError otherwise).
Comparison compare_models(const std::vector<EvalReport>& reports);

/// Percentage with one decimal, as printed in the table.
std::string format_percent(double accuracy);

}  // namespace tokrep::train
