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

#include <functional>
#include <map>
#include <string>

#include "tokrep/nn/tensor.hpp"

namespace tokrep::nn {

struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  /// Denominator floor of the relative error, so that components whose
  /// gradients are both near zero compare on an absolute scale. Raised for
  /// large losses to stay clear of rounding in the differences.
  double scale_floor = 1e-5;
  /// Parameters to check (all when empty).
  std::vector<std::string> only;
};

struct GradCheckReport {
  std::map<std::string, double> max_relative_error;  // per parameter
  double worst = 0.0;
  std::string worst_parameter;
  std::size_t components = 0;
  bool passed = false;
};

/// The closure computes the loss at the current parameter values and writes
/// its analytic gradient into the store's grad buffers (starting from zero).
using LossClosure = std::function<double(ParamStore&)>;

/// Compares analytic gradients against central differences component by
/// component. Throws NumericError if the loss is not finite.
GradCheckReport grad_check(const LossClosure& closure, ParamStore& params,
                           const GradCheckOptions& options = {});

}  // namespace tokrep::nn
