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
#include "tokrep/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tokrep/error.hpp"

namespace tokrep::nn {

namespace {

double checked(double loss) {
  if (!std::isfinite(loss)) throw NumericError("gradient check: loss is not finite");
  return loss;
}

}  // namespace

GradCheckReport grad_check(const LossClosure& closure, ParamStore& params,
                           const GradCheckOptions& options) {
  params.zero_grad();
  const double loss = checked(closure(params));
  // Rounding in the central difference is about eps * |loss| / step; the
  // floor keeps ten times that noise below the tolerance.
  const double noise = std::numeric_limits<double>::epsilon() * std::abs(loss) / options.step;
  const double floor = std::max(options.scale_floor, 10.0 * noise / options.tolerance);
  std::map<std::string, Matrix> analytic;
  for (const auto& [name, t] : params.all()) analytic[name] = t.grad;

  std::vector<std::string> names = options.only.empty() ? params.names() : options.only;
  GradCheckReport report;
  for (const auto& name : names) {
    Tensor& t = params.get(name);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < t.value.size(); ++i) {
      double& x = t.value.data()[i];
      const double saved = x;
      x = saved + options.step;
      params.zero_grad();
      const double up = checked(closure(params));
      x = saved - options.step;
      params.zero_grad();
      const double down = checked(closure(params));
      x = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      const double a = analytic[name].data()[i];
      const double denom = std::max({std::abs(a), std::abs(numeric), floor});
      worst = std::max(worst, std::abs(a - numeric) / denom);
      ++report.components;
    }
    report.max_relative_error[name] = worst;
    if (worst >= report.worst) {
      report.worst = worst;
      report.worst_parameter = name;
    }
  }
  params.zero_grad();
  closure(params);
  report.passed = report.worst < options.tolerance;
  return report;
}

}  // namespace tokrep::nn
