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

#include <cmath>

#include "tokrep/nn/tensor.hpp"

namespace tokrep::nn {

/// 1 / (1 + e^-x) without overflow for large |x|.
inline double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// Max-shifted softmax. Input must be finite.
Vector stable_softmax(const Vector& logits);
Vector log_softmax(const Vector& logits);

struct CrossEntropy {
  double loss = 0.0;
  Vector gradient;  // with respect to the logits
};

/// Loss -sum(target * log softmax(logits)), gradient softmax - target.
/// \p target must be non-negative and sum to 1 (std::invalid_argument).
CrossEntropy softmax_cross_entropy(const Vector& logits, const Vector& target);

}  // namespace tokrep::nn
