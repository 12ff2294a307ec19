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
#include "tokrep/nn/softmax.hpp"

#include <stdexcept>

namespace tokrep::nn {

Vector stable_softmax(const Vector& logits) {
  if (logits.size() == 0) return logits;
  Vector e = (logits.array() - logits.maxCoeff()).exp().matrix();
  return e / e.sum();
}

Vector log_softmax(const Vector& logits) {
  if (logits.size() == 0) return logits;
  const double mx = logits.maxCoeff();
  const double lse = mx + std::log((logits.array() - mx).exp().sum());
  return (logits.array() - lse).matrix();
}

CrossEntropy softmax_cross_entropy(const Vector& logits, const Vector& target) {
  if (logits.size() != target.size() || logits.size() == 0) {
    throw std::invalid_argument("cross-entropy target size does not match logits");
  }
  if ((target.array() < 0.0).any() || std::abs(target.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("cross-entropy target is not a probability vector");
  }
  const Vector logp = log_softmax(logits);
  CrossEntropy out;
  out.loss = 0.0;
  for (Eigen::Index i = 0; i < target.size(); ++i) {
    if (target[i] > 0.0) out.loss -= target[i] * logp[i];
  }
  out.gradient = logp.array().exp().matrix() - target;
  return out;
}

}  // namespace tokrep::nn
