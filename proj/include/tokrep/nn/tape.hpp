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
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tokrep/nn/tensor.hpp"

namespace tokrep::nn {

/// Handle to a value recorded on a Tape.
struct Var {
  std::size_t id = 0;
};

/// Reverse-mode autodiff over dense matrices. Each operation records its
/// result and a backward rule; backward() replays the rules in reverse and
/// accumulates into the gradients of the parameters that were used.
class Tape {
 public:
  Var constant(Matrix value);
  /// Parameters are registered once per tape; repeated calls return the
  /// same handle.
  Var param(Tensor& t);
  /// Column \p col of an embedding table stored as (dim x vocab).
  Var embedding(Tensor& table, Eigen::Index col);

  Var matmul(Var a, Var b);           // a * b
  Var matmul_transposed(Var a, Var b);  // a^T * b
  Var add(Var a, Var b);
  Var add_column(Var m, Var v);       // v added to every column of m
  Var mul(Var a, Var b);              // elementwise
  Var scale(Var a, double c);
  Var sigmoid(Var a);
  Var tanh(Var a);
  Var rows(Var a, Eigen::Index begin, Eigen::Index count);
  Var column(Var a, Eigen::Index col);
  Var concat_rows(std::span<const Var> parts);
  Var concat_columns(std::span<const Var> parts);
  Var dot(Var a, Var b);              // 1x1
  Var bilinear(Var a, Var m, Var b);  // a^T m b, 1x1
  Var sum(std::span<const Var> scalars);
  /// -sum(target * log softmax(logits)) for a column vector of logits.
  /// \p target must be a probability vector.
  Var softmax_cross_entropy(Var logits, const Vector& target);

  const Matrix& value(Var v) const;
  double scalar(Var v) const { return value(v)(0, 0); }
  /// Gradient of the last backward() target with respect to \p v.
  const Matrix& grad(Var v) const { return nodes_.at(v.id).grad; }

  /// Seeds d(target)/d(target) = 1 and accumulates into parameter grads.
  void backward(Var target);
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    Tensor* param = nullptr;
    Eigen::Index embed_col = -1;
    bool requires_grad = false;
    std::function<void(Tape&, const Node&)> back;
  };

  Var push(Matrix value, bool requires_grad, std::function<void(Tape&, const Node&)> back);
  Matrix& grad_mut(Var v) { return nodes_[v.id].grad; }
  bool needs(Var v) const { return nodes_[v.id].requires_grad; }

  std::vector<Node> nodes_;
  std::unordered_map<const Tensor*, std::size_t> param_nodes_;
};

}  // namespace tokrep::nn
