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
#include <string>
#include <vector>

#include "tokrep/nn/tape.hpp"
#include "tokrep/nn/tensor.hpp"

namespace tokrep::models {

using nn::Matrix;
using nn::Vector;

/// Raw content and metadata of one context entry.
struct TokenRef {
  std::string text;
  std::size_t position = 0;
  bool is_variable = false;
};

/// LM hidden states of the cared context tokens plus the state at the
/// prediction point.
struct ContextStates {
  Matrix states;  // hidden x n, oldest first
  Vector h_next;
  std::vector<TokenRef> refs;

  std::size_t size() const { return refs.size(); }
  bool empty() const { return refs.empty(); }
};

/// Keeps only the context entries that are variables.
ContextStates variables_only(const ContextStates& ctx);

/// Pointer and repetition-decision forms of one head.
struct RepParams {
  const Matrix* pointer = nullptr;  // hidden x hidden
  const Matrix* repeat = nullptr;   // hidden x hidden, "repeated" branch
  const Matrix* fresh = nullptr;    // hidden x hidden, "not repeated" branch
};

/// Softmax over context positions of h_k^T W h_next. Throws
/// std::invalid_argument for an empty context.
Vector rep_pointer_probs(const ContextStates& ctx, const RepParams& params);
/// Index of the largest entry, lowest index on ties.
std::size_t rep_argmax(const Vector& probs);
/// Probability that the next token repeats the context token at \p mk.
double rep_decision(const ContextStates& ctx, std::size_t mk, const RepParams& params);

/// Multi-hot target over the context positions whose text equals \p next,
/// normalized. Empty when no position matches.
Vector pointer_target(const std::vector<TokenRef>& refs, const std::string& next);

struct RepTapeHead {
  nn::Var pointer, repeat, fresh;
};

struct RepLoss {
  nn::Var loss;            // pointer loss (when repeated) plus decision loss
  std::size_t mk = 0;      // argmax under the current parameters
  bool repeated = false;
};

/// Training loss at one prediction point. \p states is hidden x n and
/// \p h_next hidden x 1, either constants or values computed on the tape.
RepLoss tape_rep_loss(nn::Tape& tape, const RepTapeHead& head, nn::Var states, nn::Var h_next,
                      const Vector& target);

}  // namespace tokrep::models
