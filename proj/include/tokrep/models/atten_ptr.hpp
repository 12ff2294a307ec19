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

#include <vector>

#include "tokrep/corpus/vocabulary.hpp"
#include "tokrep/models/mixture.hpp"
#include "tokrep/models/rep.hpp"
#include "tokrep/nn/tape.hpp"
#include "tokrep/nn/tensor.hpp"

namespace tokrep::models {

namespace ptr_param {
inline constexpr const char* kContext = "ptr.context";  // H x H, applied to context states
inline constexpr const char* kQuery = "ptr.query";      // H x H, applied to the prediction state
inline constexpr const char* kScore = "ptr.score";      // H x 1
inline constexpr const char* kGate = "ptr.gate";        // H x 1
inline constexpr const char* kGateBias = "ptr.gate_bias";
}  // namespace ptr_param

/// The two projections start uniform in [-0.1, 0.1]: with both at zero the
/// attention scores have zero gradient everywhere. Score and gate vectors
/// start at zero.
void register_atten_ptr_params(nn::ParamStore& store, Eigen::Index hidden);

/// Additive attention: softmax_k of v^T tanh(A h_k + B h_next).
Vector atten_ptr_pointer(const ContextStates& ctx, const nn::ParamStore& params);
/// sigmoid(w^T h_next + b).
double atten_ptr_gate(const Vector& h_next, const nn::ParamStore& params);
/// Mixture of the LM distribution and the attention pointer, gated.
std::vector<Candidate> atten_ptr_forward(const ContextStates& ctx, const nn::ParamStore& params,
                                         const Vector& lm_dist, const corpus::Vocabulary& vocab,
                                         std::size_t limit = 0);

struct AttenPtrTape {
  nn::Var context, query, score, gate, gate_bias;
};
AttenPtrTape bind_atten_ptr(nn::Tape& tape, nn::ParamStore& store);

/// Pointer loss (when the next token is in context) plus gate loss.
nn::Var tape_atten_ptr_loss(nn::Tape& tape, const AttenPtrTape& p, nn::Var states, nn::Var h_next,
                            const Vector& target);

}  // namespace tokrep::models
