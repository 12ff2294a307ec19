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
#include "tokrep/models/atten_ptr.hpp"

#include <stdexcept>

#include "tokrep/nn/softmax.hpp"

namespace tokrep::models {

void register_atten_ptr_params(nn::ParamStore& store, Eigen::Index hidden) {
  using nn::InitPolicy;
  store.add(ptr_param::kContext, hidden, hidden, InitPolicy::uniform(-0.1, 0.1));
  store.add(ptr_param::kQuery, hidden, hidden, InitPolicy::uniform(-0.1, 0.1));
  store.add(ptr_param::kScore, hidden, 1);
  store.add(ptr_param::kGate, hidden, 1);
  store.add(ptr_param::kGateBias, 1, 1);
}

Vector atten_ptr_pointer(const ContextStates& ctx, const nn::ParamStore& params) {
  if (ctx.empty()) throw std::invalid_argument("pointer over an empty context");
  const Vector query = params.get(ptr_param::kQuery).value * ctx.h_next;
  const Matrix hidden =
      ((params.get(ptr_param::kContext).value * ctx.states).colwise() + query).array().tanh().matrix();
  const Vector scores = hidden.transpose() * params.get(ptr_param::kScore).value.col(0);
  return nn::stable_softmax(scores);
}

double atten_ptr_gate(const Vector& h_next, const nn::ParamStore& params) {
  const double z = params.get(ptr_param::kGate).value.col(0).dot(h_next) +
                   params.get(ptr_param::kGateBias).value(0, 0);
  return nn::logistic(z);
}

std::vector<Candidate> atten_ptr_forward(const ContextStates& ctx, const nn::ParamStore& params,
                                         const Vector& lm_dist, const corpus::Vocabulary& vocab,
                                         std::size_t limit) {
  if (ctx.empty()) return lm_candidates(lm_dist, vocab, limit);
  return mix_distributions(lm_dist, vocab, atten_ptr_pointer(ctx, params),
                           atten_ptr_gate(ctx.h_next, params), ctx.refs, limit);
}

AttenPtrTape bind_atten_ptr(nn::Tape& tape, nn::ParamStore& store) {
  return {tape.param(store.get(ptr_param::kContext)), tape.param(store.get(ptr_param::kQuery)),
          tape.param(store.get(ptr_param::kScore)), tape.param(store.get(ptr_param::kGate)),
          tape.param(store.get(ptr_param::kGateBias))};
}

nn::Var tape_atten_ptr_loss(nn::Tape& tape, const AttenPtrTape& p, nn::Var states, nn::Var h_next,
                            const Vector& target) {
  const bool repeated = target.size() > 0;
  nn::Var gate_logit = tape.add(tape.dot(p.gate, h_next), p.gate_bias);
  nn::Var gate_parts[] = {gate_logit, tape.constant(Matrix::Zero(1, 1))};
  Vector label(2);
  label << (repeated ? 1.0 : 0.0), (repeated ? 0.0 : 1.0);
  nn::Var gate_loss = tape.softmax_cross_entropy(tape.concat_rows(gate_parts), label);
  if (!repeated) return gate_loss;

  nn::Var hidden =
      tape.tanh(tape.add_column(tape.matmul(p.context, states), tape.matmul(p.query, h_next)));
  nn::Var scores = tape.matmul_transposed(hidden, p.score);
  nn::Var parts[] = {tape.softmax_cross_entropy(scores, target), gate_loss};
  return tape.sum(parts);
}

}  // namespace tokrep::models
