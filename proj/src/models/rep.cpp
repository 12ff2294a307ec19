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
#include "tokrep/models/rep.hpp"

#include <stdexcept>

#include "tokrep/nn/softmax.hpp"

namespace tokrep::models {

ContextStates variables_only(const ContextStates& ctx) {
  ContextStates out;
  out.h_next = ctx.h_next;
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < ctx.refs.size(); ++i) {
    if (ctx.refs[i].is_variable) {
      keep.push_back(static_cast<Eigen::Index>(i));
      out.refs.push_back(ctx.refs[i]);
    }
  }
  out.states.resize(ctx.states.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.states.col(static_cast<Eigen::Index>(j)) = ctx.states.col(keep[j]);
  }
  return out;
}

Vector rep_pointer_probs(const ContextStates& ctx, const RepParams& params) {
  if (ctx.empty()) throw std::invalid_argument("pointer over an empty context");
  const Vector scores = ctx.states.transpose() * (*params.pointer * ctx.h_next);
  return nn::stable_softmax(scores);
}

std::size_t rep_argmax(const Vector& probs) {
  if (probs.size() == 0) throw std::invalid_argument("argmax of an empty vector");
  std::size_t best = 0;
  for (Eigen::Index i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(i);
  }
  return best;
}

double rep_decision(const ContextStates& ctx, std::size_t mk, const RepParams& params) {
  if (mk >= ctx.size()) throw std::out_of_range("repetition index outside the context");
  const auto h_mk = ctx.states.col(static_cast<Eigen::Index>(mk));
  Vector scores(2);
  scores[0] = h_mk.dot(*params.repeat * ctx.h_next);
  scores[1] = h_mk.dot(*params.fresh * ctx.h_next);
  return nn::stable_softmax(scores)[0];
}

Vector pointer_target(const std::vector<TokenRef>& refs, const std::string& next) {
  Vector t = Vector::Zero(static_cast<Eigen::Index>(refs.size()));
  double hits = 0.0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].text == next) {
      t[static_cast<Eigen::Index>(i)] = 1.0;
      hits += 1.0;
    }
  }
  if (hits == 0.0) return Vector();
  return t / hits;
}

RepLoss tape_rep_loss(nn::Tape& tape, const RepTapeHead& head, nn::Var states, nn::Var h_next,
                      const Vector& target) {
  RepLoss out;
  nn::Var scores = tape.matmul_transposed(states, tape.matmul(head.pointer, h_next));
  out.mk = rep_argmax(tape.value(scores).col(0));
  out.repeated = target.size() > 0;

  nn::Var h_mk = tape.column(states, static_cast<Eigen::Index>(out.mk));
  nn::Var decision[] = {tape.bilinear(h_mk, head.repeat, h_next),
                        tape.bilinear(h_mk, head.fresh, h_next)};
  Vector label(2);
  label << (out.repeated ? 1.0 : 0.0), (out.repeated ? 0.0 : 1.0);
  nn::Var decision_loss = tape.softmax_cross_entropy(tape.concat_rows(decision), label);
  if (!out.repeated) {
    out.loss = decision_loss;
    return out;
  }
  nn::Var parts[] = {tape.softmax_cross_entropy(scores, target), decision_loss};
  out.loss = tape.sum(parts);
  return out;
}

}  // namespace tokrep::models
