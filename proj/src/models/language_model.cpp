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
#include "tokrep/models/language_model.hpp"

#include <stdexcept>

#include "tokrep/corpus/vocabulary.hpp"
#include "tokrep/nn/softmax.hpp"

namespace tokrep::models {

LstmState lstm_step(const LstmState& prev, const Vector& x, const LstmWeights& w) {
  const Eigen::Index h = prev.h.size();
  if (prev.cell.size() != h || w.recurrent.rows() != 4 * h || w.recurrent.cols() != h ||
      w.input.rows() != 4 * h || w.input.cols() != x.size() || w.bias.rows() != 4 * h ||
      w.bias.cols() != 1) {
    throw std::invalid_argument("LSTM dimension mismatch");
  }
  Vector z = w.input * x + w.recurrent * prev.h + w.bias.col(0);
  auto sig = [](double v) { return nn::logistic(v); };
  const Vector in = z.segment(0, h).unaryExpr(sig);
  const Vector forget = z.segment(h, h).unaryExpr(sig);
  const Vector out = z.segment(2 * h, h).unaryExpr(sig);
  const Vector cand = z.segment(3 * h, h).array().tanh().matrix();
  LstmState next;
  next.cell = forget.cwiseProduct(prev.cell) + in.cwiseProduct(cand);
  next.h = out.cwiseProduct(next.cell.array().tanh().matrix());
  return next;
}

void register_lm_params(nn::ParamStore& store, const LmDims& d) {
  using nn::InitPolicy;
  store.add(lm_param::kEmbedding, d.embedding, d.vocab, InitPolicy::uniform(-1.0, 1.0));
  store.add(lm_param::kInput, 4 * d.hidden, d.embedding);
  store.add(lm_param::kRecurrent, 4 * d.hidden, d.hidden);
  store.add(lm_param::kBias, 4 * d.hidden, 1, InitPolicy::constant_rows(d.hidden, 2 * d.hidden, 1.0));
  store.add(lm_param::kOutput, d.vocab, d.hidden, InitPolicy::uniform(-0.1, 0.1));
  store.add(lm_param::kOutputBias, d.vocab, 1);
}

LanguageModel::LanguageModel(const nn::ParamStore& store) : store_(&store) {
  const auto& emb = store.get(lm_param::kEmbedding);
  dims_.embedding = emb.rows();
  dims_.vocab = emb.cols();
  dims_.hidden = store.get(lm_param::kRecurrent).cols();
}

LstmState LanguageModel::zero_state() const {
  return {Vector::Zero(dims_.hidden), Vector::Zero(dims_.hidden)};
}

LstmState LanguageModel::step(const LstmState& prev, int token) const {
  const Matrix& emb = store_->get(lm_param::kEmbedding).value;
  if (token < 0 || token >= emb.cols()) throw std::out_of_range("token id out of range");
  const LstmWeights w{store_->get(lm_param::kInput).value, store_->get(lm_param::kRecurrent).value,
                      store_->get(lm_param::kBias).value};
  return lstm_step(prev, emb.col(token), w);
}

Vector LanguageModel::logits(const LstmState& state) const {
  return store_->get(lm_param::kOutput).value * state.h +
         store_->get(lm_param::kOutputBias).value.col(0);
}

Vector LanguageModel::next_distribution(const LstmState& state) const {
  return nn::stable_softmax(logits(state));
}

std::vector<LstmState> LanguageModel::run(std::span<const int> ids) const {
  std::vector<LstmState> states;
  states.reserve(ids.size() + 1);
  states.push_back(step(zero_state(), corpus::Vocabulary::kBosId));
  for (int id : ids) states.push_back(step(states.back(), id));
  return states;
}

LmTape bind_lm(nn::Tape& tape, nn::ParamStore& store) {
  LmTape lm;
  lm.input = tape.param(store.get(lm_param::kInput));
  lm.recurrent = tape.param(store.get(lm_param::kRecurrent));
  lm.bias = tape.param(store.get(lm_param::kBias));
  lm.output = tape.param(store.get(lm_param::kOutput));
  lm.output_bias = tape.param(store.get(lm_param::kOutputBias));
  lm.embedding = &store.get(lm_param::kEmbedding);
  lm.hidden = store.get(lm_param::kRecurrent).cols();
  return lm;
}

TapeLstmState tape_zero_state(nn::Tape& tape, const LmTape& lm) {
  return {tape.constant(Matrix::Zero(lm.hidden, 1)), tape.constant(Matrix::Zero(lm.hidden, 1))};
}

TapeLstmState tape_lstm_step(nn::Tape& tape, const LmTape& lm, const TapeLstmState& prev,
                             nn::Var x) {
  const Eigen::Index h = lm.hidden;
  nn::Var z = tape.add(tape.add(tape.matmul(lm.input, x), tape.matmul(lm.recurrent, prev.h)), lm.bias);
  nn::Var in = tape.sigmoid(tape.rows(z, 0, h));
  nn::Var forget = tape.sigmoid(tape.rows(z, h, h));
  nn::Var out = tape.sigmoid(tape.rows(z, 2 * h, h));
  nn::Var cand = tape.tanh(tape.rows(z, 3 * h, h));
  TapeLstmState next;
  next.cell = tape.add(tape.mul(forget, prev.cell), tape.mul(in, cand));
  next.h = tape.mul(out, tape.tanh(next.cell));
  return next;
}

TapeLstmState tape_feed(nn::Tape& tape, const LmTape& lm, const TapeLstmState& prev, int token) {
  return tape_lstm_step(tape, lm, prev, tape.embedding(*lm.embedding, token));
}

nn::Var tape_logits(nn::Tape& tape, const LmTape& lm, nn::Var h) {
  return tape.add(tape.matmul(lm.output, h), lm.output_bias);
}

LmSequence tape_lm_sequence(nn::Tape& tape, const LmTape& lm, std::span<const int> ids) {
  LmSequence seq;
  seq.states.reserve(ids.size() + 1);
  seq.states.push_back(tape_feed(tape, lm, tape_zero_state(tape, lm), corpus::Vocabulary::kBosId));
  std::vector<nn::Var> losses;
  losses.reserve(ids.size());
  const Eigen::Index vocab = lm.embedding->cols();
  for (int id : ids) {
    Vector target = Vector::Zero(vocab);
    target[id] = 1.0;
    losses.push_back(tape.softmax_cross_entropy(tape_logits(tape, lm, seq.states.back().h), target));
    seq.states.push_back(tape_feed(tape, lm, seq.states.back(), id));
  }
  seq.loss = tape.sum(losses);
  return seq;
}

}  // namespace tokrep::models
