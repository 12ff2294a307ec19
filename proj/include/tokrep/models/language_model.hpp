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
#include <span>
#include <vector>

#include "tokrep/nn/tape.hpp"
#include "tokrep/nn/tensor.hpp"

namespace tokrep::models {

using nn::Matrix;
using nn::Vector;

struct LmDims {
  Eigen::Index vocab = 0;
  Eigen::Index embedding = 128;
  Eigen::Index hidden = 128;
};

struct LstmState {
  Vector cell;
  Vector h;
};

/// Gate rows of the stacked LSTM weights, in order: input, forget, output,
/// candidate. Each block has \c hidden rows.
struct LstmWeights {
  const Matrix& input;      // 4H x E
  const Matrix& recurrent;  // 4H x H
  const Matrix& bias;       // 4H x 1
};

/// One LSTM step. Throws std::invalid_argument on dimension mismatch.
LstmState lstm_step(const LstmState& prev, const Vector& x, const LstmWeights& w);

namespace lm_param {
inline constexpr const char* kEmbedding = "lm.embedding";  // E x V
inline constexpr const char* kInput = "lm.input";          // 4H x E
inline constexpr const char* kRecurrent = "lm.recurrent";  // 4H x H
inline constexpr const char* kBias = "lm.bias";            // 4H x 1
inline constexpr const char* kOutput = "lm.output";        // V x H
inline constexpr const char* kOutputBias = "lm.output_bias";
}  // namespace lm_param

/// Registers the LM parameters with their init policies: embeddings uniform
/// in [-1, 1], forget-gate bias 1, output projection uniform in [-0.1, 0.1],
/// everything else zero.
void register_lm_params(nn::ParamStore& store, const LmDims& dims);

/// Read-only view of a trained or initialized LM.
class LanguageModel {
 public:
  explicit LanguageModel(const nn::ParamStore& store);

  LmDims dims() const { return dims_; }
  LstmState zero_state() const;
  LstmState step(const LstmState& prev, int token) const;
  Vector logits(const LstmState& state) const;
  /// Softmax over the vocabulary for the token following \p state.
  Vector next_distribution(const LstmState& state) const;
  /// States S[0..n]: S[0] after the start symbol, S[i+1] after token i.
  /// The prediction for token i reads S[i].
  std::vector<LstmState> run(std::span<const int> ids) const;

 private:
  const nn::ParamStore* store_;
  LmDims dims_;
};

/// Parameter handles of the LM on a tape.
struct LmTape {
  nn::Var input, recurrent, bias, output, output_bias;
  nn::Tensor* embedding = nullptr;
  Eigen::Index hidden = 0;
};

struct TapeLstmState {
  nn::Var cell;
  nn::Var h;
};

LmTape bind_lm(nn::Tape& tape, nn::ParamStore& store);
TapeLstmState tape_zero_state(nn::Tape& tape, const LmTape& lm);
TapeLstmState tape_lstm_step(nn::Tape& tape, const LmTape& lm, const TapeLstmState& prev,
                             nn::Var x);
TapeLstmState tape_feed(nn::Tape& tape, const LmTape& lm, const TapeLstmState& prev, int token);
nn::Var tape_logits(nn::Tape& tape, const LmTape& lm, nn::Var h);

/// Sum of per-token cross-entropies of \p ids under the LM, together with
/// the recorded states S[0..n].
struct LmSequence {
  nn::Var loss;
  std::vector<TapeLstmState> states;
};
LmSequence tape_lm_sequence(nn::Tape& tape, const LmTape& lm, std::span<const int> ids);

}  // namespace tokrep::models
