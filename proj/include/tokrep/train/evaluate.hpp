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

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "tokrep/corpus/split.hpp"
#include "tokrep/corpus/vocabulary.hpp"
#include "tokrep/models/heads.hpp"
#include "tokrep/models/language_model.hpp"
#include "tokrep/models/mixture.hpp"

namespace tokrep::train {

using nn::Matrix;
using nn::Vector;

enum class ModelKind { Lstm, Rep, AttenPtr };

const char* model_kind_name(ModelKind kind);        // lstm, rep, atten-ptr
const char* model_display_name(ModelKind kind);     // LSTM, REP, Atten-Ptr
ModelKind model_kind_from_name(const std::string& name);  // UsageError

/// A frozen LM, optionally with a repetition head on top.
struct Model {
  ModelKind kind = ModelKind::Lstm;
  const nn::ParamStore* lm = nullptr;
  const nn::ParamStore* head = nullptr;  // REP heads or attention-pointer params
  const corpus::Vocabulary* vocab = nullptr;
  models::RepHeadSet heads;
  std::size_t context_length = 25;
};

/// Hidden states S[0..n] of one function as columns (hidden x (n+1)).
Matrix hidden_states(const models::LanguageModel& lm, std::span<const int> ids);

/// Cared context of the prediction at \p pos: context entry p contributes
/// the state after consuming token p, the prediction reads S[pos].
models::ContextStates context_states(const syntax::FunctionEvents& fn, const Matrix& states,
                                     std::size_t pos, std::size_t m);

/// Ranked candidates for the content token at \p pos given the LM
/// distribution there. LM alone for non-cared tokens and empty contexts.
std::vector<models::Candidate> predict(const Model& model, const syntax::FunctionEvents& fn,
                                       const Matrix& states, std::size_t pos,
                                       const Vector& lm_dist, std::size_t limit);

inline constexpr std::array<std::size_t, 4> kTopK = {1, 3, 6, 10};

/// Repeat probability the head assigns at \p pos (REP decision or the
/// attention-pointer gate). Empty for the LSTM, non-cared tokens and empty
/// contexts.
std::optional<double> repeat_probability(const Model& model, const syntax::FunctionEvents& fn,
                                         const Matrix& states, std::size_t pos);

struct RepeatProbe {
  double repeated_mean = 0.0;  // over positions whose text is in the context
  std::size_t repeated = 0;
  double fresh_mean = 0.0;  // over the remaining scored positions
  std::size_t fresh = 0;
};

/// Averages repeat_probability over the cared positions of \p functions.
RepeatProbe probe_repeat(const Model& model, std::span<const corpus::EncodedFunction> functions,
                         unsigned threads = 0);

/// 0-based rank of \p truth among \p ranked; special candidates never
/// match. Returns kMissRank when absent.
inline constexpr std::size_t kMissRank = std::numeric_limits<std::size_t>::max();
std::size_t hit_rank(const std::vector<models::Candidate>& ranked, const std::string& truth);

struct StratumCounts {
  std::array<std::size_t, kTopK.size()> hits{};
  std::size_t total = 0;

  double accuracy(std::size_t k_index) const {
    return total == 0 ? 0.0 : static_cast<double>(hits[k_index]) / static_cast<double>(total);
  }
  void add(std::size_t rank);
  StratumCounts& operator+=(const StratumCounts& o);
  bool operator==(const StratumCounts&) const = default;
};

struct SplitReport {
  StratumCounts all;     // every content token
  StratumCounts cared;   // cared content tokens
  StratumCounts unseen;  // cared tokens whose text never occurs in training
  bool operator==(const SplitReport&) const = default;
};

struct EvalReport {
  std::string model;  // kind name
  std::string config_hash;
  std::map<std::string, SplitReport> splits;  // "validation", "test"

  nlohmann::ordered_json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);
  bool operator==(const EvalReport&) const = default;
};

/// Raw content strings of the training split's content tokens.
std::unordered_set<std::string> training_content(std::span<const corpus::EncodedFunction> train);

struct EvalOptions {
  unsigned threads = 0;
  /// Called with each function id and the token ids fed to the LM.
  std::function<void(const std::string&, std::span<const int>)> on_feed;
};

/// Teacher-forced scoring of every content token in \p functions.
SplitReport evaluate(const Model& model, std::span<const corpus::EncodedFunction> functions,
                     const std::unordered_set<std::string>& seen, const EvalOptions& options = {});

}  // namespace tokrep::train
