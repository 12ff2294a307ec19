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
#include <cstdint>
#include <functional>
#include <vector>

#include "json.hpp"
#include "tokrep/corpus/split.hpp"
#include "tokrep/corpus/vocabulary.hpp"
#include "tokrep/models/heads.hpp"
#include "tokrep/models/language_model.hpp"
#include "tokrep/nn/tensor.hpp"
#include "tokrep/train/evaluate.hpp"

namespace tokrep::train {

struct TrainConfig {
  std::size_t context_length = 25;
  std::size_t patience = 10;
  std::size_t max_epochs = 200;
  std::uint64_t seed = 1;
  double learning_rate = 0.05;      // LM
  double head_learning_rate = 0.05; // REP and attention-pointer heads
  Eigen::Index hidden = 128;
  Eigen::Index embedding = 128;
  double clip_low = -1e6;
  double clip_high = 1e6;
  models::HeadRouting routing;
  unsigned threads = 0;  // evaluation workers, 0 = hardware concurrency

  /// Throws UsageError for out-of-range values.
  void validate() const;
};

struct EpochLog {
  std::size_t epoch = 0;
  double train_loss = 0.0;  // mean per scored item
  double val_metric = 0.0;
  double best_so_far = 0.0;

  nlohmann::ordered_json to_json() const;
};

struct TrainResult {
  nn::ParamStore params;  // best-validation checkpoint
  std::vector<EpochLog> log;
  std::size_t best_epoch = 0;
  bool hit_cap = false;
};

using EpochCallback = std::function<void(const EpochLog&)>;

/// SGD over the training functions, one update per function, until the
/// validation top-1 over all content tokens stops improving.
TrainResult train_lm(const corpus::SplitCorpus& corpus, const corpus::Vocabulary& vocab,
                     const TrainConfig& config, const EpochCallback& on_epoch = {});

/// Trains REP heads (or the attention-pointer baseline) over the hidden
/// states of the frozen LM. Validation metric: cared top-1.
TrainResult train_heads(ModelKind kind, const corpus::SplitCorpus& corpus,
                        const corpus::Vocabulary& vocab, const nn::ParamStore& lm,
                        const TrainConfig& config, const EpochCallback& on_epoch = {});

/// Parameter store of an untrained head of the given kind.
nn::ParamStore make_head_params(ModelKind kind, const models::RepHeadSet& heads,
                                Eigen::Index hidden);

/// Fresh LM parameters, initialized from the config seed.
nn::ParamStore make_lm_params(const corpus::Vocabulary& vocab, const TrainConfig& config);

}  // namespace tokrep::train
