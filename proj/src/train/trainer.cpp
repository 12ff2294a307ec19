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
#include "tokrep/train/trainer.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "tokrep/error.hpp"
#include "tokrep/models/atten_ptr.hpp"
#include "tokrep/models/rep.hpp"
#include "tokrep/parallel.hpp"
#include "tokrep/rng.hpp"
#include "tokrep/train/early_stopping.hpp"

namespace tokrep::train {

void TrainConfig::validate() const {
  if (context_length < 1) throw UsageError("context length must be at least 1");
  if (patience < 1) throw UsageError("patience must be at least 1");
  if (max_epochs < 1) throw UsageError("max epochs must be at least 1");
  if (!(learning_rate > 0.0) || !(head_learning_rate > 0.0)) {
    throw UsageError("learning rates must be positive");
  }
  if (hidden < 1 || embedding < 1) throw UsageError("hidden and embedding sizes must be positive");
  if (!(clip_low < clip_high)) throw UsageError("clip bounds must satisfy low < high");
}

nlohmann::ordered_json EpochLog::to_json() const {
  nlohmann::ordered_json j;
  j["epoch"] = epoch;
  j["train_loss"] = train_loss;
  j["val_metric"] = val_metric;
  j["best_so_far"] = best_so_far;
  return j;
}

namespace {

// Seeds of the independent random streams derived from the config seed.
constexpr std::uint64_t kInitStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kOrderStream = 0xbf58476d1ce4e5b9ULL;

void check_finite(double loss, std::size_t epoch, const std::string& what) {
  if (!std::isfinite(loss)) {
    throw NumericError(what + " loss became non-finite in epoch " + std::to_string(epoch) +
                       "; lower the learning rate");
  }
}

// Cached LM distributions and hidden states of a split.
struct FrozenFunction {
  const corpus::EncodedFunction* source = nullptr;
  Matrix states;
};

std::vector<FrozenFunction> freeze(const models::LanguageModel& lm,
                                   std::span<const corpus::EncodedFunction> fns, unsigned threads) {
  std::vector<FrozenFunction> out(fns.size());
  parallel_for(
      fns.size(),
      [&](std::size_t i) {
        out[i].source = &fns[i];
        out[i].states = hidden_states(lm, fns[i].ids);
      },
      threads);
  return out;
}

struct TrainingPoint {
  std::size_t head = 0;
  models::ContextStates ctx;
  Vector target;  // empty when the next token is not in context
};

std::vector<TrainingPoint> training_points(const FrozenFunction& f, ModelKind kind,
                                           const models::RepHeadSet& heads, std::size_t m) {
  std::vector<TrainingPoint> points;
  const auto& events = f.source->function.events;
  for (std::size_t pos = 0; pos < events.size(); ++pos) {
    if (events[pos].node_class != syntax::NodeClass::Cared) continue;
    models::ContextStates ctx = context_states(f.source->function, f.states, pos, m);
    if (kind == ModelKind::Rep) ctx = heads.effective_context(ctx);
    if (ctx.empty()) continue;
    TrainingPoint p;
    p.head = kind == ModelKind::Rep ? heads.route(events[pos].parent_kind) : 0;
    p.target = models::pointer_target(ctx.refs, events[pos].text);
    p.ctx = std::move(ctx);
    points.push_back(std::move(p));
  }
  return points;
}

// Cared top-1 over a frozen split, with LM distributions computed once.
class CaredValidator {
 public:
  CaredValidator(const models::LanguageModel& lm, std::span<const corpus::EncodedFunction> fns,
                 unsigned threads)
      : threads_(threads) {
    frozen_ = freeze(lm, fns, threads);
    dists_.resize(frozen_.size());
    parallel_for(
        frozen_.size(),
        [&](std::size_t i) {
          const auto& events = frozen_[i].source->function.events;
          for (std::size_t pos = 0; pos < events.size(); ++pos) {
            if (events[pos].node_class != syntax::NodeClass::Cared) continue;
            models::LstmState s{Vector(), frozen_[i].states.col(static_cast<Eigen::Index>(pos))};
            dists_[i].push_back({pos, lm.next_distribution(s)});
          }
        },
        threads);
  }

  double top1(const Model& model) const {
    std::vector<std::size_t> hits(frozen_.size(), 0);
    parallel_for(
        frozen_.size(),
        [&](std::size_t i) {
          const auto& fn = frozen_[i].source->function;
          for (const auto& [pos, dist] : dists_[i]) {
            const auto ranked = predict(model, fn, frozen_[i].states, pos, dist, 1);
            if (hit_rank(ranked, fn.events[pos].text) == 0) ++hits[i];
          }
        },
        threads_);
    std::size_t total = 0;
    for (const auto& d : dists_) total += d.size();
    const std::size_t h = std::accumulate(hits.begin(), hits.end(), std::size_t{0});
    return total == 0 ? 0.0 : static_cast<double>(h) / static_cast<double>(total);
  }

 private:
  unsigned threads_;
  std::vector<FrozenFunction> frozen_;
  std::vector<std::vector<std::pair<std::size_t, Vector>>> dists_;
};

}  // namespace

nn::ParamStore make_lm_params(const corpus::Vocabulary& vocab, const TrainConfig& config) {
  nn::ParamStore store;
  models::register_lm_params(
      store, {static_cast<Eigen::Index>(vocab.size()), config.embedding, config.hidden});
  Rng rng(config.seed ^ kInitStream);
  store.initialize(rng);
  return store;
}

nn::ParamStore make_head_params(ModelKind kind, const models::RepHeadSet& heads,
                                Eigen::Index hidden) {
  nn::ParamStore store;
  if (kind == ModelKind::Rep) {
    heads.register_params(store, hidden);
  } else if (kind == ModelKind::AttenPtr) {
    models::register_atten_ptr_params(store, hidden);
  } else {
    throw UsageError("the LSTM has no head parameters");
  }
  return store;
}

TrainResult train_lm(const corpus::SplitCorpus& corpus, const corpus::Vocabulary& vocab,
                     const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  if (corpus.train.empty() || corpus.validation.empty()) {
    throw DataError("training needs nonempty train and validation splits");
  }
  TrainResult result;
  nn::ParamStore params = make_lm_params(vocab, config);
  result.params = params;

  Model model;
  model.kind = ModelKind::Lstm;
  model.lm = &params;
  model.vocab = &vocab;
  model.context_length = config.context_length;
  const auto seen = training_content(corpus.train);

  std::vector<std::size_t> order(corpus.train.size());
  std::iota(order.begin(), order.end(), 0);
  Rng order_rng(config.seed ^ kOrderStream);
  EarlyStopping stopper(config.patience);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    order_rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t tokens = 0;
    for (std::size_t idx : order) {
      const auto& f = corpus.train[idx];
      if (f.ids.empty()) continue;
      nn::Tape tape;
      const models::LmTape lm = models::bind_lm(tape, params);
      const models::LmSequence seq = models::tape_lm_sequence(tape, lm, f.ids);
      const double loss = tape.scalar(seq.loss);
      check_finite(loss, epoch, "language model");
      params.zero_grad();
      tape.backward(seq.loss);
      nn::clip_gradients(params, config.clip_low, config.clip_high);
      params.sgd_step(config.learning_rate);
      loss_sum += loss;
      tokens += f.ids.size();
    }
    EpochLog log;
    log.epoch = epoch;
    log.train_loss = tokens ? loss_sum / static_cast<double>(tokens) : 0.0;
    log.val_metric = evaluate(model, corpus.validation, seen, {config.threads, {}}).all.accuracy(0);
    if (stopper.update(log.val_metric)) {
      result.params = params;
      result.best_epoch = epoch;
    }
    log.best_so_far = stopper.best();
    result.log.push_back(log);
    if (on_epoch) on_epoch(log);
    if (stopper.should_stop()) break;
    result.hit_cap = epoch == config.max_epochs;
  }
  result.params.zero_grad();
  return result;
}

TrainResult train_heads(ModelKind kind, const corpus::SplitCorpus& corpus,
                        const corpus::Vocabulary& vocab, const nn::ParamStore& lm_params,
                        const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  if (kind == ModelKind::Lstm) throw UsageError("train_heads needs rep or atten-ptr");
  if (corpus.train.empty() || corpus.validation.empty()) {
    throw DataError("training needs nonempty train and validation splits");
  }
  const models::LanguageModel lm(lm_params);
  const models::RepHeadSet heads(kind == ModelKind::Rep ? config.routing : models::HeadRouting{});
  nn::ParamStore params = make_head_params(kind, heads, lm.dims().hidden);
  Rng init_rng(config.seed ^ kInitStream);
  params.initialize(init_rng);

  const auto frozen = freeze(lm, corpus.train, config.threads);
  std::vector<std::vector<TrainingPoint>> points(frozen.size());
  std::size_t point_count = 0;
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    points[i] = training_points(frozen[i], kind, heads, config.context_length);
    point_count += points[i].size();
  }
  if (point_count == 0) {
    throw DataError("training split has no cared tokens with a nonempty context");
  }

  Model model;
  model.kind = kind;
  model.lm = &lm_params;
  model.head = &params;
  model.vocab = &vocab;
  model.heads = heads;
  model.context_length = config.context_length;
  const CaredValidator validator(lm, corpus.validation, config.threads);

  TrainResult result;
  result.params = params;
  std::vector<std::size_t> order(frozen.size());
  std::iota(order.begin(), order.end(), 0);
  Rng order_rng(config.seed ^ kOrderStream);
  EarlyStopping stopper(config.patience);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    order_rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t idx : order) {
      if (points[idx].empty()) continue;
      nn::Tape tape;
      std::vector<nn::Var> losses;
      if (kind == ModelKind::Rep) {
        std::vector<std::optional<models::RepTapeHead>> bound(heads.head_count());
        for (const auto& p : points[idx]) {
          if (!bound[p.head]) bound[p.head] = heads.bind(tape, params, p.head);
          const nn::Var states = tape.constant(p.ctx.states);
          const nn::Var h_next = tape.constant(p.ctx.h_next);
          losses.push_back(models::tape_rep_loss(tape, *bound[p.head], states, h_next, p.target).loss);
        }
      } else {
        const models::AttenPtrTape bound = models::bind_atten_ptr(tape, params);
        for (const auto& p : points[idx]) {
          const nn::Var states = tape.constant(p.ctx.states);
          const nn::Var h_next = tape.constant(p.ctx.h_next);
          losses.push_back(models::tape_atten_ptr_loss(tape, bound, states, h_next, p.target));
        }
      }
      const nn::Var total = tape.sum(losses);
      const double loss = tape.scalar(total);
      check_finite(loss, epoch, "head");
      params.zero_grad();
      tape.backward(total);
      nn::clip_gradients(params, config.clip_low, config.clip_high);
      params.sgd_step(config.head_learning_rate);
      loss_sum += loss;
    }
    EpochLog log;
    log.epoch = epoch;
    log.train_loss = loss_sum / static_cast<double>(point_count);
    log.val_metric = validator.top1(model);
    if (stopper.update(log.val_metric)) {
      result.params = params;
      result.best_epoch = epoch;
    }
    log.best_so_far = stopper.best();
    result.log.push_back(log);
    if (on_epoch) on_epoch(log);
    if (stopper.should_stop()) break;
    result.hit_cap = epoch == config.max_epochs;
  }
  result.params.zero_grad();
  return result;
}

}  // namespace tokrep::train
