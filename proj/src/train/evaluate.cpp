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
#include "tokrep/train/evaluate.hpp"

#include <mutex>

#include "tokrep/corpus/context_window.hpp"
#include "tokrep/error.hpp"
#include "tokrep/models/atten_ptr.hpp"
#include "tokrep/parallel.hpp"

namespace tokrep::train {

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Lstm: return "lstm";
    case ModelKind::Rep: return "rep";
    case ModelKind::AttenPtr: return "atten-ptr";
  }
  return "lstm";
}

const char* model_display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Lstm: return "LSTM";
    case ModelKind::Rep: return "REP";
    case ModelKind::AttenPtr: return "Atten-Ptr";
  }
  return "LSTM";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "lstm") return ModelKind::Lstm;
  if (name == "rep") return ModelKind::Rep;
  if (name == "atten-ptr") return ModelKind::AttenPtr;
  throw UsageError("unknown model '" + name + "' (lstm, rep, atten-ptr)");
}

Matrix hidden_states(const models::LanguageModel& lm, std::span<const int> ids) {
  const auto run = lm.run(ids);
  Matrix out(lm.dims().hidden, static_cast<Eigen::Index>(run.size()));
  for (std::size_t i = 0; i < run.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = run[i].h;
  return out;
}

models::ContextStates context_states(const syntax::FunctionEvents& fn, const Matrix& states,
                                     std::size_t pos, std::size_t m) {
  const auto window = corpus::context_window(fn.events, pos, m);
  models::ContextStates ctx;
  ctx.h_next = states.col(static_cast<Eigen::Index>(pos));
  ctx.states.resize(states.rows(), static_cast<Eigen::Index>(window.positions.size()));
  for (std::size_t j = 0; j < window.positions.size(); ++j) {
    const std::size_t p = window.positions[j];
    ctx.states.col(static_cast<Eigen::Index>(j)) = states.col(static_cast<Eigen::Index>(p + 1));
    ctx.refs.push_back({fn.events[p].text, p, fn.events[p].is_variable});
  }
  return ctx;
}

std::vector<models::Candidate> predict(const Model& model, const syntax::FunctionEvents& fn,
                                       const Matrix& states, std::size_t pos,
                                       const Vector& lm_dist, std::size_t limit) {
  const auto& ev = fn.events.at(pos);
  if (model.kind == ModelKind::Lstm || ev.node_class != syntax::NodeClass::Cared) {
    return models::lm_candidates(lm_dist, *model.vocab, limit);
  }
  const models::ContextStates ctx = context_states(fn, states, pos, model.context_length);
  if (model.kind == ModelKind::AttenPtr) {
    return models::atten_ptr_forward(ctx, *model.head, lm_dist, *model.vocab, limit);
  }
  const models::ContextStates eff = model.heads.effective_context(ctx);
  if (eff.empty()) return models::lm_candidates(lm_dist, *model.vocab, limit);
  const models::RepParams params = models::route_head(ev.parent_kind, model.heads, *model.head);
  const Vector pointer = models::rep_pointer_probs(eff, params);
  const double p_rep = models::rep_decision(eff, models::rep_argmax(pointer), params);
  return models::mix_distributions(lm_dist, *model.vocab, pointer, p_rep, eff.refs, limit);
}

std::optional<double> repeat_probability(const Model& model, const syntax::FunctionEvents& fn,
                                         const Matrix& states, std::size_t pos) {
  const auto& ev = fn.events.at(pos);
  if (model.kind == ModelKind::Lstm || ev.node_class != syntax::NodeClass::Cared) return {};
  const models::ContextStates ctx = context_states(fn, states, pos, model.context_length);
  if (model.kind == ModelKind::AttenPtr) {
    if (ctx.empty()) return {};
    return models::atten_ptr_gate(ctx.h_next, *model.head);
  }
  const models::ContextStates eff = model.heads.effective_context(ctx);
  if (eff.empty()) return {};
  const models::RepParams params = models::route_head(ev.parent_kind, model.heads, *model.head);
  return models::rep_decision(eff, models::rep_argmax(models::rep_pointer_probs(eff, params)), params);
}

RepeatProbe probe_repeat(const Model& model, std::span<const corpus::EncodedFunction> functions,
                         unsigned threads) {
  struct Part {
    double repeated_sum = 0.0, fresh_sum = 0.0;
    std::size_t repeated = 0, fresh = 0;
  };
  std::vector<Part> parts(functions.size());
  const models::LanguageModel lm(*model.lm);
  parallel_for(
      functions.size(),
      [&](std::size_t i) {
        const auto& fn = functions[i].function;
        const Matrix states = hidden_states(lm, functions[i].ids);
        for (std::size_t pos = 0; pos < fn.events.size(); ++pos) {
          const auto p = repeat_probability(model, fn, states, pos);
          if (!p) continue;
          models::ContextStates ctx = context_states(fn, states, pos, model.context_length);
          if (model.kind == ModelKind::Rep) ctx = model.heads.effective_context(ctx);
          if (models::pointer_target(ctx.refs, fn.events[pos].text).size() > 0) {
            parts[i].repeated_sum += *p;
            ++parts[i].repeated;
          } else {
            parts[i].fresh_sum += *p;
            ++parts[i].fresh;
          }
        }
      },
      threads);
  RepeatProbe probe;
  double repeated_sum = 0.0, fresh_sum = 0.0;
  for (const auto& p : parts) {
    repeated_sum += p.repeated_sum;
    fresh_sum += p.fresh_sum;
    probe.repeated += p.repeated;
    probe.fresh += p.fresh;
  }
  if (probe.repeated) probe.repeated_mean = repeated_sum / static_cast<double>(probe.repeated);
  if (probe.fresh) probe.fresh_mean = fresh_sum / static_cast<double>(probe.fresh);
  return probe;
}

std::size_t hit_rank(const std::vector<models::Candidate>& ranked, const std::string& truth) {
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (!ranked[i].special && ranked[i].text == truth) return i;
  }
  return kMissRank;
}

void StratumCounts::add(std::size_t rank) {
  ++total;
  for (std::size_t i = 0; i < kTopK.size(); ++i) {
    if (rank < kTopK[i]) ++hits[i];
  }
}

StratumCounts& StratumCounts::operator+=(const StratumCounts& o) {
  total += o.total;
  for (std::size_t i = 0; i < kTopK.size(); ++i) hits[i] += o.hits[i];
  return *this;
}

namespace {

nlohmann::ordered_json stratum_json(const StratumCounts& s) {
  nlohmann::ordered_json j;
  j["total"] = s.total;
  nlohmann::ordered_json hits = nlohmann::ordered_json::object();
  nlohmann::ordered_json acc = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < kTopK.size(); ++i) {
    const std::string key = "top" + std::to_string(kTopK[i]);
    hits[key] = s.hits[i];
    acc[key] = s.accuracy(i);
  }
  j["hits"] = hits;
  j["accuracy"] = acc;
  return j;
}

StratumCounts stratum_from_json(const nlohmann::json& j) {
  StratumCounts s;
  s.total = j.at("total").get<std::size_t>();
  for (std::size_t i = 0; i < kTopK.size(); ++i) {
    s.hits[i] = j.at("hits").at("top" + std::to_string(kTopK[i])).get<std::size_t>();
  }
  return s;
}

}  // namespace

nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["config_hash"] = config_hash;
  j["scored"] = "content tokens only";
  nlohmann::ordered_json sj = nlohmann::ordered_json::object();
  for (const auto& [name, r] : splits) {
    nlohmann::ordered_json one;
    one["all"] = stratum_json(r.all);
    one["cared"] = stratum_json(r.cared);
    one["unseen_cared"] = stratum_json(r.unseen);
    sj[name] = one;
  }
  j["splits"] = sj;
  return j;
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
  EvalReport r;
  try {
    r.model = j.at("model").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    for (const auto& [name, one] : j.at("splits").items()) {
      SplitReport s;
      s.all = stratum_from_json(one.at("all"));
      s.cared = stratum_from_json(one.at("cared"));
      s.unseen = stratum_from_json(one.at("unseen_cared"));
      r.splits[name] = s;
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::unordered_set<std::string> training_content(std::span<const corpus::EncodedFunction> train) {
  std::unordered_set<std::string> seen;
  for (const auto& f : train) {
    for (const auto& ev : f.function.events) {
      if (ev.is_content) seen.insert(ev.text);
    }
  }
  return seen;
}

SplitReport evaluate(const Model& model, std::span<const corpus::EncodedFunction> functions,
                     const std::unordered_set<std::string>& seen, const EvalOptions& options) {
  if (!model.lm || !model.vocab || (model.kind != ModelKind::Lstm && !model.head)) {
    throw UsageError("evaluation model is incomplete");
  }
  const models::LanguageModel lm(*model.lm);
  std::vector<SplitReport> parts(functions.size());
  std::mutex feed_mutex;
  parallel_for(
      functions.size(),
      [&](std::size_t i) {
        const auto& f = functions[i];
        if (options.on_feed) {
          std::lock_guard lock(feed_mutex);
          options.on_feed(f.function.id, f.ids);
        }
        const Matrix states = hidden_states(lm, f.ids);
        SplitReport& r = parts[i];
        for (std::size_t pos = 0; pos < f.function.events.size(); ++pos) {
          const auto& ev = f.function.events[pos];
          if (!ev.is_content) continue;
          models::LstmState s{Vector(), states.col(static_cast<Eigen::Index>(pos))};
          const Vector dist = lm.next_distribution(s);
          const auto ranked = predict(model, f.function, states, pos, dist, kTopK.back());
          const std::size_t rank = hit_rank(ranked, ev.text);
          r.all.add(rank);
          if (ev.node_class == syntax::NodeClass::Cared) {
            r.cared.add(rank);
            if (!seen.count(ev.text)) r.unseen.add(rank);
          }
        }
      },
      options.threads);
  SplitReport total;
  for (const auto& p : parts) {
    total.all += p.all;
    total.cared += p.cared;
    total.unseen += p.unseen;
  }
  return total;
}

}  // namespace tokrep::train
