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

// Direct-formula reference implementations written with explicit loops and
// plain exponentials, for small-magnitude inputs only.

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tokrep/corpus/vocabulary.hpp"
#include "tokrep/models/atten_ptr.hpp"
#include "tokrep/models/language_model.hpp"
#include "tokrep/models/mixture.hpp"
#include "tokrep/models/rep.hpp"
#include "tokrep/nn/grad_check.hpp"
#include "tokrep/nn/tape.hpp"
#include "tokrep/rng.hpp"

namespace tokrep::testing {

using nn::Matrix;
using nn::Vector;

inline double naive_bilinear(const Vector& a, const Matrix& m, const Vector& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) s += a[i] * m(i, j) * b[j];
  }
  return s;
}

inline std::vector<double> naive_normalize_exp(const std::vector<double>& scores) {
  std::vector<double> e;
  double z = 0.0;
  for (double s : scores) {
    e.push_back(std::exp(s));
    z += e.back();
  }
  for (double& x : e) x /= z;
  return e;
}

inline std::vector<double> naive_pointer(const models::ContextStates& ctx, const Matrix& w) {
  std::vector<double> scores;
  for (Eigen::Index k = 0; k < ctx.states.cols(); ++k) {
    scores.push_back(naive_bilinear(ctx.states.col(k), w, ctx.h_next));
  }
  return naive_normalize_exp(scores);
}

inline double naive_decision(const models::ContextStates& ctx, std::size_t mk, const Matrix& v1,
                             const Matrix& v2) {
  const Vector h = ctx.states.col(static_cast<Eigen::Index>(mk));
  const double e1 = std::exp(naive_bilinear(h, v1, ctx.h_next));
  const double e2 = std::exp(naive_bilinear(h, v2, ctx.h_next));
  return e1 / (e1 + e2);
}

inline std::vector<double> naive_attention(const models::ContextStates& ctx, const Matrix& a,
                                           const Matrix& b, const Vector& v) {
  std::vector<double> scores;
  const Eigen::Index n = ctx.h_next.size();
  for (Eigen::Index k = 0; k < ctx.states.cols(); ++k) {
    double u = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      double pre = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) pre += a(i, j) * ctx.states(j, k) + b(i, j) * ctx.h_next[j];
      u += v[i] * std::tanh(pre);
    }
    scores.push_back(u);
  }
  return naive_normalize_exp(scores);
}

inline double naive_gate(const Vector& h, const Vector& w, double bias) {
  double z = bias;
  for (Eigen::Index i = 0; i < h.size(); ++i) z += w[i] * h[i];
  return 1.0 / (1.0 + std::exp(-z));
}

/// Mixture by accumulating into a map keyed by (text, special).
inline std::map<std::pair<std::string, bool>, double> naive_mixture(
    const Vector& lm, const corpus::Vocabulary& vocab, const std::vector<double>& pointer,
    double p_rep, const std::vector<models::TokenRef>& refs) {
  std::map<std::pair<std::string, bool>, double> mass;
  const double lm_weight = refs.empty() ? 1.0 : 1.0 - p_rep;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const int id = static_cast<int>(i);
    mass[{vocab.decode(id), vocab.is_special(id)}] += lm_weight * lm[id];
  }
  for (std::size_t k = 0; k < refs.size(); ++k) mass[{refs[k].text, false}] += p_rep * pointer[k];
  return mass;
}

inline std::map<std::pair<std::string, bool>, double> as_map(
    const std::vector<models::Candidate>& c) {
  std::map<std::pair<std::string, bool>, double> out;
  for (const auto& x : c) out[{x.text, x.special}] += x.probability;
  return out;
}

inline double max_abs_difference(const std::map<std::pair<std::string, bool>, double>& a,
                                 const std::map<std::pair<std::string, bool>, double>& b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end()) return 1e300;
    worst = std::max(worst, std::abs(v - it->second));
  }
  return worst;
}

inline Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c, double scale) {
  Matrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = rng.uniform(-scale, scale);
  }
  return m;
}

inline models::ContextStates random_context(Rng& rng, Eigen::Index hidden, std::size_t n,
                                            double scale,
                                            const std::vector<std::string>& texts = {"a", "b", "c", "d"}) {
  models::ContextStates ctx;
  ctx.states = random_matrix(rng, hidden, static_cast<Eigen::Index>(n), scale);
  ctx.h_next = random_matrix(rng, hidden, 1, scale).col(0);
  for (std::size_t k = 0; k < n; ++k) {
    ctx.refs.push_back({texts[rng.below(texts.size())], k, rng.below(2) == 0});
  }
  return ctx;
}

/// Toy end-to-end model: embedding -> LSTM over three tokens -> pointer and
/// repetition-decision losses at the third token, plus the LM loss.
struct EndToEndToy {
  nn::ParamStore store;
  std::vector<int> ids = {2, 3, 2};

  explicit EndToEndToy(std::uint64_t seed) {
    models::register_lm_params(store, {5, 3, 4});
    for (const char* n : {"rep.pointer", "rep.repeat", "rep.fresh"}) store.add(n, 4, 4);
    Rng rng(seed);
    for (auto& [name, t] : store.all()) {
      (void)name;
      t.value = random_matrix(rng, t.rows(), t.cols(), 0.6);
      t.zero_grad();
    }
  }

  static double loss(nn::ParamStore& s, const std::vector<int>& ids) {
    nn::Tape tape;
    const models::LmTape lm = models::bind_lm(tape, s);
    const models::LmSequence seq = models::tape_lm_sequence(tape, lm, ids);
    // context entries are tokens 0 and 1; the prediction for token 2 reads S[2]
    const nn::Var ctx_cols[] = {seq.states[1].h, seq.states[2].h};
    const nn::Var states = tape.concat_columns(ctx_cols);
    const models::RepTapeHead head{tape.param(s.get("rep.pointer")), tape.param(s.get("rep.repeat")),
                                   tape.param(s.get("rep.fresh"))};
    Vector target(2);
    target << 1.0, 0.0;  // token 2 repeats token 0
    const models::RepLoss rep = models::tape_rep_loss(tape, head, states, seq.states[2].h, target);
    const nn::Var parts[] = {seq.loss, rep.loss};
    const nn::Var total = tape.sum(parts);
    tape.backward(total);
    return tape.scalar(total);
  }

  nn::GradCheckReport check() {
    const auto closure = [ids = ids](nn::ParamStore& s) { return loss(s, ids); };
    return nn::grad_check(closure, store);
  }
};

}  // namespace tokrep::testing
