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
#include "tokrep/models/mixture.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tokrep::models {

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.probability != b.probability) return a.probability > b.probability;
  if (a.text != b.text) return a.text < b.text;
  return !a.special && b.special;
}

namespace {

void finish(std::vector<Candidate>& c, std::size_t limit) {
  if (limit > 0 && limit < c.size()) {
    std::partial_sort(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(limit), c.end(),
                      candidate_before);
    c.resize(limit);
  } else {
    std::sort(c.begin(), c.end(), candidate_before);
  }
}

}  // namespace

std::vector<Candidate> lm_candidates(const Vector& lm_dist, const corpus::Vocabulary& vocab,
                                     std::size_t limit) {
  if (static_cast<std::size_t>(lm_dist.size()) != vocab.size()) {
    throw std::invalid_argument("LM distribution does not match the vocabulary");
  }
  std::vector<Candidate> out;
  out.reserve(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const int id = static_cast<int>(i);
    out.push_back({vocab.decode(id), lm_dist[id], vocab.is_special(id)});
  }
  finish(out, limit);
  return out;
}

std::vector<Candidate> mix_distributions(const Vector& lm_dist, const corpus::Vocabulary& vocab,
                                         const Vector& pointer, double p_rep,
                                         const std::vector<TokenRef>& refs, std::size_t limit) {
  if (refs.empty()) return lm_candidates(lm_dist, vocab, limit);
  if (static_cast<std::size_t>(pointer.size()) != refs.size()) {
    throw std::invalid_argument("pointer distribution does not match the context");
  }
  if (static_cast<std::size_t>(lm_dist.size()) != vocab.size()) {
    throw std::invalid_argument("LM distribution does not match the vocabulary");
  }
  std::vector<Candidate> out;
  out.reserve(vocab.size() + refs.size());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const int id = static_cast<int>(i);
    out.push_back({vocab.decode(id), (1.0 - p_rep) * lm_dist[id], vocab.is_special(id)});
    if (!out.back().special) index.emplace(out.back().text, i);
  }
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const double mass = p_rep * pointer[static_cast<Eigen::Index>(k)];
    auto [it, inserted] = index.emplace(refs[k].text, out.size());
    if (inserted) {
      out.push_back({refs[k].text, mass, false});
    } else {
      out[it->second].probability += mass;
    }
  }
  finish(out, limit);
  return out;
}

}  // namespace tokrep::models
