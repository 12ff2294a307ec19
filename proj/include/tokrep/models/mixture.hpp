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

#include <string>
#include <vector>

#include "tokrep/corpus/vocabulary.hpp"
#include "tokrep/models/rep.hpp"

namespace tokrep::models {

struct Candidate {
  std::string text;
  double probability = 0.0;
  bool special = false;  // <unk> or <bos>: never a correct prediction

  bool operator==(const Candidate&) const = default;
};

/// Descending probability; ties by text, then non-special first.
bool candidate_before(const Candidate& a, const Candidate& b);

/// Vocabulary tokens weighted by (1 - p_rep) merged with context strings
/// weighted by p_rep * pointer. With an empty context the LM distribution is
/// returned as is. The full list comes back sorted, or only the best
/// \p limit candidates when limit > 0.
std::vector<Candidate> mix_distributions(const Vector& lm_dist, const corpus::Vocabulary& vocab,
                                         const Vector& pointer, double p_rep,
                                         const std::vector<TokenRef>& refs,
                                         std::size_t limit = 0);

/// LM candidates alone.
std::vector<Candidate> lm_candidates(const Vector& lm_dist, const corpus::Vocabulary& vocab,
                                     std::size_t limit = 0);

}  // namespace tokrep::models
