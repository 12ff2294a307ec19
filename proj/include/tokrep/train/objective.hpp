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
#include <vector>

#include "tokrep/models/heads.hpp"
#include "tokrep/nn/grad_check.hpp"
#include "tokrep/syntax/token_event.hpp"
#include "tokrep/train/evaluate.hpp"

namespace tokrep::train {

/// Joint loss of one function with gradients flowing through the LSTM:
/// LM cross-entropy over \p ids plus, for rep and atten-ptr, the head loss
/// at every cared position with a nonempty context. The store holds the LM
/// parameters and the head parameters of \p kind. \p fn must outlive the
/// closure.
nn::LossClosure end_to_end_objective(ModelKind kind, const syntax::FunctionEvents& fn,
                                     std::vector<int> ids, const models::RepHeadSet& heads,
                                     std::size_t context_length);

}  // namespace tokrep::train
