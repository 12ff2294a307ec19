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
#include "tokrep/train/objective.hpp"

#include <optional>

#include "tokrep/corpus/context_window.hpp"
#include "tokrep/error.hpp"
#include "tokrep/models/atten_ptr.hpp"
#include "tokrep/models/language_model.hpp"
#include "tokrep/models/rep.hpp"

namespace tokrep::train {

nn::LossClosure end_to_end_objective(ModelKind kind, const syntax::FunctionEvents& fn,
                                     std::vector<int> ids, const models::RepHeadSet& heads,
                                     std::size_t context_length) {
  if (ids.size() > fn.events.size()) throw UsageError("more ids than events");
  return [kind, &fn, ids = std::move(ids), heads, context_length](nn::ParamStore& store) {
    nn::Tape tape;
    const models::LmTape lm = models::bind_lm(tape, store);
    const models::LmSequence seq = models::tape_lm_sequence(tape, lm, ids);
    std::vector<nn::Var> parts = {seq.loss};
    std::optional<models::AttenPtrTape> ptr;
    std::vector<std::optional<models::RepTapeHead>> bound(heads.head_count());

    for (std::size_t pos = 0; kind != ModelKind::Lstm && pos < ids.size(); ++pos) {
      const auto& ev = fn.events[pos];
      if (ev.node_class != syntax::NodeClass::Cared) continue;
      std::vector<models::TokenRef> refs;
      std::vector<nn::Var> columns;
      for (std::size_t p : corpus::context_window(fn.events, pos, context_length).positions) {
        const auto& c = fn.events[p];
        if (kind == ModelKind::Rep && heads.routing().mode == models::HeadMode::VariablesOnly &&
            !c.is_variable) {
          continue;
        }
        refs.push_back({c.text, p, c.is_variable});
        columns.push_back(seq.states[p + 1].h);
      }
      if (columns.empty()) continue;
      const nn::Var states = tape.concat_columns(columns);
      const nn::Var h_next = seq.states[pos].h;
      const Vector target = models::pointer_target(refs, ev.text);
      if (kind == ModelKind::Rep) {
        const std::size_t head = heads.route(ev.parent_kind);
        if (!bound[head]) bound[head] = heads.bind(tape, store, head);
        parts.push_back(models::tape_rep_loss(tape, *bound[head], states, h_next, target).loss);
      } else {
        if (!ptr) ptr = models::bind_atten_ptr(tape, store);
        parts.push_back(models::tape_atten_ptr_loss(tape, *ptr, states, h_next, target));
      }
    }
    const nn::Var total = tape.sum(parts);
    tape.backward(total);
    return tape.scalar(total);
  };
}

}  // namespace tokrep::train
