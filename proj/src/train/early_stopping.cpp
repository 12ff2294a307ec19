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
#include "tokrep/train/early_stopping.hpp"

#include <algorithm>

#include "tokrep/error.hpp"

namespace tokrep::train {

EarlyStopping::EarlyStopping(std::size_t patience) : patience_(patience) {
  if (patience == 0) throw UsageError("patience must be at least 1");
}

bool EarlyStopping::update(double metric) {
  ++epochs_;
  if (metric > best_) {
    best_ = metric;
    best_epoch_ = epochs_;
    since_best_ = 0;
    return true;
  }
  ++since_best_;
  return false;
}

StoppingPoint replay_stopping(std::span<const double> metrics, std::size_t patience,
                              std::size_t max_epochs) {
  EarlyStopping stopper(patience);
  StoppingPoint out;
  const std::size_t n = std::min(metrics.size(), max_epochs);
  for (std::size_t i = 0; i < n; ++i) {
    stopper.update(metrics[i]);
    out.stop_epoch = i + 1;
    if (stopper.should_stop()) break;
  }
  out.best_epoch = stopper.best_epoch();
  out.hit_cap = !stopper.should_stop() && out.stop_epoch == max_epochs;
  return out;
}

}  // namespace tokrep::train
