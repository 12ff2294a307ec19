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
#include <limits>
#include <span>

namespace tokrep::train {

/// Tracks the running maximum of a validation metric. Training stops once
/// \c patience consecutive epochs fail to exceed it.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience);

  /// Records the metric of the next epoch; true when it is a new best.
  bool update(double metric);
  bool should_stop() const { return since_best_ >= patience_; }

  std::size_t epochs() const { return epochs_; }
  std::size_t best_epoch() const { return best_epoch_; }  // 1-based, 0 before any update
  double best() const { return best_; }

 private:
  std::size_t patience_;
  std::size_t epochs_ = 0;
  std::size_t best_epoch_ = 0;
  std::size_t since_best_ = 0;
  double best_ = -std::numeric_limits<double>::infinity();
};

struct StoppingPoint {
  std::size_t stop_epoch = 0;  // last epoch that runs
  std::size_t best_epoch = 0;
  bool hit_cap = false;
};

/// Replays a metric sequence (metrics[i] belongs to epoch i+1) through the
/// stopping rule with a cap of \p max_epochs.
StoppingPoint replay_stopping(std::span<const double> metrics, std::size_t patience,
                              std::size_t max_epochs);

}  // namespace tokrep::train
