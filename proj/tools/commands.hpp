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
#include <filesystem>
#include <iosfwd>
#include <string>

#include "run_config.hpp"

namespace tokrep::cli {

// Each command locks the work directory, checks the config hash and the
// upstream hash of every artifact it reads, and writes its outputs
// atomically. Human-readable output goes to \p out.

/// Token-event JSONL per parseable source plus ingest.json.
void cmd_tokenize(const RunConfig& config, std::ostream& out);
/// Repetition statistics over the tokenized corpus (stats.json).
void cmd_stats(const RunConfig& config, std::size_t window, std::ostream& out);
void cmd_split(const RunConfig& config, std::ostream& out);
void cmd_vocab(const RunConfig& config, std::ostream& out);
void cmd_train_lm(const RunConfig& config, std::ostream& out);
/// Trains the head of \p kind (rep or atten-ptr) on the frozen LM.
void cmd_train_head(const RunConfig& config, train::ModelKind kind, std::ostream& out);
/// reports/<model>.json and .txt for the validation and test splits.
void cmd_eval(const RunConfig& config, std::ostream& out);
/// Side-by-side table of every available report (comparison.json/.txt).
void cmd_compare(const RunConfig& config, std::ostream& out);

struct SuggestOptions {
  std::string prefix;  // source text ending right before the slot
  std::size_t k = 10;
  bool untrained = false;  // freshly initialized parameters instead of checkpoints
};
void cmd_suggest(const RunConfig& config, const SuggestOptions& options, std::ostream& out);

struct GradcheckOptions {
  long dims = 4;            // embedding and hidden size of the checked model
  std::size_t tokens = 64;  // longest prefix of the sampled function
};
/// Central-difference check of the joint loss on a training function.
/// NumericError when it fails.
void cmd_gradcheck(const RunConfig& config, const GradcheckOptions& options, std::ostream& out);

/// Checkpoint file of a model kind, relative to the work dir.
std::string checkpoint_name(train::ModelKind kind);
std::string report_name(train::ModelKind kind, const std::string& extension);

}  // namespace tokrep::cli
