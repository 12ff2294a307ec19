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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tokrep/train/evaluate.hpp"
#include "tokrep/train/trainer.hpp"

namespace tokrep::cli {

/// Everything a command needs: training hyperparameters, paths, the model
/// selector and the vocabulary budget.
struct RunConfig {
  train::TrainConfig train;
  std::filesystem::path corpus = "corpus";
  std::filesystem::path work_dir = "work";
  train::ModelKind model = train::ModelKind::Rep;
  std::size_t unk_budget = 1000;

  /// Sets one key from its text form. Dashes in \p key count as
  /// underscores. UsageError for unknown keys and malformed values.
  void set(const std::string& key, const std::string& value);
  /// Range checks and head-kind names (UsageError).
  void validate() const;

  /// "key=value" lines of every key that shapes an artifact, sorted by key.
  /// Paths, the model selector and thread counts are left out.
  std::string canonical() const;
  /// FNV-1a of canonical(), 16 hex digits.
  std::string hash() const;
};

/// Keys accepted by RunConfig::set, in canonical spelling.
const std::vector<std::string>& config_keys();

/// Applies a key-value file: one "key = value" per line, '#' starts a
/// comment. Errors name the line.
void load_config_text(RunConfig& config, const std::string& text, const std::string& origin);
void load_config_file(RunConfig& config, const std::filesystem::path& path);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace tokrep::cli
