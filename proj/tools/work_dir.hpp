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

#include <filesystem>
#include <string>

#include "json.hpp"

namespace tokrep::cli {

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never see a partial artifact.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);

/// Whole file as bytes. DataError naming \p what when it does not exist.
std::string read_file(const std::filesystem::path& path, const std::string& what);

/// Exclusive lock on a work directory, released on destruction. A lock
/// left behind by a dead process is taken over.
class WorkDirLock {
 public:
  explicit WorkDirLock(const std::filesystem::path& dir);
  ~WorkDirLock();
  WorkDirLock(const WorkDirLock&) = delete;
  WorkDirLock& operator=(const WorkDirLock&) = delete;

 private:
  std::filesystem::path path_;
};

/// Artifact names inside a work directory.
namespace artifact {
inline constexpr const char* kIngest = "ingest.json";
inline constexpr const char* kEventsDir = "events";
inline constexpr const char* kStats = "stats.json";
inline constexpr const char* kSplit = "split.json";
inline constexpr const char* kVocab = "vocab.json";
inline constexpr const char* kLmCheckpoint = "lm.ckpt.json";
inline constexpr const char* kLmLog = "lm.log.jsonl";
inline constexpr const char* kComparison = "comparison";
}  // namespace artifact

/// A JSON artifact together with the hash of its bytes.
struct LoadedArtifact {
  nlohmann::json json;
  std::string bytes_hash;
};

/// Reads an artifact and checks that it was built under \p config_hash.
/// \p rerun names the command that rebuilds it, for the error message.
LoadedArtifact load_artifact(const std::filesystem::path& path, const std::string& config_hash,
                             const std::string& rerun);

/// Checks the recorded upstream hash of \p artifact against \p upstream.
void check_chain(const LoadedArtifact& artifact, const LoadedArtifact& upstream,
                 const std::string& name, const std::string& rerun);

}  // namespace tokrep::cli
