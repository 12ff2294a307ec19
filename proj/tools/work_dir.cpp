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
#include "work_dir.hpp"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "run_config.hpp"
#include "tokrep/error.hpp"

namespace tokrep::cli {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw DataError("cannot write " + path.string());
    }
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("missing " + what + ": " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

WorkDirLock::WorkDirLock(const fs::path& dir) : path_(dir / ".lock") {
  fs::create_directories(dir);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd >= 0) {
      const std::string pid = std::to_string(::getpid()) + "\n";
      const ssize_t written = ::write(fd, pid.data(), pid.size());
      ::close(fd);
      if (written != static_cast<ssize_t>(pid.size())) throw DataError("cannot write " + path_.string());
      return;
    }
    if (errno != EEXIST) throw DataError("cannot create " + path_.string() + ": " + std::strerror(errno));
    std::ifstream in(path_);
    long owner = 0;
    in >> owner;
    if (owner > 0 && (::kill(static_cast<pid_t>(owner), 0) == 0 || errno == EPERM)) {
      throw UsageError("work dir " + dir.string() + " is in use by process " + std::to_string(owner));
    }
    std::error_code ignored;
    fs::remove(path_, ignored);
  }
  throw UsageError("cannot lock work dir " + dir.string());
}

WorkDirLock::~WorkDirLock() {
  std::error_code ignored;
  fs::remove(path_, ignored);
}

LoadedArtifact load_artifact(const fs::path& path, const std::string& config_hash,
                             const std::string& rerun) {
  LoadedArtifact a;
  const std::string bytes = read_file(path, path.filename().string() + " (run 'tokrep " + rerun + "')");
  try {
    a.json = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("corrupt artifact " + path.string() + ": " + e.what());
  }
  a.bytes_hash = fnv1a_hex(bytes);
  const std::string recorded = a.json.value("config_hash", std::string());
  if (recorded != config_hash) {
    throw DataError("stale artifact " + path.string() + ": built with config " + recorded +
                    ", current config is " + config_hash + "; rerun 'tokrep " + rerun + "'");
  }
  return a;
}

void check_chain(const LoadedArtifact& artifact, const LoadedArtifact& upstream,
                 const std::string& name, const std::string& rerun) {
  const std::string recorded = artifact.json.value("input_hash", std::string());
  if (recorded != upstream.bytes_hash) {
    throw DataError("stale artifact " + name + ": its input changed since it was built; rerun 'tokrep " +
                    rerun + "'");
  }
}

}  // namespace tokrep::cli
