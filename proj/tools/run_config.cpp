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
#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tokrep/error.hpp"

namespace tokrep::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("config key '" + key + "' expects a number, got '" + value + "'");
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "clip_high", "clip_low",   "context_length", "corpus",        "embedding",
      "head_kinds", "head_learning_rate", "heads", "hidden", "learning_rate",
      "max_epochs", "model",     "patience",       "seed",          "threads",
      "unk_budget", "work_dir"};
  return keys;
}

void RunConfig::set(const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '-', '_');
  auto& t = train;
  if (key == "corpus") {
    corpus = value;
  } else if (key == "work_dir") {
    work_dir = value;
  } else if (key == "model") {
    model = train::model_kind_from_name(value);
  } else if (key == "heads") {
    t.routing.mode = models::head_mode_from_name(value);
  } else if (key == "head_kinds") {
    t.routing.kinds = split_list(value);
  } else if (key == "context_length") {
    t.context_length = parse_number<std::size_t>(key, value);
  } else if (key == "patience") {
    t.patience = parse_number<std::size_t>(key, value);
  } else if (key == "max_epochs") {
    t.max_epochs = parse_number<std::size_t>(key, value);
  } else if (key == "seed") {
    t.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "learning_rate") {
    t.learning_rate = parse_number<double>(key, value);
  } else if (key == "head_learning_rate") {
    t.head_learning_rate = parse_number<double>(key, value);
  } else if (key == "hidden") {
    t.hidden = parse_number<Eigen::Index>(key, value);
  } else if (key == "embedding") {
    t.embedding = parse_number<Eigen::Index>(key, value);
  } else if (key == "clip_low") {
    t.clip_low = parse_number<double>(key, value);
  } else if (key == "clip_high") {
    t.clip_high = parse_number<double>(key, value);
  } else if (key == "threads") {
    t.threads = parse_number<unsigned>(key, value);
  } else if (key == "unk_budget") {
    unk_budget = parse_number<std::size_t>(key, value);
  } else {
    throw UsageError("unknown config key '" + raw_key + "'");
  }
}

void RunConfig::validate() const {
  train.validate();
  models::HeadRouting::from_json(nlohmann::json::parse(train.routing.to_json().dump()));
  if (unk_budget < 1) throw UsageError("unk_budget must be at least 1");
}

std::string RunConfig::canonical() const {
  const auto& t = train;
  std::string kinds;
  for (const auto& k : t.routing.kinds) kinds += (kinds.empty() ? "" : ",") + k;
  std::ostringstream out;
  out << "clip_high=" << format_double(t.clip_high) << "\n"
      << "clip_low=" << format_double(t.clip_low) << "\n"
      << "context_length=" << t.context_length << "\n"
      << "embedding=" << t.embedding << "\n"
      << "head_kinds=" << kinds << "\n"
      << "head_learning_rate=" << format_double(t.head_learning_rate) << "\n"
      << "heads=" << models::head_mode_name(t.routing.mode) << "\n"
      << "hidden=" << t.hidden << "\n"
      << "learning_rate=" << format_double(t.learning_rate) << "\n"
      << "max_epochs=" << t.max_epochs << "\n"
      << "patience=" << t.patience << "\n"
      << "seed=" << t.seed << "\n"
      << "unk_budget=" << unk_budget << "\n";
  return out.str();
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical()); }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void load_config_text(RunConfig& config, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(number) + ": ";
    if (eq == std::string::npos) throw UsageError(where + "expected 'key = value'");
    try {
      config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const UsageError& e) {
      throw UsageError(where + e.what());
    }
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  load_config_text(config, text.str(), path.string());
}

}  // namespace tokrep::cli
