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
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "tokrep/error.hpp"

namespace {

using namespace tokrep;
using namespace tokrep::cli;

int fail(int code, const std::string& message) {
  std::cerr << "tokrep: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Token repetition models for Java code completion"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::vector<std::string> sets;
  // Flag name -> config key; values are applied after the config file.
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"--corpus", "corpus"},
      {"--work-dir", "work_dir"},
      {"--model", "model"},
      {"--heads", "heads"},
      {"--head-kinds", "head_kinds"},
      {"--context-len", "context_length"},
      {"--patience", "patience"},
      {"--max-epochs", "max_epochs"},
      {"--seed", "seed"},
      {"--lr", "learning_rate"},
      {"--head-lr", "head_learning_rate"},
      {"--hidden", "hidden"},
      {"--embedding", "embedding"},
      {"--threads", "threads"},
      {"--unk-budget", "unk_budget"},
  };
  std::map<std::string, std::optional<std::string>> values;
  app.add_option("--config", config_file, "key = value config file");
  app.add_option("--set", sets, "override any config key (key=value)");
  for (const auto& [flag, key] : flags) app.add_option(flag, values[key], "config key " + key);

  auto* tokenize = app.add_subcommand("tokenize", "linearize every method of the corpus");
  std::size_t window = 0;
  auto* stats = app.add_subcommand("stats", "repetition statistics of the token events");
  stats->add_option("--window", window, "raw tokens scanned back (default: context length)");
  auto* split = app.add_subcommand("split", "train/validation/test split of the functions");
  auto* vocab = app.add_subcommand("vocab", "vocabulary of the training split");
  auto* train_lm = app.add_subcommand("train-lm", "train the LSTM language model");
  auto* train_rep = app.add_subcommand("train-rep", "train the repetition heads on the frozen LM");
  auto* train_ptr = app.add_subcommand("train-ptr", "train the attention-pointer baseline on the frozen LM");
  auto* eval = app.add_subcommand("eval", "stratified top-k accuracy of one model");
  auto* compare = app.add_subcommand("compare", "side-by-side table of all evaluated models");
  SuggestOptions suggest_options;
  std::string prefix_file;
  auto* suggest = app.add_subcommand("suggest", "top-k candidates for the next identifier");
  suggest->add_option("prefix", prefix_file, "file with the code before the slot ('-' for stdin)")->required();
  suggest->add_option("-k", suggest_options.k, "number of candidates");
  suggest->add_flag("--untrained", suggest_options.untrained, "use freshly initialized parameters");
  GradcheckOptions grad_options;
  auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference check of the joint loss");
  gradcheck->add_option("--dims", grad_options.dims, "embedding and hidden size");
  gradcheck->add_option("--tokens", grad_options.tokens, "tokens of the sampled function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig config;
    if (!config_file.empty()) load_config_file(config, config_file);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
      config.set(s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto& [flag, key] : flags) {
      if (values[key]) config.set(key, *values[key]);
    }

    if (*tokenize) cmd_tokenize(config, std::cout);
    if (*stats) cmd_stats(config, window ? window : config.train.context_length, std::cout);
    if (*split) cmd_split(config, std::cout);
    if (*vocab) cmd_vocab(config, std::cout);
    if (*train_lm) cmd_train_lm(config, std::cout);
    if (*train_rep) cmd_train_head(config, train::ModelKind::Rep, std::cout);
    if (*train_ptr) cmd_train_head(config, train::ModelKind::AttenPtr, std::cout);
    if (*eval) cmd_eval(config, std::cout);
    if (*compare) cmd_compare(config, std::cout);
    if (*suggest) {
      if (prefix_file == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        suggest_options.prefix = s.str();
      } else {
        std::ifstream in(prefix_file, std::ios::binary);
        if (!in) throw UsageError("cannot read prefix file " + prefix_file);
        std::ostringstream s;
        s << in.rdbuf();
        suggest_options.prefix = s.str();
      }
      cmd_suggest(config, suggest_options, std::cout);
    }
    if (*gradcheck) cmd_gradcheck(config, grad_options, std::cout);
  } catch (const UsageError& e) {
    return fail(1, e.what());
  } catch (const NumericError& e) {
    return fail(3, e.what());
  } catch (const DataError& e) {
    return fail(2, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(2, std::string("malformed artifact: ") + e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(2, e.what());
  } catch (const std::exception& e) {
    return fail(2, e.what());
  }
  return 0;
}
