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
#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "tokrep/corpus/context_window.hpp"
#include "tokrep/corpus/split.hpp"
#include "tokrep/corpus/vocabulary.hpp"
#include "tokrep/error.hpp"
#include "tokrep/models/atten_ptr.hpp"
#include "tokrep/models/rep.hpp"
#include "tokrep/nn/grad_check.hpp"
#include "tokrep/rng.hpp"
#include "tokrep/syntax/ingest.hpp"
#include "tokrep/syntax/java_lexer.hpp"
#include "tokrep/syntax/repetition_stats.hpp"
#include "tokrep/train/compare.hpp"
#include "tokrep/train/objective.hpp"
#include "work_dir.hpp"

namespace tokrep::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using train::ModelKind;
using nn::Vector;

namespace {

constexpr const char* kSlot = "__slot__";

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

ordered_json header(const char* format, const RunConfig& config) {
  ordered_json j;
  j["format"] = format;
  j["version"] = 1;
  j["config_hash"] = config.hash();
  return j;
}

fs::path events_file(const std::string& source_path) {
  fs::path p = fs::path(artifact::kEventsDir) / source_path;
  p.replace_extension(".jsonl");
  return p;
}

// Loaded upstream state. Each loader verifies the config hash and the hash
// of the artifact the previous stage read.
struct Pipeline {
  const RunConfig& config;
  fs::path dir;

  explicit Pipeline(const RunConfig& c) : config(c), dir(c.work_dir) {}

  LoadedArtifact ingest() const {
    return load_artifact(dir / artifact::kIngest, config.hash(), "tokenize");
  }

  std::vector<syntax::FunctionEvents> functions(const LoadedArtifact& ingest) const {
    std::vector<syntax::FunctionEvents> out;
    for (const auto& f : ingest.json.at("files")) {
      const std::string rel = f.at("events").get<std::string>();
      const std::string bytes = read_file(dir / rel, "event file (run 'tokrep tokenize')");
      if (fnv1a_hex(bytes) != f.at("hash").get<std::string>()) {
        throw DataError("event file " + rel + " changed since tokenize; rerun 'tokrep tokenize'");
      }
      std::istringstream in(bytes);
      auto fns = syntax::read_events(in);
      std::move(fns.begin(), fns.end(), std::back_inserter(out));
    }
    return out;
  }

  LoadedArtifact split(const LoadedArtifact& ingest) const {
    auto a = load_artifact(dir / artifact::kSplit, config.hash(), "split");
    check_chain(a, ingest, artifact::kSplit, "split");
    return a;
  }

  LoadedArtifact vocab(const LoadedArtifact& split) const {
    auto a = load_artifact(dir / artifact::kVocab, config.hash(), "vocab");
    check_chain(a, split, artifact::kVocab, "vocab");
    return a;
  }

  LoadedArtifact checkpoint(ModelKind kind, const LoadedArtifact& upstream) const {
    const std::string name = checkpoint_name(kind);
    const std::string rerun = kind == ModelKind::Lstm  ? "train-lm"
                              : kind == ModelKind::Rep ? "train-rep"
                                                       : "train-ptr";
    if (!fs::exists(dir / name)) {
      throw DataError("missing checkpoint " + (dir / name).string() + "; run 'tokrep " + rerun + "' first");
    }
    auto a = load_artifact(dir / name, config.hash(), rerun);
    check_chain(a, upstream, name, rerun);
    return a;
  }
};

// Everything evaluation, suggestion and head training need.
struct Loaded {
  LoadedArtifact ingest, split, vocab_artifact;
  std::vector<syntax::FunctionEvents> functions;
  corpus::SplitAssignment assignment;
  corpus::Vocabulary vocab;

  corpus::SplitCorpus corpus() const { return corpus::assemble(functions, assignment, vocab); }
};

Loaded load_through_vocab(const Pipeline& p) {
  Loaded l;
  l.ingest = p.ingest();
  l.split = p.split(l.ingest);
  l.vocab_artifact = p.vocab(l.split);
  l.functions = p.functions(l.ingest);
  l.assignment = corpus::SplitAssignment::from_json(l.split.json.at("assignment"));
  l.vocab = corpus::Vocabulary::from_json(l.vocab_artifact.json.at("vocabulary"));
  return l;
}

nn::ParamStore lm_store(const corpus::Vocabulary& vocab, const RunConfig& config) {
  nn::ParamStore store;
  models::register_lm_params(store, {static_cast<Eigen::Index>(vocab.size()), config.train.embedding,
                                     config.train.hidden});
  return store;
}

nn::ParamStore head_store(ModelKind kind, const models::RepHeadSet& heads, const RunConfig& config) {
  return train::make_head_params(kind, heads, config.train.hidden);
}

void restore(const LoadedArtifact& a, nn::ParamStore& store) {
  nn::load_checkpoint(a.json, store);
}

std::string log_lines(const std::vector<train::EpochLog>& log) {
  std::string out;
  for (const auto& l : log) out += l.to_json().dump() + "\n";
  return out;
}

void print_epoch(std::ostream& out, const char* stage, const train::EpochLog& l) {
  out << stage << " epoch " << l.epoch << "  loss " << fixed(l.train_loss, 6) << "  val top1 "
      << train::format_percent(l.val_metric) << "  best " << train::format_percent(l.best_so_far) << "\n";
}

ordered_json checkpoint_artifact(const nn::ParamStore& params, const RunConfig& config,
                                 const LoadedArtifact& upstream, ModelKind kind,
                                 const train::TrainResult& r) {
  ordered_json j = nn::checkpoint_json(params, config.hash());
  j["input_hash"] = upstream.bytes_hash;
  j["model"] = train::model_kind_name(kind);
  if (kind == ModelKind::Rep) j["routing"] = config.train.routing.to_json();
  j["best_epoch"] = r.best_epoch;
  j["epochs"] = r.log.size();
  j["hit_cap"] = r.hit_cap;
  return j;
}

// Appends the sentinel and closes every open bracket. Variants differ in
// where statement terminators go.
std::vector<std::string> completions(const std::string& prefix) {
  std::vector<syntax::Token> tokens;
  try {
    tokens = syntax::lex_java(prefix);
  } catch (const DataError& e) {
    throw DataError(std::string("unparseable prefix: ") + e.what());
  }
  std::string open;
  for (const auto& t : tokens) {
    if (t.kind != syntax::TokenKind::Operator || t.text.size() != 1) continue;
    const char c = t.text[0];
    if (c == '(' || c == '{' || c == '[') {
      open.push_back(c);
    } else if (c == ')' || c == '}' || c == ']') {
      if (!open.empty()) open.pop_back();
    }
  }
  auto close = [&open](bool terminate) {
    std::string s;
    for (auto it = open.rbegin(); it != open.rend(); ++it) {
      if (*it == '(') s += ")";
      if (*it == '[') s += "]";
      if (*it == '{') s += terminate ? ";}" : "}";
    }
    return s;
  };
  const std::string base = prefix + " " + kSlot;
  return {base + close(true), base + ";" + close(false), base + close(false), base + ";"};
}

}  // namespace

std::string checkpoint_name(ModelKind kind) {
  return kind == ModelKind::Lstm ? artifact::kLmCheckpoint
                                 : std::string(train::model_kind_name(kind)) + ".ckpt.json";
}

std::string report_name(ModelKind kind, const std::string& extension) {
  return "reports/" + std::string(train::model_kind_name(kind)) + extension;
}

void cmd_tokenize(const RunConfig& config, std::ostream& out) {
  config.validate();
  if (!fs::is_directory(config.corpus)) throw DataError("corpus directory not found: " + config.corpus.string());
  WorkDirLock lock(config.work_dir);
  const auto result = syntax::ingest_directory(config.corpus, syntax::FilterRuleSet::standard(),
                                               config.train.threads);
  if (result.files.empty()) {
    throw DataError("no parseable .java files under " + config.corpus.string() + " (" +
                    std::to_string(result.skipped.size()) + " skipped)");
  }
  ordered_json j = header("tokrep-ingest", config);
  ordered_json files = ordered_json::array();
  std::set<fs::path> written;
  std::size_t functions = 0, events = 0;
  for (const auto& f : result.files) {
    std::ostringstream s;
    syntax::write_events(s, f.functions);
    const fs::path rel = events_file(f.path);
    write_atomic(config.work_dir / rel, s.str());
    written.insert(config.work_dir / rel);
    std::size_t tokens = 0;
    for (const auto& fn : f.functions) tokens += fn.events.size();
    ordered_json e;
    e["path"] = f.path;
    e["events"] = rel.generic_string();
    e["functions"] = f.functions.size();
    e["tokens"] = tokens;
    e["hash"] = fnv1a_hex(s.str());
    files.push_back(e);
    functions += f.functions.size();
    events += tokens;
  }
  // Event files of sources that no longer exist would otherwise linger.
  const fs::path events_dir = config.work_dir / artifact::kEventsDir;
  std::vector<fs::path> stale;
  for (const auto& entry : fs::recursive_directory_iterator(events_dir)) {
    if (entry.is_regular_file() && !written.count(entry.path())) stale.push_back(entry.path());
  }
  for (const auto& p : stale) fs::remove(p);

  ordered_json skipped = ordered_json::array();
  for (const auto& s : result.skipped) skipped.push_back({{"path", s.path}, {"reason", s.reason}});
  j["functions"] = functions;
  j["events"] = events;
  j["files"] = files;
  j["skipped"] = skipped;
  write_atomic(config.work_dir / artifact::kIngest, dump(j));
  out << "tokenized " << result.files.size() << " files, " << functions << " functions, " << events
      << " token events\n";
  for (const auto& s : result.skipped) out << "skipped " << s.path << ": " << s.reason << "\n";
}

void cmd_stats(const RunConfig& config, std::size_t window, std::ostream& out) {
  config.validate();
  WorkDirLock lock(config.work_dir);
  const Pipeline p(config);
  const auto ingest = p.ingest();
  const auto functions = p.functions(ingest);
  const auto report = syntax::repetition_stats(functions, window);
  ordered_json j = header("tokrep-stats", config);
  j["input_hash"] = ingest.bytes_hash;
  j["report"] = ordered_json::parse(syntax::to_json(report));
  write_atomic(config.work_dir / artifact::kStats, dump(j));

  out << "window " << window << ": " << report.total_events << " token events, " << report.content_events
      << " content, " << report.cared_events << " cared (" << train::format_percent(report.cared_fraction())
      << "%)\n";
  for (const auto& [cls, c] : report.classes) {
    out << "  " << syntax::node_class_name(cls) << ": " << c.repeated << "/" << c.tokens << " repeated ("
        << train::format_percent(c.rate()) << "%)\n";
  }
  out << "  variables: " << report.variables.repeated << "/" << report.variables.tokens << " repeated ("
      << train::format_percent(report.variables.rate()) << "%)\n";
  const auto method = report.buckets.find({syntax::NodeClass::FilteredSimpleName, "MethodInvocation"});
  if (method != report.buckets.end()) {
    out << "  method names: " << method->second.repeated << "/" << method->second.tokens << " repeated ("
        << train::format_percent(method->second.rate()) << "%)\n";
  }
}

void cmd_split(const RunConfig& config, std::ostream& out) {
  config.validate();
  WorkDirLock lock(config.work_dir);
  const Pipeline p(config);
  const auto ingest = p.ingest();
  const auto functions = p.functions(ingest);
  std::vector<std::string> ids;
  for (const auto& f : functions) ids.push_back(f.id);
  const auto assignment = corpus::split_functions(ids, config.train.seed);
  ordered_json j = header("tokrep-split", config);
  j["input_hash"] = ingest.bytes_hash;
  j["assignment"] = assignment.to_json();
  write_atomic(config.work_dir / artifact::kSplit, dump(j));
  out << "split " << ids.size() << " functions: train " << assignment.train.size() << ", validation "
      << assignment.validation.size() << ", test " << assignment.test.size() << "\n";
}

void cmd_vocab(const RunConfig& config, std::ostream& out) {
  config.validate();
  WorkDirLock lock(config.work_dir);
  const Pipeline p(config);
  const auto ingest = p.ingest();
  const auto split = p.split(ingest);
  const auto functions = p.functions(ingest);
  const auto assignment = corpus::SplitAssignment::from_json(split.json.at("assignment"));
  const auto train_fns = corpus::select(functions, assignment.train);
  const auto vocab = corpus::Vocabulary::build(train_fns, config.unk_budget);
  ordered_json j = header("tokrep-vocab", config);
  j["input_hash"] = split.bytes_hash;
  j["vocabulary"] = vocab.to_json();
  write_atomic(config.work_dir / artifact::kVocab, dump(j));
  out << "vocabulary: " << vocab.size() << " ids (" << vocab.tokens().size() - 2 << " kept tokens), "
      << vocab.unk_tokens().size() << " training tokens mapped to <unk>\n";
}

void cmd_train_lm(const RunConfig& config, std::ostream& out) {
  config.validate();
  WorkDirLock lock(config.work_dir);
  const Pipeline p(config);
  const Loaded l = load_through_vocab(p);
  const auto corpus = l.corpus();
  const auto result = train::train_lm(corpus, l.vocab, config.train,
                                      [&out](const train::EpochLog& e) { print_epoch(out, "lm", e); });
  write_atomic(config.work_dir / artifact::kLmLog, log_lines(result.log));
  write_atomic(config.work_dir / artifact::kLmCheckpoint,
               dump(checkpoint_artifact(result.params, config, l.vocab_artifact, ModelKind::Lstm, result)));
  out << "best epoch " << result.best_epoch << (result.hit_cap ? " (epoch cap reached)" : "") << "\n";
}

void cmd_train_head(const RunConfig& config, ModelKind kind, std::ostream& out) {
  config.validate();
  if (kind == ModelKind::Lstm) throw UsageError("the LSTM is trained with train-lm");
  WorkDirLock lock(config.work_dir);
  const Pipeline p(config);
  const Loaded l = load_through_vocab(p);
  const auto lm_artifact = p.checkpoint(ModelKind::Lstm, l.vocab_artifact);
  nn::ParamStore lm = lm_store(l.vocab, config);
  restore(lm_artifact, lm);
  const auto corpus = l.corpus();
  const std::string stage = train::model_kind_name(kind);
  const auto result = train::train_heads(
      kind, corpus, l.vocab, lm, config.train,
      [&](const train::EpochLog& e) { print_epoch(out, stage.c_str(), e); });
  write_atomic(config.work_dir / (stage + ".log.jsonl"), log_lines(result.log));
  write_atomic(config.work_dir / checkpoint_name(kind),
               dump(checkpoint_artifact(result.params, config, lm_artifact, kind, result)));
  out << "best epoch " << result.best_epoch << (result.hit_cap ? " (epoch cap reached)" : "") << "\n";
}

void cmd_eval(const RunConfig& config, std::ostream& out) {
  config.validate();
  WorkDirLock lock(config.work_dir);
  const Pipeline p(config);
  const Loaded l = load_through_vocab(p);
  const ModelKind kind = config.model;
  const auto lm_artifact = p.checkpoint(ModelKind::Lstm, l.vocab_artifact);
  nn::ParamStore lm = lm_store(l.vocab, config);
  restore(lm_artifact, lm);

  train::Model model;
  model.kind = kind;
  model.lm = &lm;
  model.vocab = &l.vocab;
  model.context_length = config.train.context_length;
  nn::ParamStore head;
  LoadedArtifact input = lm_artifact;
  if (kind != ModelKind::Lstm) {
    model.heads = models::RepHeadSet(kind == ModelKind::Rep ? config.train.routing : models::HeadRouting{});
    const auto head_artifact = p.checkpoint(kind, lm_artifact);
    head = head_store(kind, model.heads, config);
    restore(head_artifact, head);
    model.head = &head;
    input = head_artifact;
  }

  const auto corpus = l.corpus();
  const auto seen = train::training_content(corpus.train);
  train::EvalReport report;
  report.model = train::model_kind_name(kind);
  report.config_hash = config.hash();
  report.splits["validation"] = train::evaluate(model, corpus.validation, seen, {config.train.threads, {}});
  report.splits["test"] = train::evaluate(model, corpus.test, seen, {config.train.threads, {}});

  ordered_json j = report.to_json();
  j["input_hash"] = input.bytes_hash;
  const auto table = train::compare_models({report});
  write_atomic(config.work_dir / report_name(kind, ".json"), dump(j));
  write_atomic(config.work_dir / report_name(kind, ".txt"), table.text);
  out << table.text;
}

void cmd_compare(const RunConfig& config, std::ostream& out) {
  config.validate();
  WorkDirLock lock(config.work_dir);
  std::vector<train::EvalReport> reports;
  for (ModelKind kind : {ModelKind::Lstm, ModelKind::AttenPtr, ModelKind::Rep}) {
    const fs::path path = config.work_dir / report_name(kind, ".json");
    if (!fs::exists(path)) continue;
    const auto a = load_artifact(path, config.hash(), std::string("eval --model ") + train::model_kind_name(kind));
    reports.push_back(train::EvalReport::from_json(a.json));
  }
  if (reports.empty()) throw DataError("no reports under " + (config.work_dir / "reports").string() + "; run 'tokrep eval' first");
  const auto c = train::compare_models(reports);
  ordered_json j = header("tokrep-comparison", config);
  for (const auto& [k, v] : c.json.items()) j[k] = v;
  write_atomic(config.work_dir / (std::string(artifact::kComparison) + ".json"), dump(j));
  write_atomic(config.work_dir / (std::string(artifact::kComparison) + ".txt"), c.text);
  out << c.text;
}

void cmd_suggest(const RunConfig& config, const SuggestOptions& options, std::ostream& out) {
  config.validate();
  if (options.k == 0) throw UsageError("k must be at least 1");
  WorkDirLock lock(config.work_dir);
  const Pipeline p(config);
  const auto ingest = p.ingest();
  const auto split = p.split(ingest);
  const auto vocab_artifact = p.vocab(split);
  const auto vocab = corpus::Vocabulary::from_json(vocab_artifact.json.at("vocabulary"));
  const ModelKind kind = config.model;

  // Locate the slot in the first completion that parses.
  syntax::FunctionEvents fn;
  std::size_t pos = 0;
  bool found = false;
  std::string last_error;
  for (const auto& text : completions(options.prefix)) {
    try {
      for (auto& f : syntax::ingest_source(text, "prefix")) {
        for (std::size_t i = 0; i < f.events.size(); ++i) {
          if (f.events[i].is_content && f.events[i].text == kSlot) {
            fn = std::move(f);
            pos = i;
            found = true;
            break;
          }
        }
        if (found) break;
      }
    } catch (const DataError& e) {
      last_error = e.what();
    }
    if (found) break;
  }
  if (!found) {
    throw DataError("unparseable prefix" + (last_error.empty() ? std::string() : ": " + last_error));
  }
  fn.events.resize(pos + 1);

  nn::ParamStore lm;
  models::RepHeadSet heads(kind == ModelKind::Rep ? config.train.routing : models::HeadRouting{});
  nn::ParamStore head;
  if (options.untrained) {
    lm = train::make_lm_params(vocab, config.train);
    if (kind != ModelKind::Lstm) {
      head = head_store(kind, heads, config);
      Rng rng(config.train.seed);
      head.initialize(rng);
    }
  } else {
    const auto lm_artifact = p.checkpoint(ModelKind::Lstm, vocab_artifact);
    lm = lm_store(vocab, config);
    restore(lm_artifact, lm);
    if (kind != ModelKind::Lstm) {
      head = head_store(kind, heads, config);
      restore(p.checkpoint(kind, lm_artifact), head);
    }
  }

  train::Model model;
  model.kind = kind;
  model.lm = &lm;
  model.head = kind == ModelKind::Lstm ? nullptr : &head;
  model.vocab = &vocab;
  model.heads = heads;
  model.context_length = config.train.context_length;

  std::vector<int> ids;
  for (std::size_t i = 0; i < pos; ++i) ids.push_back(vocab.encode(fn.events[i].text));
  const models::LanguageModel language_model(lm);
  const auto states = train::hidden_states(language_model, ids);
  const Vector dist = language_model.next_distribution({Vector(), states.col(static_cast<Eigen::Index>(pos))});
  const auto ranked = train::predict(model, fn, states, pos, dist, options.k);

  // Pointer mass per context string, for the annotation column.
  std::map<std::string, double> pointer_mass;
  const auto p_rep = train::repeat_probability(model, fn, states, pos);
  const auto& slot = fn.events[pos];
  if (p_rep) {
    auto ctx = train::context_states(fn, states, pos, model.context_length);
    Vector pointer;
    if (kind == ModelKind::Rep) {
      ctx = heads.effective_context(ctx);
      pointer = models::rep_pointer_probs(ctx, models::route_head(slot.parent_kind, heads, head));
    } else {
      pointer = models::atten_ptr_pointer(ctx, head);
    }
    for (std::size_t k = 0; k < ctx.refs.size(); ++k) {
      pointer_mass[ctx.refs[k].text] += *p_rep * pointer[static_cast<Eigen::Index>(k)];
    }
  }

  out << "slot: " << syntax::node_class_name(slot.node_class) << " under "
      << (slot.parent_kind.empty() ? std::string("<root>") : slot.parent_kind) << ", model "
      << train::model_display_name(kind) << (options.untrained ? " (untrained)" : "") << "\n";
  if (p_rep) {
    out << "repeat probability " << fixed(*p_rep, 3) << " over " << pointer_mass.size()
        << " context strings\n";
  } else {
    out << "language model only (" << (kind == ModelKind::Lstm ? "plain LSTM" : "slot is not a cared node or has no context") << ")\n";
  }
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& c = ranked[i];
    out << (i + 1) << "\t" << c.text << "\t" << fixed(c.probability, 6);
    const auto it = pointer_mass.find(c.text);
    if (!c.special && it != pointer_mass.end()) out << "\tpointer " << fixed(it->second, 6);
    out << "\n";
  }
}

void cmd_gradcheck(const RunConfig& config, const GradcheckOptions& options, std::ostream& out) {
  config.validate();
  if (options.dims < 1 || options.tokens < 2) throw UsageError("gradcheck needs dims >= 1 and tokens >= 2");
  WorkDirLock lock(config.work_dir);
  const Pipeline p(config);
  const Loaded l = load_through_vocab(p);
  const auto corpus = l.corpus();
  const ModelKind kind = config.model;
  const models::RepHeadSet heads(kind == ModelKind::Rep ? config.train.routing : models::HeadRouting{});

  // The shortest training prefix that ends in a cared token repeating one
  // of at least two context entries, so that every loss term is present.
  // Without one, the first function cut to the token limit.
  auto needed = [&](const corpus::EncodedFunction& f) -> std::size_t {
    const auto& events = f.function.events;
    for (std::size_t pos = 0; pos < std::min(options.tokens, f.ids.size()); ++pos) {
      if (events[pos].node_class != syntax::NodeClass::Cared) continue;
      const auto window = corpus::context_window(events, pos, config.train.context_length).positions;
      if (window.size() < 2) continue;
      for (std::size_t p : window) {
        if (events[p].text == events[pos].text) return pos + 1;
      }
    }
    return 0;
  };
  const corpus::EncodedFunction* chosen = &corpus.train.front();
  std::size_t length = std::min(options.tokens, chosen->ids.size());
  std::size_t best = 0;
  for (const auto& f : corpus.train) {
    const std::size_t n = needed(f);
    if (n > 0 && (best == 0 || n < best)) {
      best = n;
      chosen = &f;
      length = n;
    }
  }
  const std::vector<int> ids(chosen->ids.begin(), chosen->ids.begin() + static_cast<std::ptrdiff_t>(length));

  nn::ParamStore store;
  models::register_lm_params(store, {static_cast<Eigen::Index>(l.vocab.size()), options.dims, options.dims});
  if (kind == ModelKind::Rep) heads.register_params(store, options.dims);
  if (kind == ModelKind::AttenPtr) models::register_atten_ptr_params(store, options.dims);
  Rng rng(config.train.seed);
  for (auto& [name, t] : store.all()) {
    for (Eigen::Index c = 0; c < t.value.cols(); ++c) {
      for (Eigen::Index r = 0; r < t.value.rows(); ++r) t.value(r, c) = rng.uniform(-0.5, 0.5);
    }
  }
  const auto report = nn::grad_check(
      train::end_to_end_objective(kind, chosen->function, ids, heads, config.train.context_length), store);
  out << "gradient check of " << train::model_display_name(kind) << " on " << chosen->function.id << " ("
      << ids.size() << " tokens, " << report.components << " components)\n";
  for (const auto& [name, err] : report.max_relative_error) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", err);
    out << "  " << name << "\t" << buf << "\n";
  }
  char worst[32];
  std::snprintf(worst, sizeof worst, "%.3e", report.worst);
  if (!report.passed) {
    throw NumericError(std::string("gradient check failed: relative error ") + worst + " in " +
                       report.worst_parameter);
  }
  out << "passed, worst relative error " << worst << "\n";
}

}  // namespace tokrep::cli
