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
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "tokrep/error.hpp"
#include "tokrep/models/atten_ptr.hpp"
#include "tokrep/train/compare.hpp"
#include "tokrep/train/early_stopping.hpp"
#include "tokrep/train/evaluate.hpp"
#include "tokrep/train/objective.hpp"
#include "tokrep/train/trainer.hpp"

using namespace tokrep;
using namespace tokrep::train;

namespace {

struct Fixture {
  testing::SyntheticCorpus synthetic;
  corpus::Vocabulary vocab;
  corpus::SplitCorpus split;
};

Fixture make_fixture(const testing::SyntheticSpec& spec, std::size_t unk_budget) {
  Fixture f;
  f.synthetic = testing::make_synthetic(spec);
  const auto train = testing::training_functions(f.synthetic);
  f.vocab = corpus::Vocabulary::build(train, unk_budget);
  f.split = testing::assemble_synthetic(f.synthetic, f.vocab);
  return f;
}

testing::SyntheticSpec tiny_spec(std::uint64_t seed) {
  testing::SyntheticSpec spec;
  spec.functions = 15;
  spec.uses = 6;
  spec.fresh_fraction = 0.5;
  spec.pool = 5;
  spec.seed = seed;
  return spec;
}

void randomize(nn::ParamStore& store, Rng& rng, double scale) {
  for (auto& [name, t] : store.all()) t.value = testing::random_matrix(rng, t.rows(), t.cols(), scale);
}

TrainConfig small_config() {
  TrainConfig c;
  c.hidden = 6;
  c.embedding = 5;
  c.max_epochs = 3;
  c.threads = 2;
  return c;
}

// Independent scoring: every prefix is re-run from the zero state, contexts
// are rebuilt by scanning the raw window, and candidates come from the
// direct mixture formula ranked by probability, then text, then non-special.
SplitReport brute_force(const Model& model, std::span<const corpus::EncodedFunction> fns,
                        const std::unordered_set<std::string>& seen) {
  const models::LanguageModel lm(*model.lm);
  auto state_after = [&](const std::vector<int>& ids, std::size_t count) {
    models::LstmState s = lm.step(lm.zero_state(), corpus::Vocabulary::kBosId);
    for (std::size_t i = 0; i < count; ++i) s = lm.step(s, ids[i]);
    return s;
  };
  SplitReport report;
  for (const auto& f : fns) {
    const auto& events = f.function.events;
    for (std::size_t pos = 0; pos < events.size(); ++pos) {
      const auto& ev = events[pos];
      if (!ev.is_content) continue;
      const models::LstmState here = state_after(f.ids, pos);
      const Vector dist = lm.next_distribution(here);
      std::map<std::pair<std::string, bool>, double> mass =
          testing::naive_mixture(dist, *model.vocab, {}, 0.0, {});
      if (model.kind != ModelKind::Lstm && ev.node_class == syntax::NodeClass::Cared) {
        models::ContextStates ctx;
        std::vector<Vector> cols;
        const std::size_t first = pos > model.context_length ? pos - model.context_length : 0;
        for (std::size_t p = first; p < pos; ++p) {
          if (events[p].node_class != syntax::NodeClass::Cared) continue;
          if (model.heads.routing().mode == models::HeadMode::VariablesOnly && !events[p].is_variable) continue;
          ctx.refs.push_back({events[p].text, p, events[p].is_variable});
          cols.push_back(state_after(f.ids, p + 1).h);
        }
        if (!cols.empty()) {
          ctx.h_next = here.h;
          ctx.states.resize(here.h.size(), static_cast<Eigen::Index>(cols.size()));
          for (std::size_t k = 0; k < cols.size(); ++k) ctx.states.col(static_cast<Eigen::Index>(k)) = cols[k];
          if (model.kind == ModelKind::Rep) {
            const auto head = models::route_head(ev.parent_kind, model.heads, *model.head);
            const auto ptr = testing::naive_pointer(ctx, *head.pointer);
            const auto mk = static_cast<std::size_t>(std::max_element(ptr.begin(), ptr.end()) - ptr.begin());
            mass = testing::naive_mixture(dist, *model.vocab, ptr,
                                          testing::naive_decision(ctx, mk, *head.repeat, *head.fresh), ctx.refs);
          } else {
            const auto& h = *model.head;
            const auto ptr = testing::naive_attention(ctx, h.get(models::ptr_param::kContext).value,
                                                      h.get(models::ptr_param::kQuery).value,
                                                      h.get(models::ptr_param::kScore).value.col(0));
            const double g = testing::naive_gate(ctx.h_next, h.get(models::ptr_param::kGate).value.col(0),
                                                 h.get(models::ptr_param::kGateBias).value(0, 0));
            mass = testing::naive_mixture(dist, *model.vocab, ptr, g, ctx.refs);
          }
        }
      }
      std::vector<std::pair<std::pair<std::string, bool>, double>> ranked(mass.begin(), mass.end());
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        if (a.first.first != b.first.first) return a.first.first < b.first.first;
        return !a.first.second && b.first.second;
      });
      std::size_t rank = kMissRank;
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (!ranked[i].first.second && ranked[i].first.first == ev.text) {
          rank = i;
          break;
        }
      }
      report.all.add(rank);
      if (ev.node_class == syntax::NodeClass::Cared) {
        report.cared.add(rank);
        if (!seen.count(ev.text)) report.unseen.add(rank);
      }
    }
  }
  return report;
}

void check_nesting(const SplitReport& r) {
  CHECK(r.unseen.total <= r.cared.total);
  CHECK(r.cared.total <= r.all.total);
  for (std::size_t i = 0; i < kTopK.size(); ++i) {
    CHECK(r.unseen.hits[i] <= r.cared.hits[i]);
    CHECK(r.cared.hits[i] <= r.all.hits[i]);
    if (i > 0) {
      CHECK(r.all.hits[i - 1] <= r.all.hits[i]);
      CHECK(r.cared.hits[i - 1] <= r.cared.hits[i]);
      CHECK(r.unseen.hits[i - 1] <= r.unseen.hits[i]);
    }
  }
}

}  // namespace

TEST_SUITE("early stopping") {
  TEST_CASE("peak at epoch 3 then flat stops after epoch 13") {
    std::vector<double> metrics = {0.1, 0.2, 0.5};
    metrics.resize(40, 0.5);
    const auto p = replay_stopping(metrics, 10, 200);
    CHECK(p.stop_epoch == 13);
    CHECK(p.best_epoch == 3);
    CHECK_FALSE(p.hit_cap);
  }

  TEST_CASE("equal values do not count as improvement") {
    EarlyStopping s(2);
    CHECK(s.update(0.3));
    CHECK_FALSE(s.update(0.3));
    CHECK_FALSE(s.should_stop());
    CHECK_FALSE(s.update(0.29));
    CHECK(s.should_stop());
    CHECK(s.best_epoch() == 1);
  }

  TEST_CASE("a late improvement resets the count") {
    const std::vector<double> metrics = {0.1, 0.1, 0.1, 0.2, 0.1, 0.1, 0.1};
    const auto p = replay_stopping(metrics, 3, 200);
    CHECK(p.best_epoch == 4);
    CHECK(p.stop_epoch == 7);
  }

  TEST_CASE("monotone improvement runs to the cap") {
    std::vector<double> metrics;
    for (int i = 0; i < 250; ++i) metrics.push_back(i * 0.001);
    const auto p = replay_stopping(metrics, 10, 200);
    CHECK(p.stop_epoch == 200);
    CHECK(p.best_epoch == 200);
    CHECK(p.hit_cap);
  }

  TEST_CASE("random sequences against a direct count") {
    Rng rng(4);
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<double> m(1 + rng.below(60));
      for (auto& x : m) x = static_cast<double>(rng.below(5));
      const std::size_t patience = 1 + rng.below(6);
      const std::size_t cap = 1 + rng.below(70);
      // Direct count: stop at the first epoch that closes a run of
      // non-improving epochs as long as the patience.
      std::size_t stop = std::min(cap, m.size()), best = 1, run = 0;
      double top = m[0];
      for (std::size_t e = 2; e <= std::min(cap, m.size()); ++e) {
        if (m[e - 1] > top) {
          top = m[e - 1];
          best = e;
          run = 0;
        } else if (++run == patience) {
          stop = e;
          break;
        }
      }
      const auto p = replay_stopping(m, patience, cap);
      CHECK(p.stop_epoch == stop);
      CHECK(p.best_epoch == best);
    }
  }

  TEST_CASE("zero patience is rejected") { CHECK_THROWS_AS(EarlyStopping(0), UsageError); }
}

TEST_SUITE("training") {
  TEST_CASE("config validation") {
    TrainConfig c;
    c.context_length = 0;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = TrainConfig{};
    c.patience = 0;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = TrainConfig{};
    c.clip_low = 1.0;
    c.clip_high = 1.0;
    CHECK_THROWS_AS(c.validate(), UsageError);
    CHECK_NOTHROW(TrainConfig{}.validate());
  }

  TEST_CASE("same seed gives identical logs and checkpoints") {
    const auto f = make_fixture(tiny_spec(3), 2);
    const auto c = small_config();
    const auto a = train_lm(f.split, f.vocab, c);
    const auto b = train_lm(f.split, f.vocab, c);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) CHECK(a.log[i].to_json().dump() == b.log[i].to_json().dump());
    CHECK(a.params.values_equal(b.params));
    const auto ha = train_heads(ModelKind::Rep, f.split, f.vocab, a.params, c);
    const auto hb = train_heads(ModelKind::Rep, f.split, f.vocab, b.params, c);
    CHECK(ha.params.values_equal(hb.params));
    CHECK(nn::checkpoint_json(ha.params, "h").dump() == nn::checkpoint_json(hb.params, "h").dump());
  }

  TEST_CASE("the LM stays bit-identical while heads train") {
    const auto f = make_fixture(tiny_spec(4), 2);
    const auto c = small_config();
    const auto lm = train_lm(f.split, f.vocab, c);
    const nn::ParamStore before = lm.params;
    for (ModelKind kind : {ModelKind::Rep, ModelKind::AttenPtr}) {
      const auto heads = train_heads(kind, f.split, f.vocab, lm.params, c);
      CHECK(heads.log.size() >= 1);
      CHECK(lm.params.values_equal(before));
    }
  }

  TEST_CASE("log fields and the best checkpoint") {
    const auto f = make_fixture(tiny_spec(5), 2);
    auto c = small_config();
    c.max_epochs = 4;
    std::vector<EpochLog> seen;
    const auto r = train_lm(f.split, f.vocab, c, [&](const EpochLog& l) { seen.push_back(l); });
    REQUIRE(seen.size() == r.log.size());
    double best = -1.0;
    std::size_t best_epoch = 0;
    for (const auto& l : r.log) {
      CHECK(std::isfinite(l.train_loss));
      if (l.val_metric > best) {
        best = l.val_metric;
        best_epoch = l.epoch;
      }
      CHECK(l.best_so_far == best);
    }
    CHECK(r.best_epoch == best_epoch);
    const auto j = r.log.front().to_json();
    CHECK(j.contains("epoch"));
    CHECK(j.contains("train_loss"));
    CHECK(j.contains("val_metric"));
    CHECK(j.contains("best_so_far"));
  }

  TEST_CASE("a corpus without cared points is rejected") {
    auto f = make_fixture(tiny_spec(6), 2);
    for (auto* part : {&f.split.train, &f.split.validation, &f.split.test}) {
      for (auto& fn : *part) {
        for (auto& e : fn.function.events) {
          if (e.node_class == syntax::NodeClass::Cared) e.node_class = syntax::NodeClass::FilteredSimpleName;
        }
      }
    }
    const auto c = small_config();
    const auto lm = make_lm_params(f.vocab, c);
    CHECK_THROWS_AS(train_heads(ModelKind::Rep, f.split, f.vocab, lm, c), DataError);
    CHECK_THROWS_AS(train_heads(ModelKind::Lstm, f.split, f.vocab, lm, c), UsageError);
  }

  TEST_CASE("divergence aborts with a numeric error") {
    const auto f = make_fixture(tiny_spec(7), 2);
    auto c = small_config();
    c.learning_rate = 1e306;
    CHECK_THROWS_AS(train_lm(f.split, f.vocab, c), NumericError);
  }

  TEST_CASE("embedding init lies in [-1, 1] and the forget bias is one") {
    const auto f = make_fixture(tiny_spec(8), 2);
    const auto p = make_lm_params(f.vocab, small_config());
    const auto& e = p.get(models::lm_param::kEmbedding).value;
    CHECK(e.minCoeff() >= -1.0);
    CHECK(e.maxCoeff() <= 1.0);
    CHECK(e.cwiseAbs().maxCoeff() > 0.5);
    const auto& b = p.get(models::lm_param::kBias).value;
    CHECK(b.middleRows(6, 6).isOnes(0.0));
  }

  TEST_CASE("zero-repetition corpus drives the repeat probability down") {
    testing::SyntheticSpec spec;
    spec.functions = 60;
    spec.uses = 12;
    spec.zero_repeat = true;
    spec.force_unk_budget = true;
    spec.seed = 2;
    const auto f = make_fixture(spec, corpus::Vocabulary::kDefaultUnkBudget);
    TrainConfig c;
    c.hidden = 16;
    c.embedding = 16;
    c.max_epochs = 30;
    const auto lm = train_lm(f.split, f.vocab, c);
    const auto head = train_heads(ModelKind::Rep, f.split, f.vocab, lm.params, c);
    Model m{ModelKind::Rep, &lm.params, &head.params, &f.vocab, models::RepHeadSet{}, c.context_length};
    const auto probe = probe_repeat(m, f.split.validation);
    CHECK(probe.repeated == 0);
    CHECK(probe.fresh > 0);
    CHECK(probe.fresh_mean < 0.1);
  }
}

TEST_SUITE("joint objective") {
  TEST_CASE("gradients through the LSTM into every head kind") {
    const auto f = make_fixture(tiny_spec(11), 2);
    const auto& fn = f.split.train.front();
    const std::vector<int> ids(fn.ids.begin(), fn.ids.begin() + 14);
    for (ModelKind kind : {ModelKind::Lstm, ModelKind::Rep, ModelKind::AttenPtr}) {
      for (auto mode : {models::HeadMode::Single, models::HeadMode::VariablesOnly, models::HeadMode::PerKind}) {
        if (kind != ModelKind::Rep && mode != models::HeadMode::Single) continue;
        models::HeadRouting routing{mode, {}};
        if (mode == models::HeadMode::PerKind) routing.kinds = {"WhileStatement"};
        const models::RepHeadSet heads(routing);
        nn::ParamStore store;
        models::register_lm_params(store, {static_cast<Eigen::Index>(f.vocab.size()), 3, 4});
        if (kind == ModelKind::Rep) heads.register_params(store, 4);
        if (kind == ModelKind::AttenPtr) models::register_atten_ptr_params(store, 4);
        Rng rng(12);
        randomize(store, rng, 0.6);
        const auto r = nn::grad_check(end_to_end_objective(kind, fn.function, ids, heads, 7), store);
        CAPTURE(r.worst_parameter);
        CHECK(r.passed);
      }
    }
  }
}

TEST_SUITE("evaluation") {
  TEST_CASE("matches independent per-token scoring") {
    for (std::uint64_t seed : {1, 2, 3, 4}) {
      const auto f = make_fixture(tiny_spec(seed), 3);
      Rng rng(seed);
      nn::ParamStore lm;
      models::register_lm_params(lm, {static_cast<Eigen::Index>(f.vocab.size()), 3, 4});
      randomize(lm, rng, 1.0);
      const auto seen = training_content(f.split.train);
      for (ModelKind kind : {ModelKind::Lstm, ModelKind::Rep, ModelKind::AttenPtr}) {
        for (auto mode : {models::HeadMode::Single, models::HeadMode::VariablesOnly,
                          models::HeadMode::PerKind}) {
          if (kind != ModelKind::Rep && mode != models::HeadMode::Single) continue;
          models::HeadRouting routing{mode, {}};
          if (mode == models::HeadMode::PerKind) routing.kinds = {"IfStatement"};
          Model m;
          m.kind = kind;
          m.lm = &lm;
          m.vocab = &f.vocab;
          m.heads = models::RepHeadSet(routing);
          m.context_length = 7;
          nn::ParamStore head;
          if (kind != ModelKind::Lstm) {
            head = make_head_params(kind, m.heads, 4);
            randomize(head, rng, 1.0);
            m.head = &head;
          }
          for (const auto* part : {&f.split.validation, &f.split.test}) {
            const auto got = evaluate(m, *part, seen, {3, {}});
            const auto want = brute_force(m, *part, seen);
            CAPTURE(model_kind_name(kind));
            CHECK(got == want);
            check_nesting(got);
          }
        }
      }
    }
  }

  TEST_CASE("plain LSTM never scores on unseen cared tokens") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      auto spec = tiny_spec(seed);
      spec.fresh_fraction = 0.8;
      const auto f = make_fixture(spec, 1 + seed % 3);
      Rng rng(seed);
      nn::ParamStore lm;
      models::register_lm_params(lm, {static_cast<Eigen::Index>(f.vocab.size()), 3, 4});
      randomize(lm, rng, 3.0);
      Model m{ModelKind::Lstm, &lm, nullptr, &f.vocab, models::RepHeadSet{}, 25};
      const auto seen = training_content(f.split.train);
      for (const auto* part : {&f.split.validation, &f.split.test, &f.split.train}) {
        const auto r = evaluate(m, *part, seen);
        for (std::size_t i = 0; i < kTopK.size(); ++i) CHECK(r.unseen.hits[i] == 0);
      }
      const auto r = evaluate(m, f.split.test, seen);
      CHECK(r.unseen.total > 0);
    }
  }

  TEST_CASE("teacher forcing feeds the ground-truth ids") {
    const auto f = make_fixture(tiny_spec(9), 2);
    Rng rng(9);
    nn::ParamStore lm;
    models::register_lm_params(lm, {static_cast<Eigen::Index>(f.vocab.size()), 3, 4});
    randomize(lm, rng, 1.0);
    Model m{ModelKind::Lstm, &lm, nullptr, &f.vocab, models::RepHeadSet{}, 25};
    std::mutex mu;
    std::map<std::string, std::vector<int>> fed;
    EvalOptions opts;
    opts.threads = 3;
    opts.on_feed = [&](const std::string& id, std::span<const int> ids) {
      std::lock_guard lock(mu);
      fed[id].assign(ids.begin(), ids.end());
    };
    evaluate(m, f.split.test, {}, opts);
    REQUIRE(fed.size() == f.split.test.size());
    for (const auto& fn : f.split.test) CHECK(fed.at(fn.function.id) == fn.ids);
  }

  TEST_CASE("a perfect pointer hits every repeated cared token") {
    testing::SyntheticSpec spec = tiny_spec(10);
    const auto f = make_fixture(spec, 2);
    Rng rng(10);
    nn::ParamStore lm;
    models::register_lm_params(lm, {static_cast<Eigen::Index>(f.vocab.size()), 3, 4});
    randomize(lm, rng, 1.0);
    const models::LanguageModel model(lm);
    std::size_t scored = 0, hits = 0;
    for (const auto& fn : f.split.train) {
      const Matrix states = hidden_states(model, fn.ids);
      const auto& events = fn.function.events;
      for (std::size_t pos = 0; pos < events.size(); ++pos) {
        if (events[pos].node_class != syntax::NodeClass::Cared) continue;
        const auto ctx = context_states(fn.function, states, pos, 25);
        const Vector oracle = ctx.empty() ? Vector() : models::pointer_target(ctx.refs, events[pos].text);
        if (oracle.size() == 0) continue;
        ++scored;
        const Vector dist = model.next_distribution({Vector(), states.col(static_cast<Eigen::Index>(pos))});
        const auto ranked = models::mix_distributions(dist, f.vocab, oracle, 1.0, ctx.refs, 1);
        if (hit_rank(ranked, events[pos].text) == 0) ++hits;
      }
    }
    CHECK(scored > 0);
    CHECK(hits == scored);
  }

  TEST_CASE("accuracy is hits over total and survives JSON") {
    EvalReport r;
    r.model = "rep";
    r.config_hash = "abc";
    SplitReport s;
    for (std::size_t rank : {0, 2, 5, 9, 40, 0, 1}) s.all.add(rank);
    s.cared = s.all;
    s.unseen.add(3);
    r.splits["test"] = s;
    r.splits["validation"] = s;
    CHECK(s.all.accuracy(0) == 2.0 / 7.0);
    CHECK(s.all.hits == std::array<std::size_t, 4>{2, 4, 5, 6});
    const auto back = EvalReport::from_json(nlohmann::json::parse(r.to_json().dump()));
    CHECK(back == r);
    CHECK(r.to_json()["scored"] == "content tokens only");
  }

  TEST_CASE("hit rank skips special candidates") {
    const std::vector<models::Candidate> ranked = {{"<unk>", 0.5, true}, {"x", 0.3, false}};
    CHECK(hit_rank(ranked, "<unk>") == kMissRank);
    CHECK(hit_rank(ranked, "x") == 1);
    // a miss never counts, however short the candidate list
    StratumCounts c;
    c.add(hit_rank(ranked, "absent"));
    CHECK(c.hits == std::array<std::size_t, 4>{0, 0, 0, 0});
    CHECK(c.total == 1);
  }
}

TEST_SUITE("comparison") {
  EvalReport report(const std::string& model, std::size_t hits, std::size_t total) {
    EvalReport r;
    r.model = model;
    for (const char* split : {"validation", "test"}) {
      SplitReport s;
      for (std::size_t i = 0; i < total; ++i) s.all.add(i < hits ? 0 : 20);
      s.cared = s.all;
      s.unseen.add(model == "lstm" ? 50 : 0);
      r.splits[split] = s;
    }
    return r;
  }

  TEST_CASE("rows share the total column") {
    const auto c = compare_models({report("lstm", 3, 7), report("atten-ptr", 4, 7), report("rep", 5, 7)});
    for (const char* split : {"test", "validation"}) {
      for (const char* key : {"all", "cared", "unseen_cared"}) {
        CHECK(c.json["splits"][split][key].contains("total"));
        CHECK(c.json["splits"][split][key]["accuracy"].size() == 3);
      }
      CHECK(c.json["splits"][split]["all"]["total"] == 7);
    }
    CHECK(c.text.find("REP") != std::string::npos);
    CHECK(c.text.find("Atten-Ptr") != std::string::npos);
    CHECK(c.text.find("total number") != std::string::npos);
  }

  TEST_CASE("a single model gives a one-column table") {
    const auto c = compare_models({report("rep", 2, 3)});
    CHECK(c.json["models"].size() == 1);
    CHECK(c.json["splits"]["test"]["cared"]["accuracy"].size() == 1);
  }

  TEST_CASE("text values round-trip at one decimal") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t total = 1 + rng.below(5000);
      const std::size_t hits = rng.below(total + 1);
      const auto c = compare_models({report("rep", hits, total)});
      const double acc = c.json["splits"]["test"]["all"]["accuracy"]["rep"]["top1"];
      // Parse the first value of the "REP" row of the all-nodes table.
      std::istringstream in(c.text);
      std::string line;
      double parsed = -1.0;
      while (std::getline(in, line)) {
        if (line.rfind("REP", 0) == 0) {
          std::istringstream row(line.substr(3));
          row >> parsed;
          break;
        }
      }
      CHECK(std::abs(parsed - std::round(acc * 1000.0) / 10.0) < 1e-9);
      CHECK(format_percent(acc) == std::to_string(parsed).substr(0, format_percent(acc).size()));
    }
  }

  TEST_CASE("mismatched totals are rejected") {
    CHECK_THROWS_AS(compare_models({report("lstm", 3, 7), report("rep", 3, 8)}), DataError);
    auto partial = report("rep", 1, 7);
    partial.splits.erase("validation");
    CHECK_THROWS_AS(compare_models({report("lstm", 3, 7), partial}), DataError);
    CHECK_THROWS_AS(compare_models({}), UsageError);
  }
}
