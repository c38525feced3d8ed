#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "pcalc/inference.hpp"
#include "pcalc/parser.hpp"
#include "pcalc/self_watcher.hpp"

namespace pcalc {
namespace {

KnowledgeBase elephants() { return load_kb(fixtures::data("elephants.kb")); }

bool has(const KnowledgeBase& kb, const std::string& atom) { return kb.contains(parse_goal(atom)); }

TEST(WatchTick, EmptyKb) {
  const KnowledgeBase kb = watch_tick(KnowledgeBase{}, 1);
  EXPECT_TRUE(has(kb, "(db-fact-count 0)"));
  EXPECT_TRUE(has(kb, "(db-rule-count 0)"));
  EXPECT_TRUE(has(kb, "(watcher-generation 1)"));
  EXPECT_EQ(kb.facts().size(), 3u);
  for (const auto& f : kb.facts()) {
    EXPECT_EQ(f.provenance, Provenance::kWatcher);
    EXPECT_EQ(f.generation, 1);
  }
}

TEST(WatchTick, ElephantKb) {
  const KnowledgeBase kb = watch_tick(elephants(), 1);
  EXPECT_TRUE(has(kb, "(db-fact-count 1)"));
  EXPECT_TRUE(has(kb, "(db-rule-count 1)"));
  EXPECT_TRUE(has(kb, "(db-has-predicate inst)"));
  EXPECT_EQ(kb.facts().size(), 5u);
}

TEST(WatchTick, SecondTickDescribesTheFirst) {
  const KnowledgeBase one = watch_tick(elephants(), 1);
  const KnowledgeBase two = watch_tick(one, 2);
  // tick 1 left 1 + 4 facts and introduced four watcher predicates
  EXPECT_TRUE(has(two, "(db-fact-count 5)"));
  for (const char* p : {"db-fact-count", "db-rule-count", "db-has-predicate", "watcher-generation"}) {
    EXPECT_TRUE(has(two, std::string("(db-has-predicate ") + p + ")")) << p;
  }
  EXPECT_TRUE(has(two, "(watcher-generation 2)"));
  EXPECT_EQ(two.facts().size(), 5u + 6u);
}

TEST(WatchTick, Config) {
  WatcherConfig cfg;
  cfg.emit_predicates = false;
  cfg.emit_rule_count = false;
  EXPECT_EQ(watch_tick(elephants(), 1, cfg).facts().size(), 3u);
  EXPECT_THROW(watch_tick(elephants(), 0), std::invalid_argument);
  cfg.awareness_threshold = 5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.awareness_threshold = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(RunWatcher, DefaultsOnElephants) {
  const WatchResult r = run_watcher(elephants());
  EXPECT_EQ(r.report.generations_run, 4);
  EXPECT_TRUE(r.report.awareness_emitted);
  EXPECT_EQ(r.report.awareness_generation, 2);
  EXPECT_TRUE(has(r.kb, "(have-impression-of mind)"));
  EXPECT_EQ(render(r.report),
            "generation 1: emitted 4\n"
            "generation 2: emitted 7\n"
            "generation 3: emitted 3\n"
            "generation 4: emitted 2\n"
            "awareness: yes (generation 2)\n");
}

TEST(RunWatcher, SingleGenerationNeverAware) {
  WatcherConfig cfg;
  cfg.max_generations = 1;
  cfg.awareness_threshold = 1;
  const WatchResult r = run_watcher(elephants(), cfg);
  EXPECT_EQ(r.report.generations_run, 1);
  EXPECT_FALSE(r.report.awareness_emitted);
  EXPECT_FALSE(has(r.kb, "(have-impression-of mind)"));
}

TEST(RunWatcher, TwoFactsThreeGenerations) {
  // By hand, for {(p a), (q b)} with no rules:
  //   tick 1 sees 2 facts: count 2, rules 0, has p, has q, generation 1      -> 5
  //   tick 2 sees 7 facts: count 7, four new has-predicate, generation 2,
  //          plus the awareness sentence                                    -> 7
  //   tick 3 sees 14 facts: count 14, has have-impression-of, generation 3  -> 3
  const KnowledgeBase kb = load_kb("(p a)\n(q b)\n");
  WatcherConfig cfg;
  cfg.max_generations = 3;
  const WatchResult r = run_watcher(kb, cfg);
  EXPECT_EQ(r.report.facts_emitted_per_generation, (std::vector<int>{5, 7, 3}));
  const auto sim = oracle::simulate_watcher({parse_goal("(p a)"), parse_goal("(q b)")}, 0, 3, 2);
  EXPECT_EQ(sim.emitted, (std::vector<int>{5, 7, 3}));
  EXPECT_EQ(sim.pre_tick_fact_counts, (std::vector<std::size_t>{2, 7, 14}));
}

TEST(RunWatcher, RandomKbsMatchSimulation) {
  gen::Rng rng(6);
  for (int i = 0; i < 60; ++i) {
    const auto random = gen::random_horn_kb(rng);
    const KnowledgeBase kb = load_kb(random.text);
    if (kb.facts().empty() && kb.rules().empty()) continue;
    std::vector<Atom> facts;
    for (const auto& f : kb.facts()) facts.push_back(f.atom);
    const auto sim = oracle::simulate_watcher(facts, kb.rules().size(), 4, 2);
    const WatchResult r = run_watcher(kb);
    EXPECT_EQ(r.report.facts_emitted_per_generation, sim.emitted) << random.text;
    EXPECT_EQ(r.report.awareness_generation, sim.awareness_generation);

    // snapshot fidelity: the newest (db-fact-count n) holds the pre-tick count
    KnowledgeBase state = kb;
    for (int gen = 1; gen <= 4; ++gen) {
      const std::size_t before = state.facts().size();
      state = watch_tick(state, gen);
      const ProofResult q = backward_chain(state, parse_goal("(db-fact-count ?n)"));
      int newest = -1;
      std::string value;
      for (const auto& a : q.answers) {
        const Fact* f = state.find(a);
        if (f->generation > newest) {
          newest = f->generation;
          value = a.args[0].name();
        }
      }
      EXPECT_EQ(newest, gen);
      EXPECT_EQ(value, std::to_string(before));
      EXPECT_GE(state.facts().size(), before);
    }

    // non-interference: no watcher fact unifies with a pattern over the KB's own predicates
    for (const auto& [pred, arity] : oracle::predicates_of(random.program)) {
      EXPECT_FALSE(is_watcher_predicate(pred));
      Atom open{pred, {}};
      for (std::size_t k = 0; k < arity; ++k) open.args.push_back(Term::variable("?v" + std::to_string(k)));
      for (const auto& m : r.kb.facts_matching(open)) EXPECT_NE(m.fact.provenance, Provenance::kWatcher);
    }
  }
}

TEST(RunWatcher, AwarenessNeedsAnEarlierSnapshot) {
  WatcherConfig cfg;
  cfg.max_generations = 4;
  cfg.awareness_threshold = 3;
  const WatchResult r = run_watcher(elephants(), cfg);
  EXPECT_EQ(r.report.awareness_generation, 3);
  const Fact* aware = r.kb.find(parse_goal("(have-impression-of mind)"));
  ASSERT_NE(aware, nullptr);
  bool earlier = false;
  for (const auto& f : r.kb.facts()) {
    if (f.provenance == Provenance::kWatcher && f.generation < aware->generation) earlier = true;
  }
  EXPECT_TRUE(earlier);
}

TEST(WatcherNamespace, Reserved) {
  EXPECT_TRUE(is_watcher_predicate("db-fact-count"));
  EXPECT_TRUE(is_watcher_predicate("watcher-generation"));
  EXPECT_TRUE(is_watcher_predicate("have-impression-of"));
  EXPECT_FALSE(is_watcher_predicate("inst"));
}

}  // namespace
}  // namespace pcalc
