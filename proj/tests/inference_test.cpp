#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "pcalc/inference.hpp"
#include "pcalc/parser.hpp"

namespace pcalc {
namespace {

KnowledgeBase elephants() { return load_kb(fixtures::data("elephants.kb")); }

Atom goal(const std::string& text) { return parse_goal(text); }

std::set<Atom> fact_atoms(const KnowledgeBase& kb) {
  std::set<Atom> out;
  for (const auto& f : kb.facts()) out.insert(f.atom);
  return out;
}

TEST(BackwardChain, ClydeIsGray) {
  const ProofResult r = backward_chain(elephants(), goal("(color Clyde gray)"));
  ASSERT_TRUE(r.proven);
  EXPECT_FALSE(r.depth_limited);
  ASSERT_EQ(r.proofs.size(), 1u);
  EXPECT_EQ(render_proof(r.proofs[0]),
            "(color Clyde gray)  ; rule 1\n"
            "  (inst Clyde elephant)  ; fact\n");
  EXPECT_EQ(r.proofs[0].height(), 2);
}

TEST(BackwardChain, ClydeIsNotPink) {
  const ProofResult r = backward_chain(elephants(), goal("(color Clyde pink)"));
  EXPECT_FALSE(r.proven);
  EXPECT_FALSE(r.depth_limited);
  EXPECT_TRUE(r.answers.empty());
}

TEST(BackwardChain, UnknownPredicateFails) {
  EXPECT_FALSE(backward_chain(elephants(), goal("(loves John Mary)")).proven);
}

TEST(BackwardChain, CircularRuleTerminates) {
  const std::string text = "(forall (x) (if (p x) (p x)))\n";
  const KnowledgeBase kb = load_kb(text);
  const ProofResult r = backward_chain(kb, goal("(p a)"));
  EXPECT_FALSE(r.proven);

  // the program has no fact, so no proof tree of any height exists
  oracle::HornProgram prog;
  prog.rules.push_back({{"x"}, {Atom{"p", {Term::variable("x")}}}, Atom{"p", {Term::variable("x")}}});
  EXPECT_TRUE(oracle::naive_fixpoint(prog).empty());
}

TEST(BackwardChain, VariableGoalEnumeratesAnswers) {
  const KnowledgeBase kb = load_kb(fixtures::data("elephants.kb") + "(inst Fred elephant)\n(color Tom pink)\n");
  const ProofResult r = backward_chain(kb, goal("(color ?x ?c)"));
  ASSERT_TRUE(r.proven);
  std::vector<std::string> seen;
  for (const auto& b : r.bindings) seen.push_back(render(b));
  EXPECT_EQ(seen, (std::vector<std::string>{"{?c↦pink, ?x↦Tom}", "{?c↦gray, ?x↦Clyde}", "{?c↦gray, ?x↦Fred}"}));
  ASSERT_EQ(r.answers.size(), 3u);
  EXPECT_EQ(render(r.answers[1]), "(color Clyde gray)");
}

// p0(c0), p_i(x) -> p_{i+1}(x): p_n(c0) needs a proof of height n + 1.
KnowledgeBase chain(int n) {
  std::string text = "(p0 c0)\n";
  for (int i = 0; i < n; ++i) {
    text += "(forall (x) (if (p" + std::to_string(i) + " x) (p" + std::to_string(i + 1) + " x)))\n";
  }
  return load_kb(text);
}

TEST(BackwardChain, DepthLimitedFailureIsFlagged) {
  const KnowledgeBase kb = chain(9);
  ChainConfig tight;
  tight.depth_limit = 5;
  const ProofResult cut = backward_chain(kb, goal("(p9 c0)"), tight);
  EXPECT_FALSE(cut.proven);
  EXPECT_TRUE(cut.depth_limited);

  ChainConfig exact;
  exact.depth_limit = 10;
  const ProofResult ok = backward_chain(kb, goal("(p9 c0)"), exact);
  EXPECT_TRUE(ok.proven);
  EXPECT_EQ(ok.proofs[0].height(), 10);

  exact.depth_limit = 9;
  EXPECT_FALSE(backward_chain(kb, goal("(p9 c0)"), exact).proven);
}

TEST(BackwardChain, DepthLimitMatchesMinimumProofHeight) {
  gen::Rng rng(11);
  for (int k = 0; k < 40; ++k) {
    const auto random = gen::random_horn_kb(rng);
    const KnowledgeBase kb = load_kb(random.text);
    const auto heights = oracle::naive_fixpoint(random.program);
    for (const auto& atom : oracle::herbrand_base(random.program)) {
      auto it = heights.find(atom);
      for (int d = 1; d <= 4; ++d) {
        ChainConfig cfg;
        cfg.depth_limit = d;
        const ProofResult r = backward_chain(kb, atom, cfg);
        const bool expected = it != heights.end() && it->second <= d;
        ASSERT_EQ(r.proven, expected) << random.text << render(atom) << " depth " << d;
        if (r.proven) {
          EXPECT_EQ(r.proofs[0].height(), it->second);
        }
      }
    }
  }
}

TEST(BackwardChain, AgreesWithForwardFixpoint) {
  gen::Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    const auto random = gen::random_horn_kb(rng);
    const KnowledgeBase kb = load_kb(random.text);
    const auto base = oracle::herbrand_base(random.program);
    ChainConfig cfg;
    cfg.depth_limit = static_cast<int>(base.size()) + 1;
    cfg.max_rounds = cfg.depth_limit;
    const auto fixpoint = fact_atoms(forward_chain(kb, cfg));
    for (const auto& atom : base) {
      EXPECT_EQ(backward_chain(kb, atom, cfg).proven, fixpoint.count(atom) == 1) << random.text << render(atom);
    }
  }
}

TEST(BackwardChain, Deterministic) {
  gen::Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    const KnowledgeBase kb = load_kb(gen::random_horn_kb(rng).text);
    for (const auto& p : kb.stats().predicate_names) {
      Atom open{p, {}};
      const Fact& sample = kb.facts()[kb.facts_with_predicate(p).front()];
      for (std::size_t i = 0; i < sample.atom.arity(); ++i) open.args.push_back(Term::variable("?a" + std::to_string(i)));
      EXPECT_EQ(backward_chain(kb, open), backward_chain(kb, open));
    }
  }
}

TEST(Show, CachesProvenAnswer) {
  const ShowResult s = show(elephants(), goal("(color Clyde gray)"));
  ASSERT_TRUE(s.result.proven);
  const Fact* cached = s.kb.find(goal("(color Clyde gray)"));
  ASSERT_NE(cached, nullptr);
  EXPECT_EQ(cached->provenance, Provenance::kDerived);
  EXPECT_EQ(cached->generation, 1);
}

TEST(Show, UnprovableLeavesKbAlone) {
  const KnowledgeBase kb = elephants();
  EXPECT_EQ(show(kb, goal("(color Clyde pink)")).kb, kb);
}

TEST(Show, NoCacheFlag) {
  ChainConfig cfg;
  cfg.cache_derived = false;
  const KnowledgeBase kb = elephants();
  const ShowResult s = show(kb, goal("(color Clyde gray)"), cfg);
  EXPECT_TRUE(s.result.proven);
  EXPECT_EQ(s.kb, kb);
}

TEST(Show, SecondCallUsesCachedFact) {
  const ShowResult first = show(elephants(), goal("(color Clyde gray)"));
  const ShowResult second = show(first.kb, goal("(color Clyde gray)"));
  ASSERT_TRUE(second.result.proven);
  EXPECT_EQ(first.result.proofs[0].height(), 2);
  EXPECT_EQ(second.result.proofs[0].height(), 1);
  EXPECT_EQ(second.result.proofs[0].source, ProofNode::Source::kFact);
  EXPECT_EQ(second.kb, first.kb);
}

TEST(Show, NeverAddsUnprovenFacts) {
  gen::Rng rng(21);
  for (int k = 0; k < 40; ++k) {
    const KnowledgeBase kb = load_kb(gen::random_horn_kb(rng).text);
    const auto before = fact_atoms(kb);
    const KnowledgeBase saturated = forward_chain(kb);
    for (const auto& p : saturated.stats().predicate_names) {
      const Fact& sample = saturated.facts()[saturated.facts_with_predicate(p).front()];
      Atom open{p, {}};
      for (std::size_t i = 0; i < sample.atom.arity(); ++i) open.args.push_back(Term::variable("?a" + std::to_string(i)));
      const ShowResult s = show(kb, open);
      const std::set<Atom> answers(s.result.answers.begin(), s.result.answers.end());
      for (const auto& a : fact_atoms(s.kb)) {
        if (!before.count(a)) {
          EXPECT_TRUE(answers.count(a)) << render(a);
        }
      }
    }
  }
}

TEST(ForwardChain, ElephantsAddsExactlyOneFact) {
  const KnowledgeBase kb = elephants();
  const KnowledgeBase out = forward_chain(kb);
  ASSERT_EQ(out.facts().size(), 2u);
  EXPECT_EQ(render(out.facts()[1].atom), "(color Clyde gray)");
  EXPECT_EQ(out.facts()[1].provenance, Provenance::kDerived);
  EXPECT_FALSE(out.saturation_truncated());
}

TEST(ForwardChain, FactsOnlyIsFixpoint) {
  const KnowledgeBase kb = load_kb("(p a)\n(q b)\n");
  EXPECT_EQ(forward_chain(kb), kb);
}

TEST(ForwardChain, TwoStepChainMatchesOracle) {
  const std::string text = "(forall (x) (if (a x) (b x)))\n(forall (x) (if (b x) (c x)))\n(a k)\n";
  oracle::HornProgram prog;
  const auto V = [](const char* n) { return Term::variable(n); };
  prog.facts.push_back(Atom{"a", {Term::constant("k")}});
  prog.rules.push_back({{"x"}, {Atom{"a", {V("x")}}}, Atom{"b", {V("x")}}});
  prog.rules.push_back({{"x"}, {Atom{"b", {V("x")}}}, Atom{"c", {V("x")}}});
  std::set<Atom> expected;
  for (const auto& [a, h] : oracle::naive_fixpoint(prog)) expected.insert(a);
  EXPECT_EQ(fact_atoms(forward_chain(load_kb(text))), expected);
  EXPECT_EQ(expected.size(), 3u);
}

TEST(ForwardChain, TruncationIsFlagged) {
  ChainConfig cfg;
  cfg.max_rounds = 3;
  const KnowledgeBase out = forward_chain(chain(6), cfg);
  EXPECT_TRUE(out.saturation_truncated());
  EXPECT_TRUE(out.stats().saturation_truncated);
  EXPECT_EQ(out.facts().size(), 4u);
  EXPECT_FALSE(forward_chain(chain(6)).saturation_truncated());
}

TEST(ForwardChain, RandomProgramsMatchNaiveOracle) {
  gen::Rng rng(42);
  for (int k = 0; k < 80; ++k) {
    const auto random = gen::random_horn_kb(rng);
    const KnowledgeBase kb = load_kb(random.text);
    const KnowledgeBase out = forward_chain(kb);
    const auto heights = oracle::naive_fixpoint(random.program);
    std::set<Atom> expected;
    for (const auto& [a, h] : heights) expected.insert(a);
    ASSERT_EQ(fact_atoms(out), expected) << random.text;

    // monotone, idempotent, bounded by the Herbrand base
    for (const auto& f : kb.facts()) EXPECT_TRUE(out.contains(f.atom));
    EXPECT_EQ(forward_chain(out), out);
    const auto base = oracle::herbrand_base(random.program);
    const std::set<Atom> herbrand(base.begin(), base.end());
    for (const auto& f : out.facts()) {
      EXPECT_TRUE(herbrand.count(f.atom));
      if (f.provenance == Provenance::kDerived) {
        EXPECT_EQ(f.generation, heights.at(f.atom) - 1);
      }
    }
  }
}

TEST(Entails, Shapes) {
  const KnowledgeBase kb = elephants();
  EXPECT_TRUE(entails(kb, parse("(color Clyde gray)")));
  EXPECT_TRUE(entails(kb, parse("(and (inst Clyde elephant) (color Clyde gray))")));
  EXPECT_FALSE(entails(kb, parse("(and (inst Clyde elephant) (color Clyde pink))")));
  EXPECT_TRUE(entails(kb, parse("(forall (y) (if (inst y elephant) (color y gray)))")));
  EXPECT_FALSE(entails(kb, parse("(forall (y) (if (color y gray) (inst y elephant)))")));
  EXPECT_FALSE(entails(KnowledgeBase{}, parse("(p a)")));
  EXPECT_THROW(entails(kb, parse("(or (p a) (q a))")), UnsupportedFormula);
}

TEST(ChainConfig, Validate) {
  ChainConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.depth_limit = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.depth_limit = 1;
  cfg.max_rounds = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace pcalc
