#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "pcalc/inference.hpp"

namespace pcalc {
namespace {

std::set<std::pair<Atom, Atom>> edge_atoms(const Network& net) {
  std::set<std::pair<Atom, Atom>> out;
  for (const auto& e : net.edges) out.emplace(net.nodes[e.from], net.nodes[e.to]);
  return out;
}

TEST(Network, Elephants) {
  const Network net = semantic_network(load_kb(fixtures::data("elephants.kb")));
  ASSERT_EQ(net.nodes.size(), 2u);
  ASSERT_EQ(net.edges.size(), 1u);
  EXPECT_EQ(render(net.nodes[net.edges[0].from]), "(inst Clyde elephant)");
  EXPECT_EQ(render(net.nodes[net.edges[0].to]), "(color Clyde gray)");
  EXPECT_EQ(net.edges[0].rule, 0u);
  EXPECT_TRUE(net.loop_nodes.empty());
}

TEST(Network, Empty) {
  const Network net = semantic_network(KnowledgeBase{});
  EXPECT_TRUE(net.nodes.empty());
  EXPECT_TRUE(net.edges.empty());
  EXPECT_TRUE(net.loop_nodes.empty());
}

TEST(Network, MutualRulesFormALoop) {
  const Network net = semantic_network(load_kb(fixtures::data("loops.kb")));
  ASSERT_EQ(net.nodes.size(), 2u);
  EXPECT_EQ(net.loop_nodes, (std::vector<std::size_t>{0, 1}));
  const std::set<std::pair<std::size_t, std::size_t>> edges{{0, 1}, {1, 0}};
  EXPECT_EQ(oracle::nodes_on_cycles(2, edges), (std::set<std::size_t>{0, 1}));
}

TEST(Network, SelfLoop) {
  const Network net = semantic_network(load_kb("(forall (x) (if (p x) (p x)))\n(p a)\n(q b)\n"));
  EXPECT_EQ(net.loop_nodes, std::vector<std::size_t>{0});
}

TEST(Network, RandomProgramsMatchOracle) {
  gen::Rng rng(99);
  for (int k = 0; k < 80; ++k) {
    const auto random = gen::random_horn_kb(rng);
    const Network net = semantic_network(load_kb(random.text));
    const auto fixpoint = oracle::naive_fixpoint(random.program);

    std::set<Atom> nodes(net.nodes.begin(), net.nodes.end());
    std::set<Atom> expected_nodes;
    for (const auto& [a, h] : fixpoint) expected_nodes.insert(a);
    ASSERT_EQ(nodes, expected_nodes) << random.text;

    std::set<std::pair<Atom, Atom>> expected_edges;
    for (const auto& g : oracle::ground_rules(random.program)) {
      const bool fires = std::all_of(g.body.begin(), g.body.end(), [&](const Atom& b) { return fixpoint.count(b); });
      if (!fires) continue;
      for (const auto& b : g.body) expected_edges.emplace(b, g.head);
    }
    ASSERT_EQ(edge_atoms(net), expected_edges) << random.text;

    for (std::size_t i = 1; i < net.edges.size(); ++i) {
      EXPECT_LT(std::make_pair(net.edges[i - 1].from, net.edges[i - 1].to),
                std::make_pair(net.edges[i].from, net.edges[i].to));
    }

    std::set<std::pair<std::size_t, std::size_t>> index_edges;
    for (const auto& e : net.edges) index_edges.emplace(e.from, e.to);
    const auto cycles = oracle::nodes_on_cycles(net.nodes.size(), index_edges);
    EXPECT_EQ(std::set<std::size_t>(net.loop_nodes.begin(), net.loop_nodes.end()), cycles) << random.text;
  }
}

}  // namespace
}  // namespace pcalc
