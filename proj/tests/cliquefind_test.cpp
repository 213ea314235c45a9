#include <gtest/gtest.h>

#include <cmath>

#include "oracles/oracles.hpp"
#include "wocd/cliquefind.hpp"
#include "wocd/synth.hpp"

using namespace wocd;

namespace {

Graph make(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges) {
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST(Priority, Examples) {
  EXPECT_DOUBLE_EQ(node_priority(make(2, {{0, 1}}), 0), 0.5);
  EXPECT_DOUBLE_EQ(node_priority(make(3, {{0, 1}, {1, 2}, {0, 2}}), 1), 1.0);
  EXPECT_DOUBLE_EQ(node_priority(make(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), 0), 0.8);
  EXPECT_DOUBLE_EQ(node_priority(make(3, {{0, 1}}), 2), 0.0);
  EXPECT_THROW(node_priority(make(2, {}), 2), std::out_of_range);
}

TEST(Salton, Examples) {
  const Graph tri = make(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_DOUBLE_EQ(salton_index(tri, 0, 1), 0.5);
  EXPECT_DOUBLE_EQ(salton_index(make(2, {{0, 1}}), 0, 1), 0.0);
  const Graph k4 = make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_DOUBLE_EQ(salton_index(k4, 0, 1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(salton_index(make(3, {{0, 1}}), 0, 2), 0.0);
  EXPECT_THROW(salton_index(tri, 1, 1), std::invalid_argument);
  EXPECT_THROW(salton_index(tri, 0, 3), std::out_of_range);
}

TEST(WeakClique, Examples) {
  const Graph tri = make(4, {{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(weak_clique(tri, 1, 2).members, (std::vector<NodeId>{1, 2, 3}));
  const Graph path = make(4, {{1, 2}, {2, 3}});
  EXPECT_EQ(weak_clique(path, 1, 2).members, (std::vector<NodeId>{1, 2}));
  const Graph k4 = make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(weak_clique(k4, 0, 1).members, (std::vector<NodeId>{0, 1, 2, 3}));
  EXPECT_THROW(weak_clique(path, 1, 3), std::invalid_argument);
}

TEST(Identify, TriangleTrace) {
  // ids 1..3 as in the hand trace; node 0 is isolated
  const auto set = identify_weak_cliques(make(4, {{1, 2}, {2, 3}, {1, 3}}));
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set.cliques[0], (CliqueRecord{1, 2, {1, 2, 3}}));
  EXPECT_EQ(set.cliques[1], (CliqueRecord{3, 1, {1, 2, 3}}));
}

TEST(Identify, PathTrace) {
  const auto set = identify_weak_cliques(make(4, {{1, 2}, {2, 3}}));
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set.cliques[0], (CliqueRecord{2, 1, {1, 2}}));
  EXPECT_EQ(set.cliques[1], (CliqueRecord{3, 2, {2, 3}}));
}

TEST(Identify, Edgeless) { EXPECT_EQ(identify_weak_cliques(make(5, {})).size(), 0u); }

TEST(Identify, MemberIndexIsInverse) {
  const auto set = identify_weak_cliques(random_graph(60, 200, 4));
  ASSERT_EQ(set.member_index.size(), 60u);
  std::size_t refs = 0;
  for (NodeId v = 0; v < 60; ++v) {
    for (std::size_t i : set.member_index[v]) {
      const auto& m = set.cliques[i].members;
      EXPECT_TRUE(std::binary_search(m.begin(), m.end(), v));
    }
    refs += set.member_index[v].size();
  }
  std::size_t total = 0;
  for (const auto& c : set.cliques) total += c.members.size();
  EXPECT_EQ(refs, total);
}

TEST(Identify, SeedsUsedOnce) {
  const Graph g = random_graph(80, 300, 11);
  const auto set = identify_weak_cliques(g);
  std::vector<int> starts(80, 0);
  for (const auto& c : set.cliques) {
    EXPECT_TRUE(g.has_edge(c.seed_u, c.seed_v));
    ++starts[c.seed_u];
  }
  for (int s : starts) EXPECT_LE(s, 1);
}

TEST(Identify, MatchesOracleOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const NodeId n = 5 + static_cast<NodeId>(seed % 20);
    const Graph g = random_graph(n, n * (n - 1) / 6, seed);
    oracle::Edges edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(u, v);
    const auto want = oracle::weak_cliques(n, edges);
    const auto got = identify_weak_cliques(g);
    ASSERT_EQ(got.size(), want.size()) << "seed " << seed;
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ(got.cliques[i].seed_u, want[i].u);
      EXPECT_EQ(got.cliques[i].seed_v, want[i].v);
      EXPECT_EQ(got.cliques[i].members, std::vector<NodeId>(want[i].members.begin(), want[i].members.end()));
    }
  }
}

TEST(Identify, Deterministic) {
  const Graph g = random_graph(200, 1000, 5);
  EXPECT_EQ(identify_weak_cliques(g), identify_weak_cliques(g));
}
