#include <gtest/gtest.h>

#include <array>
#include <random>

#include "ctxbounds/errors.hpp"
#include "ctxbounds/graph.hpp"
#include "ctxbounds/reproduce/oracles.hpp"

using namespace ctxbounds;

namespace {

bool two_colourable(const Graph& g) {
  // Brute force over all colourings.
  const int n = g.num_vertices();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& e : g.edges()) ok = ok && ((mask >> e.u & 1u) != (mask >> e.v & 1u));
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST(Graph, RejectsSelfLoopsDuplicatesAndRange) {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 3}};
  EXPECT_THROW(Graph(3, loop), InputError);
  EXPECT_THROW(Graph(3, dup), InputError);
  EXPECT_THROW(Graph(3, range), InputError);
}

TEST(Graph, AdjacencyIsSymmetric) {
  const Graph g = circulant_graph(8, std::array<int, 2>{1, 4});
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) EXPECT_EQ(g.adjacent(i, j), g.adjacent(j, i));
}

TEST(CycleGraph, Pentagon) {
  const Graph g = cycle_graph(5);
  EXPECT_EQ(g.num_vertices(), 5);
  EXPECT_EQ(g.num_edges(), 5u);
  for (int v = 0; v < 5; ++v) EXPECT_EQ(g.degree(v), 2);
}

TEST(CycleGraph, TriangleAndEightCycle) {
  EXPECT_EQ(cycle_graph(3).num_edges(), 3u);
  const Graph c8 = cycle_graph(8);
  EXPECT_EQ(c8.num_edges(), 8u);
  EXPECT_TRUE(two_colourable(c8));
  EXPECT_FALSE(two_colourable(cycle_graph(7)));
  EXPECT_THROW(cycle_graph(2), InputError);
}

TEST(CirculantGraph, Examples) {
  const Graph g = circulant_graph(8, std::array<int, 2>{1, 4});
  EXPECT_EQ(g.num_vertices(), 8);
  EXPECT_EQ(g.num_edges(), 12u);
  EXPECT_EQ(circulant_graph(5, std::array<int, 1>{1}), cycle_graph(5));
  EXPECT_EQ(circulant_graph(6, std::array<int, 3>{1, 2, 3}), complete_graph(6));
  EXPECT_EQ(complete_graph(6).num_edges(), 15u);
  EXPECT_THROW(circulant_graph(8, std::array<int, 1>{5}), InputError);
  EXPECT_THROW(circulant_graph(8, std::array<int, 1>{0}), InputError);
}

TEST(CirculantGraph, OffsetOneIsCycle) {
  for (int n = 3; n <= 20; ++n) EXPECT_EQ(circulant_graph(n, std::array<int, 1>{1}), cycle_graph(n));
}

TEST(InducedSubgraph, Examples) {
  const Graph g = cycle_graph(5);
  const Graph path = induced_subgraph(g, std::array<int, 3>{0, 1, 2});
  EXPECT_EQ(path.num_vertices(), 3);
  EXPECT_EQ(path.num_edges(), 2u);
  EXPECT_EQ(induced_subgraph(g, std::array<int, 5>{0, 1, 2, 3, 4}), g);
  EXPECT_THROW(induced_subgraph(g, std::array<int, 2>{0, 0}), InputError);
  EXPECT_THROW(induced_subgraph(g, std::array<int, 1>{7}), InputError);
}

TEST(InducedSubgraph, RelabelsInSortedOrder) {
  const Graph g = cycle_graph(5);
  const Graph h = induced_subgraph(g, std::array<int, 3>{4, 0, 2});
  // sorted subset {0, 2, 4}: 0-4 is the only edge, becoming 0-2.
  EXPECT_EQ(h.num_edges(), 1u);
  EXPECT_TRUE(h.adjacent(0, 2));
}

TEST(InducedSubgraph, Nesting) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const Graph g = oracle::random_graph(12, 0.4, rng);
    std::vector<int> s1, s2_global;
    for (int v = 0; v < 12; ++v)
      if (rng() % 3 != 0) s1.push_back(v);
    for (int v : s1)
      if (rng() % 2 == 0) s2_global.push_back(v);
    std::vector<int> s2_local;
    for (int v : s2_global)
      s2_local.push_back(static_cast<int>(std::find(s1.begin(), s1.end(), v) - s1.begin()));
    EXPECT_EQ(induced_subgraph(g, s2_global), induced_subgraph(induced_subgraph(g, s1), s2_local));
  }
}

TEST(AdjacencyGraph, Examples) {
  const ContextHypergraph pent(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  EXPECT_EQ(adjacency_graph(pent), cycle_graph(5));
  EXPECT_EQ(adjacency_graph(ContextHypergraph(3, {{0, 1, 2}})), complete_graph(3));
  std::vector<std::vector<int>> pairs;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) pairs.push_back({i, j});
  EXPECT_EQ(adjacency_graph(ContextHypergraph(6, pairs)), complete_graph(6));
}

TEST(ContextHypergraph, KeepsMaximalContextsOnly) {
  const ContextHypergraph h(4, {{0, 1}, {0, 1, 2}, {3}, {2, 1}});
  EXPECT_EQ(h.contexts(), (std::vector<std::vector<int>>{{0, 1, 2}, {3}}));
  EXPECT_THROW(ContextHypergraph(3, {{}}), InputError);
  EXPECT_THROW(ContextHypergraph(3, {{0, 3}}), InputError);
  EXPECT_THROW(ContextHypergraph(3, {{0, 0}}), InputError);
  EXPECT_THROW(ContextHypergraph(3, {{0, 1}, {1, 0}}), InputError);
}

TEST(CliqueHypergraph, Examples) {
  const auto c5 = clique_hypergraph(cycle_graph(5));
  EXPECT_EQ(c5.contexts().size(), 5u);
  for (const auto& c : c5.contexts()) EXPECT_EQ(c.size(), 2u);
  const auto k4 = clique_hypergraph(complete_graph(4));
  EXPECT_EQ(k4.contexts(), (std::vector<std::vector<int>>{{0, 1, 2, 3}}));
  const auto circ = clique_hypergraph(circulant_graph(8, std::array<int, 2>{1, 4}));
  EXPECT_EQ(circ.contexts().size(), 12u);
  for (const auto& c : circ.contexts()) EXPECT_EQ(c.size(), 2u);
}

TEST(CliqueHypergraph, MatchesBruteForceMaximalCliques) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(1 + static_cast<int>(rng() % 11), 0.5, rng);
    const int n = g.num_vertices();
    std::vector<std::vector<int>> expected;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) s.push_back(i);
      if (!g.is_clique(s)) continue;
      bool maximal = true;
      for (int v = 0; v < n && maximal; ++v) {
        if (mask >> v & 1u) continue;
        auto bigger = s;
        bigger.push_back(v);
        maximal = !g.is_clique(bigger);
      }
      if (maximal) expected.push_back(s);
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(maximal_cliques(g), expected);
  }
}

TEST(CliqueHypergraph, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Graph g = oracle::random_graph(1 + static_cast<int>(rng() % 20), 0.3 + 0.1 * (t % 5), rng);
    EXPECT_EQ(adjacency_graph(clique_hypergraph(g)), g);
  }
}
