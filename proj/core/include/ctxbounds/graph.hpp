#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctxbounds/vertex_set.hpp"

namespace ctxbounds {

struct Edge {
  int u = 0;
  int v = 0;
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph on vertices 0..n-1 with a dense bit-matrix
/// adjacency. Immutable once constructed.
///
/// In the contextuality setting vertices are events and an edge joins two
/// events that are compatible and mutually exclusive (the exclusivity graph).
class Graph {
 public:
  Graph() = default;
  /// Edgeless graph on n vertices.
  explicit Graph(int n);
  /// Throws InputError on self-loops, duplicate pairs (in either
  /// orientation) or endpoints outside [0, n).
  Graph(int n, std::span<const Edge> edges);

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return num_edges_; }

  bool adjacent(int i, int j) const { return adj_[i].contains(j); }
  const VertexSet& neighborhood(int v) const { return adj_[v]; }
  int degree(int v) const { return adj_[v].count(); }

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  bool is_independent(std::span<const int> vertices) const;
  bool is_clique(std::span<const int> vertices) const;

  Graph complement() const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_ = 0;
  std::size_t num_edges_ = 0;
  std::vector<VertexSet> adj_;
};

/// Vertex set plus a family of contexts (sets of mutually compatible events).
/// Only inclusion-maximal contexts are stored; every subset of a stored
/// context is implicitly a context as well. Contexts are kept sorted and the
/// family is ordered lexicographically, so equal hypergraphs compare equal.
class ContextHypergraph {
 public:
  ContextHypergraph() = default;
  /// Throws InputError on empty contexts, out-of-range vertices, repeated
  /// vertices within a context, or repeated contexts. Contexts strictly
  /// contained in another one are dropped.
  ContextHypergraph(int n, std::vector<std::vector<int>> contexts);

  int num_vertices() const { return n_; }
  const std::vector<std::vector<int>>& contexts() const { return contexts_; }

  bool operator==(const ContextHypergraph&) const = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> contexts_;
};

Graph cycle_graph(int n);
Graph complete_graph(int n);
/// Edges {i, i+d mod n} for every offset d, 1 <= d <= n/2.
Graph circulant_graph(int n, std::span<const int> offsets);

/// Subgraph induced on `subset`, relabelled so that the k-th smallest member
/// of `subset` becomes vertex k.
Graph induced_subgraph(const Graph& g, std::span<const int> subset);

/// i ~ j iff some context contains both.
Graph adjacency_graph(const ContextHypergraph& h);

/// Hypergraph of maximal cliques (Bron-Kerbosch with pivoting). Exponential
/// in the worst case; intended for graphs of a few dozen vertices.
ContextHypergraph clique_hypergraph(const Graph& g);

/// All maximal cliques of g, each sorted, in lexicographic order.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

}  // namespace ctxbounds
