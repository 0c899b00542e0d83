#include "ctxbounds/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ctxbounds/errors.hpp"

namespace ctxbounds {

namespace {

void check_vertex(int v, int n, const char* what) {
  if (v < 0 || v >= n)
    throw InputError(std::string(what) + ": vertex " + std::to_string(v) + " out of range [0, " +
                     std::to_string(n) + ")");
}

}  // namespace

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw InputError("graph: negative vertex count");
  adj_.assign(static_cast<std::size_t>(n), VertexSet(n));
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (const auto& e : edges) {
    check_vertex(e.u, n, "graph edge");
    check_vertex(e.v, n, "graph edge");
    if (e.u == e.v) throw InputError("graph edge: self-loop at vertex " + std::to_string(e.u));
    if (adj_[e.u].contains(e.v))
      throw InputError("graph edge: duplicate pair [" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + "]");
    adj_[e.u].insert(e.v);
    adj_[e.v].insert(e.u);
    ++num_edges_;
  }
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (int u = 0; u < n_; ++u)
    for (int v = adj_[u].next(u + 1); v >= 0; v = adj_[u].next(v + 1)) out.push_back({u, v});
  return out;
}

bool Graph::is_independent(std::span<const int> vertices) const {
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (vertices[a] == vertices[b] || adjacent(vertices[a], vertices[b])) return false;
  return true;
}

bool Graph::is_clique(std::span<const int> vertices) const {
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (!adjacent(vertices[a], vertices[b])) return false;
  return true;
}

Graph Graph::complement() const {
  std::vector<Edge> es;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) es.push_back({u, v});
  return Graph(n_, es);
}

ContextHypergraph::ContextHypergraph(int n, std::vector<std::vector<int>> contexts) : n_(n) {
  if (n < 0) throw InputError("hypergraph: negative vertex count");
  for (auto& c : contexts) {
    if (c.empty()) throw InputError("hypergraph: empty context");
    for (int v : c) check_vertex(v, n, "hypergraph context");
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      throw InputError("hypergraph: repeated vertex in a context");
  }
  std::sort(contexts.begin(), contexts.end());
  if (std::adjacent_find(contexts.begin(), contexts.end()) != contexts.end())
    throw InputError("hypergraph: duplicate context");

  for (std::size_t i = 0; i < contexts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < contexts.size() && !dominated; ++j) {
      if (i == j || contexts[j].size() <= contexts[i].size()) continue;
      dominated = std::includes(contexts[j].begin(), contexts[j].end(), contexts[i].begin(),
                                contexts[i].end());
    }
    if (!dominated) contexts_.push_back(contexts[i]);
  }
}

Graph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle_graph: need n >= 3, got " + std::to_string(n));
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Graph(n, es);
}

Graph complete_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return Graph(n, es);
}

Graph circulant_graph(int n, std::span<const int> offsets) {
  if (n < 1) throw InputError("circulant_graph: need n >= 1");
  std::set<Edge> es;
  for (int d : offsets) {
    if (d < 1 || d > n / 2)
      throw InputError("circulant_graph: offset " + std::to_string(d) + " outside [1, " +
                       std::to_string(n / 2) + "]");
    for (int i = 0; i < n; ++i) {
      int j = (i + d) % n;
      es.insert({std::min(i, j), std::max(i, j)});
    }
  }
  std::vector<Edge> list(es.begin(), es.end());
  return Graph(n, list);
}

Graph induced_subgraph(const Graph& g, std::span<const int> subset) {
  std::vector<int> s(subset.begin(), subset.end());
  for (int v : s) check_vertex(v, g.num_vertices(), "induced_subgraph");
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw InputError("induced_subgraph: repeated vertex in subset");
  std::vector<Edge> es;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (g.adjacent(s[a], s[b])) es.push_back({static_cast<int>(a), static_cast<int>(b)});
  return Graph(static_cast<int>(s.size()), es);
}

Graph adjacency_graph(const ContextHypergraph& h) {
  std::set<Edge> es;
  for (const auto& c : h.contexts())
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) es.insert({c[a], c[b]});
  std::vector<Edge> list(es.begin(), es.end());
  return Graph(h.num_vertices(), list);
}

namespace {

void bron_kerbosch(const Graph& g, std::vector<int>& r, VertexSet p, VertexSet x,
                   std::vector<std::vector<int>>& out) {
  if (p.empty() && x.empty()) {
    auto c = r;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
    return;
  }
  // Tomita pivot: maximise |P ∩ N(u)| over u in P ∪ X.
  const VertexSet px = p | x;
  int pivot = -1, best = -1;
  for (int u = px.first(); u >= 0; u = px.next(u + 1)) {
    int c = p.intersection_count(g.neighborhood(u));
    if (c > best) best = c, pivot = u;
  }
  const VertexSet candidates = p - g.neighborhood(pivot);
  for (int v = candidates.first(); v >= 0; v = candidates.next(v + 1)) {
    r.push_back(v);
    bron_kerbosch(g, r, p & g.neighborhood(v), x & g.neighborhood(v), out);
    r.pop_back();
    p.erase(v);
    x.insert(v);
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<int>> out;
  if (g.num_vertices() == 0) return out;
  std::vector<int> r;
  bron_kerbosch(g, r, VertexSet::full(g.num_vertices()), VertexSet(g.num_vertices()), out);
  std::sort(out.begin(), out.end());
  return out;
}

ContextHypergraph clique_hypergraph(const Graph& g) {
  return ContextHypergraph(g.num_vertices(), maximal_cliques(g));
}

}  // namespace ctxbounds
