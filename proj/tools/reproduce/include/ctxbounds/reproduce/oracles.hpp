#pragma once

// Independent reference computations. Nothing here calls the solvers in
// core/ for the quantity it checks: every routine is brute force, exact
// arithmetic, or a different formulation of the same optimum.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "ctxbounds/bell.hpp"
#include "ctxbounds/graph.hpp"

namespace ctxbounds::oracle {

/// Maximum weight of an independent set by scanning all 2^n subsets.
/// Requires n <= 24.
double brute_force_independence(const Graph& g, const std::vector<double>& weights);
int brute_force_independence_number(const Graph& g);

/// Edges of the Bell exclusivity graph from the event semantics: two events
/// are exclusive when some party measured the same setting in both and got
/// different outcomes. Returns pairs (i, j), i < j.
std::vector<Edge> bell_exclusive_pairs(const BellScenario& s);

/// max over deterministic local strategies a(x), b(y) of Σ λ_{a(x) b(y) x y}.
/// Excludes the offset.
double local_deterministic_value(const BellFunctional& f);

/// max λ·p over the no-signalling polytope written with marginal equalities
/// (p >= 0, normalization, Alice and Bob marginals independent of the remote
/// setting). Returns the value and writes an optimal box.
double nosignalling_polytope_value(const BellFunctional& f, std::vector<double>* box = nullptr);

/// max λ·p over conv{independent sets} ∩ {normalization}, as an LP whose
/// variables are the convex weights of the independent sets.
double normalized_classical_polytope_value(const BellFunctional& f);

/// Exact rational number with int64 numerator and positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Fractional packing number by enumerating every vertex of the polytope
/// {0 <= w <= 1, Σ_{i∈C} w_i <= 1} with exact rational elimination.
/// Requires n <= 6.
Rational rational_packing_number(const ContextHypergraph& h, const std::vector<std::int64_t>& weights);

/// Position of circulant(8, {1, 4}) vertex k inside the induced subgraph on
/// the eight CHSH winning events, taken in increasing event order.
inline constexpr std::array<int, 8> kChshCirculantOrder{0, 5, 6, 2, 1, 4, 7, 3};

/// Erdős–Rényi graph G(n, density) from the given engine.
Graph random_graph(int n, double density, std::mt19937_64& rng);

/// Random hypergraph on n vertices with `contexts` contexts of size 1..max_size.
ContextHypergraph random_hypergraph(int n, int contexts, int max_size, std::mt19937_64& rng);

}  // namespace ctxbounds::oracle
