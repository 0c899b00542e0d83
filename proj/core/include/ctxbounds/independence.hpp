#pragma once

#include <optional>
#include <vector>

#include "ctxbounds/graph.hpp"
#include "ctxbounds/vectors.hpp"

namespace ctxbounds {

/// A maximum (weight) independent set together with its weight.
struct IndependentSet {
  std::vector<int> vertices;  // sorted
  double weight = 0.0;
};

/// α(G) with a witness: exact branch-and-bound that branches on the vertex of
/// highest remaining degree and prunes with a greedy clique-cover bound.
IndependentSet maximum_independent_set(const Graph& g);

int independence_number(const Graph& g);

/// max Σ_{i∈S} λ_i over independent sets S; this is λ(E_C), the classical
/// noncontextual bound. Zero-weight vertices are removed before the search.
IndependentSet maximum_weight_independent_set(const Graph& g, const WeightVector& weights);

double weighted_independence(const Graph& g, const WeightVector& weights);

/// Every independent set of g (including the empty set), each sorted.
/// Throws InputError if more than `limit` sets exist.
std::vector<std::vector<int>> enumerate_independent_sets(const Graph& g, std::size_t limit);

struct ClassicalMembershipOptions {
  double tol = 1e-9;            // ℓ∞ distance accepted as "inside"
  int max_vertices = 24;        // enumeration guard, counted on supp(p)
  std::size_t max_sets = 50000;
};

struct ConvexTerm {
  double weight = 0.0;
  std::vector<int> independent_set;
};

/// Decision for p ∈ E_C(Γ) = conv{indicators of independent sets}.
///
/// When accepted, `combination` is a convex combination of independent-set
/// indicators within `distance` (ℓ∞) of p. When rejected, `separator` and
/// `separator_bound` satisfy separator·σ <= separator_bound for every
/// independent set σ while separator·p - separator_bound = distance > tol.
struct ClassicalMembership {
  bool member = false;
  double distance = 0.0;
  std::vector<ConvexTerm> combination;
  std::vector<double> separator;
  double separator_bound = 0.0;
};

/// Decided by LP over all independent-set indicators of the support of p.
/// Throws InputError("instance too large") past the configured limits.
ClassicalMembership classical_membership(const Graph& g, const ProbabilityAssignment& p,
                                         const ClassicalMembershipOptions& options = {});

}  // namespace ctxbounds
