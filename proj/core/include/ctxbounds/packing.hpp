#pragma once

#include <vector>

#include "ctxbounds/graph.hpp"
#include "ctxbounds/lp.hpp"
#include "ctxbounds/vectors.hpp"

namespace ctxbounds {

/// Optimal fractional packing: 0 <= w_i <= 1 and Σ_{i∈C} w_i <= 1 for every
/// context C. Its value α*(Γ) (or λ·w for weighted objectives) is the bound
/// for generalized probabilistic models, since E_GPT(Γ) = E_F(Γ).
struct FractionalPacking {
  double value = 0.0;
  std::vector<double> packing;
  LpSolution lp;  // carries the dual certificate (a fractional cover)
};

FractionalPacking fractional_packing_number(const ContextHypergraph& h);
FractionalPacking fractional_packing_number(const ContextHypergraph& h, const WeightVector& weights);

/// Largest violation of the packing inequalities by p (0 when p ∈ E_F(Γ)).
double packing_violation(const ContextHypergraph& h, std::span<const double> p);

/// p ∈ E_GPT(Γ): checked directly against the defining inequalities of the
/// fractional packing polytope, with absolute slack `tol`.
bool fuzzy_membership(const ContextHypergraph& h, const ProbabilityAssignment& p,
                      double tol = 1e-9);

}  // namespace ctxbounds
