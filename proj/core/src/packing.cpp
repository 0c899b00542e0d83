#include "ctxbounds/packing.hpp"

#include <algorithm>
#include <string>

#include "ctxbounds/errors.hpp"

namespace ctxbounds {

FractionalPacking fractional_packing_number(const ContextHypergraph& h) {
  return fractional_packing_number(h, WeightVector::ones(h.num_vertices()));
}

FractionalPacking fractional_packing_number(const ContextHypergraph& h,
                                            const WeightVector& weights) {
  const int n = h.num_vertices();
  if (weights.size() != n)
    throw InputError("fractional_packing_number: weight vector has " +
                     std::to_string(weights.size()) + " entries, hypergraph has " +
                     std::to_string(n) + " vertices");
  LpProblem lp(n);
  for (int i = 0; i < n; ++i) {
    lp.objective[i] = weights[i];
    lp.upper[i] = 1.0;
  }
  for (const auto& c : h.contexts()) {
    std::vector<double> row(n, 0.0);
    for (int v : c) row[v] = 1.0;
    lp.add(std::move(row), Relation::kLessEqual, 1.0);
  }
  FractionalPacking out;
  out.lp = lp_solve(lp);
  if (out.lp.status != LpStatus::kOptimal)
    throw SolverError("fractional_packing_number: LP ended " +
                      std::string(to_string(out.lp.status)));
  out.value = out.lp.value;
  out.packing = out.lp.x;
  return out;
}

double packing_violation(const ContextHypergraph& h, std::span<const double> p) {
  if (static_cast<int>(p.size()) != h.num_vertices())
    throw InputError("fuzzy_membership: point has " + std::to_string(p.size()) +
                     " entries, hypergraph has " + std::to_string(h.num_vertices()) +
                     " vertices");
  double worst = 0.0;
  for (double x : p) worst = std::max({worst, -x, x - 1.0});
  for (const auto& c : h.contexts()) {
    double s = 0.0;
    for (int v : c) s += p[v];
    worst = std::max(worst, s - 1.0);
  }
  return worst;
}

bool fuzzy_membership(const ContextHypergraph& h, const ProbabilityAssignment& p, double tol) {
  return packing_violation(h, p.values()) <= tol;
}

}  // namespace ctxbounds
