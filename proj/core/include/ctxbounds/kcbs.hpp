#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ctxbounds/graph.hpp"

namespace ctxbounds {

/// Real unit vectors |v_i⟩, one per vertex, orthogonal across edges, plus a
/// handle state |ψ⟩.
struct OrthonormalRepresentation {
  std::vector<Eigen::VectorXd> vectors;
  Eigen::VectorXd handle;

  int dimension() const { return static_cast<int>(handle.size()); }
};

/// The pentagon representation in R³: the five vectors point from the
/// origin to the vertices of a regular pentagon lifted by sqrt(cos(π/5)),
/// normalised, with ψ = (0, 0, 1).
OrthonormalRepresentation kcbs_vectors();

struct OrVerification {
  bool valid = false;
  double max_violation = 0.0;  // worst |‖v‖ - 1| or |⟨v_i|v_j⟩| on an edge
};

/// Throws InputError when vector count or dimensions disagree.
OrVerification verify_or(const Graph& g, const OrthonormalRepresentation& rep, double tol = 1e-10);

struct OrValue {
  double handle_value = 0.0;     // Σ |⟨ψ|v_i⟩|²
  double optimized_value = 0.0;  // ‖Σ |v_i⟩⟨v_i|‖, the best ψ for these vectors
};

OrValue or_value(const OrthonormalRepresentation& rep);

struct OddCycleBound {
  double beta = 0.0;        // ϑ(C_n) = n cos(π/n) / (1 + cos(π/n))
  double beta_prime = 0.0;  // Σ⟨A_i A_{i+1}⟩ bound, = n - 4β
};

/// Closed-form quantum bounds for the n-cycle, n odd and >= 5.
OddCycleBound odd_cycle_quantum_bound(int n);

/// Σ⟨A_i A_{i+1}⟩ for A_i = 2P_i - 1 when Σ⟨P_i⟩ = beta. Valid only when
/// neighbouring events are exclusive (⟨P_i P_{i+1}⟩ = 0).
double correlation_form(double beta, int n);

}  // namespace ctxbounds
