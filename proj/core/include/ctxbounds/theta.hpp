#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ctxbounds/graph.hpp"
#include "ctxbounds/sdp.hpp"
#include "ctxbounds/vectors.hpp"

namespace ctxbounds {

struct ThetaOptions {
  double tol = 1e-8;              // relative duality gap requested from the SDP solver
  double feasibility_tol = 1e-9;  // relative primal / dual residuals
  /// Zero-weight vertices cannot raise λ·p (E_QM is a corner), so they are
  /// deleted before solving unless this is false.
  bool drop_zero_weights = true;
  int max_iterations = 200;
};

/// Primal/dual certificate pair for the weighted theta SDPs
///
///   max tr(ΛT)  s.t. T ⪰ 0, tr T = 1, T_ij = 0 for i ~ j
///   min s       s.t. sI ⪰ S, S_ij = Λ_ij whenever i ≁ j or i = j
///
/// with Λ_ij = sqrt(λ_i λ_j). Matrices are indexed by `vertices`.
struct ThetaCertificate {
  std::vector<int> vertices;
  Eigen::MatrixXd primal;      // T
  Eigen::MatrixXd dual;        // S
  double dual_bound = 0.0;     // s = λ_max(S)
  double primal_value = 0.0;   // tr(ΛT)
  double dual_value = 0.0;     // == dual_bound
  double relative_gap = 0.0;   // (dual - primal) / max(1, |dual|)
  SdpStatus status = SdpStatus::kInaccurate;
  int iterations = 0;
};

/// Value is the dual-certified upper bound s.
struct ThetaResult {
  double value = 0.0;
  ThetaCertificate certificate;
};

/// ϑ(G): the maximum quantum value Σ⟨P_i⟩ over models of the exclusivity graph.
ThetaResult lovasz_theta(const Graph& g, const ThetaOptions& options = {});

/// λ(E_QM(Γ)), the weighted Lovász number.
ThetaResult weighted_theta(const Graph& g, const WeightVector& weights,
                           const ThetaOptions& options = {});

/// Feasibility violations of a certificate, recomputed from scratch.
struct CertificateViolations {
  double primal_psd = 0.0;      // max(0, -λ_min(T))
  double primal_trace = 0.0;    // |tr T - 1|
  double primal_edges = 0.0;    // max |T_ij| over edges
  double dual_psd = 0.0;        // max(0, -λ_min(sI - S))
  double dual_pattern = 0.0;    // max |S_ij - Λ_ij| off the edge set
  double gap = 0.0;             // s - tr(ΛT), relative to max(1, s)

  double max_feasibility() const;
};

CertificateViolations check_theta_certificate(const Graph& g, const WeightVector& weights,
                                              const ThetaCertificate& certificate);

struct ThetaBodyOptions {
  double tol = 1e-8;  // ℓ∞ slack: accept p when a point of E_QM lies this close
  int max_iterations = 200;
};

/// Membership in the theta body E_QM(Γ) = TH, decided through the gauge SDP
///
///   t* = max t  s.t. t·p has a moment matrix M ⪰ 0 indexed by {0} ∪ supp(p),
///        M_00 = 1, M_ii = M_0i, M_ij = 0 for i ~ j.
///
/// Since TH is convex and downward closed, p ∈ TH iff t* >= 1. The verdict
/// uses the primal lower bound: accepted when (1 - t_lower)·max p <= tol,
/// so an accepted point always has a certified point of TH within tol.
struct ThetaBodyMembership {
  bool member = false;
  /// True when the verdict does not depend on solver accuracy: either the
  /// primal certifies membership or the dual bound certifies exclusion.
  bool certified = false;
  double scale_lower = 0.0;  // t from the primal moment matrix
  double scale_upper = 0.0;  // dual bound on t*
  double distance = 0.0;     // ℓ∞ distance from p to the certified point
  /// Moment matrix (n+1)x(n+1) of the certified point min(1, t_lower)·p;
  /// row/column 0 is the constant, row i+1 is vertex i.
  Eigen::MatrixXd moment_matrix;
  SdpStatus status = SdpStatus::kInaccurate;
};

ThetaBodyMembership theta_body_membership(const Graph& g, const ProbabilityAssignment& p,
                                          const ThetaBodyOptions& options = {});

/// Σ_{i ∈ vertices} p_i = target.
struct LinearEquality {
  std::vector<int> vertices;
  double target = 1.0;
};

struct ConstrainedThetaResult {
  double value = 0.0;          // dual objective (upper bound)
  double primal_value = 0.0;   // λ·p at the returned point
  double relative_gap = 0.0;
  std::vector<double> point;   // optimal p
  Eigen::MatrixXd moment_matrix;
  /// Dual certificate: with A_k the constraint matrices (trace, diagonal
  /// links, edges, equalities, in that order) and C = diag(0, λ), every
  /// feasible moment matrix lies in span(face_basis) and
  /// face_basisᵀ (Σ_k y_k A_k - C) face_basis ⪰ 0, so b·y bounds λ·p.
  Eigen::MatrixXd face_basis;
  Eigen::VectorXd multipliers;
  SdpStatus status = SdpStatus::kInaccurate;
  int iterations = 0;
};

/// max λ·p over the theta body intersected with the hyperplanes. The SDP is
/// solved on the face where it is strictly feasible: an LP over the clique
/// polytope (which contains the theta body) finds every clique whose sum is
/// forced to 1 and every vertex forced to 0, and each gives a kernel vector
/// of all feasible moment matrices. Infeasible constraint sets give status
/// kInfeasible.
ConstrainedThetaResult constrained_theta_max(const Graph& g, const WeightVector& weights,
                                             const std::vector<LinearEquality>& equalities,
                                             const ThetaOptions& options = {});


struct ConstrainedCertificateViolations {
  double primal_psd = 0.0;          // max(0, -λ_min(M))
  double primal_constraints = 0.0;  // worst |<A_k, M> - b_k|
  double dual_psd = 0.0;            // max(0, -λ_min(Vᵀ(Σ y A - C)V)) / max(1, max|Z_ij|)
  double dual_value_mismatch = 0.0; // |b·y - value|
  double gap = 0.0;                 // (b·y - λ·p) / max(1, |b·y|)
  double max_feasibility() const;
};
/// Recomputes every residual of a constrained_theta_max result from the
/// problem data.
ConstrainedCertificateViolations check_constrained_certificate(
    const Graph& g, const WeightVector& weights, const std::vector<LinearEquality>& equalities,
    const ConstrainedThetaResult& result);

}  // namespace ctxbounds
