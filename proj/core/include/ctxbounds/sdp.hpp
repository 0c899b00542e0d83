#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

namespace ctxbounds {

/// One coefficient of a block-diagonal symmetric matrix. An off-diagonal
/// entry (row != col) stands for both (row, col) and (col, row).
struct SymEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

using SymMatrixEntries = std::vector<SymEntry>;

/// Standard-form semidefinite program over X = diag(X_1, ..., X_B):
///
///   maximize   <C, X>
///   subject to <A_k, X> = b_k,   X ⪰ 0,
///
/// with dual  minimize b·y  s.t.  Z = Σ_k y_k A_k - C ⪰ 0.
class SdpProblem {
 public:
  SdpProblem() = default;
  explicit SdpProblem(std::vector<int> block_sizes);

  const std::vector<int>& block_sizes() const { return block_sizes_; }
  int num_blocks() const { return static_cast<int>(block_sizes_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }

  /// Objective block (dense). Throws InputError if not symmetric.
  void set_objective(int block, Eigen::MatrixXd c);
  void add_objective(const SymMatrixEntries& entries);
  void add_constraint(SymMatrixEntries entries, double rhs);

  const std::vector<Eigen::MatrixXd>& objective() const { return objective_; }
  const std::vector<SymMatrixEntries>& constraints() const { return constraints_; }
  const std::vector<double>& rhs() const { return rhs_; }

 private:
  void check_entry(const SymEntry& e) const;

  std::vector<int> block_sizes_;
  std::vector<Eigen::MatrixXd> objective_;
  std::vector<SymMatrixEntries> constraints_;
  std::vector<double> rhs_;
};

enum class SdpStatus {
  kOptimal,     // all stopping criteria met
  kInaccurate,  // iteration cap or numerical breakdown; best iterate returned
  kInfeasible,  // inconsistent linear equalities detected in presolve
};

std::string_view to_string(SdpStatus s);

struct SdpOptions {
  double gap_tol = 1e-8;        // relative duality gap
  double feasibility_tol = 1e-9;  // relative primal / dual residuals
  int max_iterations = 200;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::kInaccurate;
  double primal_value = 0.0;  // <C, X>
  double dual_value = 0.0;    // b·y
  std::vector<Eigen::MatrixXd> x;
  std::vector<Eigen::MatrixXd> z;
  Eigen::VectorXd y;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
};

/// Infeasible-start primal-dual path-following method with Nesterov-Todd
/// scaling and Mehrotra predictor-corrector steps, dense linear algebra.
/// Linearly dependent constraints are removed first; if their right-hand
/// sides are inconsistent the status is kInfeasible.
SdpSolution sdp_solve(const SdpProblem& problem, const SdpOptions& options = {});

/// <A, X> for a sparse symmetric A.
double inner(const SymMatrixEntries& a, const std::vector<Eigen::MatrixXd>& x);

}  // namespace ctxbounds
