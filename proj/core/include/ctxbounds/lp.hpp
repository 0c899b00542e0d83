#pragma once

#include <limits>
#include <string_view>
#include <vector>

namespace ctxbounds {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<double> coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// maximize c·x  s.t.  each constraint row,  lower <= x <= upper.
///
/// Minimisation is expressed by negating the objective. Bounds default to
/// x >= 0; use -infinity / +infinity for free directions.
struct LpProblem {
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  LpProblem() = default;
  explicit LpProblem(int num_vars)
      : objective(num_vars, 0.0), lower(num_vars, 0.0), upper(num_vars, kInf) {}

  int num_vars() const { return static_cast<int>(objective.size()); }

  void add(std::vector<double> coeffs, Relation rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
  }

  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(LpStatus s);

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-8;
  double pivot_tol = 1e-11;
  int max_pivots = 200000;
};

/// Result plus a dual certificate. `duals[k]` is the multiplier of
/// constraint k: >= 0 for <= rows, <= 0 for >= rows, free for equalities.
/// Bound multipliers are implied by the reduced costs c - Aᵀy.
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> duals;
  /// Objective of the dual certificate; an upper bound on every feasible
  /// primal value when dual_infeasibility is ~0.
  double dual_value = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int pivots = 0;

  /// |dual_value - value| / max(1, |value|).
  double relative_gap() const;
};

/// Two-phase dense-tableau primal simplex with Bland's anti-cycling rule.
/// Throws InputError on dimension mismatches or non-finite data.
LpSolution lp_solve(const LpProblem& problem, const LpOptions& options = {});

/// Evaluates the dual certificate `duals` against `problem`: returns the dual
/// objective and writes the maximum sign/reduced-cost violation.
double lp_dual_objective(const LpProblem& problem, const std::vector<double>& duals,
                         double* dual_infeasibility);

}  // namespace ctxbounds
