#include "ctxbounds/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "ctxbounds/errors.hpp"

namespace ctxbounds {

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

double LpSolution::relative_gap() const {
  return std::abs(dual_value - value) / std::max(1.0, std::abs(value));
}

double lp_dual_objective(const LpProblem& problem, const std::vector<double>& duals,
                         double* dual_infeasibility) {
  const int n = problem.num_vars();
  double obj = 0.0, viol = 0.0;
  std::vector<double> reduced(problem.objective);
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) {
    const auto& row = problem.constraints[k];
    const double y = duals[k];
    obj += y * row.rhs;
    if (row.relation == Relation::kLessEqual) viol = std::max(viol, -y);
    if (row.relation == Relation::kGreaterEqual) viol = std::max(viol, y);
    for (int j = 0; j < n; ++j) reduced[j] -= y * row.coeffs[j];
  }
  for (int j = 0; j < n; ++j) {
    const double d = reduced[j];
    if (d > 0.0) {
      if (std::isfinite(problem.upper[j])) obj += d * problem.upper[j];
      else viol = std::max(viol, d);
    } else if (d < 0.0) {
      if (std::isfinite(problem.lower[j])) obj += d * problem.lower[j];
      else viol = std::max(viol, -d);
    }
  }
  if (dual_infeasibility) *dual_infeasibility = viol;
  return obj;
}

namespace {

void validate(const LpProblem& p) {
  const auto n = static_cast<std::size_t>(p.num_vars());
  if (p.lower.size() != n || p.upper.size() != n)
    throw InputError("lp: bound vectors do not match the number of variables");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(p.objective[j])) throw InputError("lp: non-finite objective coefficient");
    if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]) || p.lower[j] == LpProblem::kInf ||
        p.upper[j] == -LpProblem::kInf)
      throw InputError("lp: invalid bound on variable " + std::to_string(j));
  }
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    const auto& row = p.constraints[k];
    if (row.coeffs.size() != n)
      throw InputError("lp: constraint " + std::to_string(k) + " has " +
                       std::to_string(row.coeffs.size()) + " coefficients, expected " +
                       std::to_string(n));
    if (!std::isfinite(row.rhs)) throw InputError("lp: non-finite right-hand side");
    for (double a : row.coeffs)
      if (!std::isfinite(a)) throw InputError("lp: non-finite constraint coefficient");
  }
}

// How an original variable maps onto nonnegative standard-form columns.
enum class VarKind { kShift, kMirror, kFree };

struct StandardForm {
  Eigen::MatrixXd a;      // rows already sign-normalised so that b >= 0
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<Relation> rel;
  std::vector<double> flip;        // +1 / -1 applied to each row
  std::vector<int> origin;         // constraint index, or -1 for bound rows
  std::vector<VarKind> kind;
  std::vector<int> column;         // first standard column of each variable
  double objective_offset = 0.0;
};

StandardForm standardize(const LpProblem& p) {
  StandardForm sf;
  const int n = p.num_vars();
  int cols = 0;
  std::vector<double> anchor(n, 0.0);
  for (int j = 0; j < n; ++j) {
    sf.column.push_back(cols);
    if (std::isfinite(p.lower[j])) {
      sf.kind.push_back(VarKind::kShift);
      anchor[j] = p.lower[j];
      ++cols;
    } else if (std::isfinite(p.upper[j])) {
      sf.kind.push_back(VarKind::kMirror);
      anchor[j] = p.upper[j];
      ++cols;
    } else {
      sf.kind.push_back(VarKind::kFree);
      cols += 2;
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  auto map_row = [&](const std::vector<double>& coeffs, double b, Relation r, int origin) {
    std::vector<double> row(cols, 0.0);
    for (int j = 0; j < n; ++j) {
      const double a = coeffs[j];
      if (a == 0.0) continue;
      b -= a * anchor[j];
      switch (sf.kind[j]) {
        case VarKind::kShift: row[sf.column[j]] += a; break;
        case VarKind::kMirror: row[sf.column[j]] -= a; break;
        case VarKind::kFree:
          row[sf.column[j]] += a;
          row[sf.column[j] + 1] -= a;
          break;
      }
    }
    double f = 1.0;
    if (b < 0.0) {
      f = -1.0;
      b = -b;
      for (auto& v : row) v = -v;
      if (r == Relation::kLessEqual) r = Relation::kGreaterEqual;
      else if (r == Relation::kGreaterEqual) r = Relation::kLessEqual;
    }
    rows.push_back(std::move(row));
    rhs.push_back(b);
    sf.rel.push_back(r);
    sf.flip.push_back(f);
    sf.origin.push_back(origin);
  };

  for (std::size_t k = 0; k < p.constraints.size(); ++k)
    map_row(p.constraints[k].coeffs, p.constraints[k].rhs, p.constraints[k].relation,
            static_cast<int>(k));
  for (int j = 0; j < n; ++j) {
    if (sf.kind[j] == VarKind::kShift && std::isfinite(p.upper[j])) {
      std::vector<double> e(n, 0.0);
      e[j] = 1.0;
      map_row(e, p.upper[j], Relation::kLessEqual, -1);
    }
  }

  const int m = static_cast<int>(rows.size());
  sf.a.resize(m, cols);
  sf.b.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < cols; ++j) sf.a(i, j) = rows[i][j];
    sf.b(i) = rhs[i];
  }
  sf.c = Eigen::VectorXd::Zero(cols);
  for (int j = 0; j < n; ++j) {
    const double cj = p.objective[j];
    sf.objective_offset += cj * anchor[j];
    switch (sf.kind[j]) {
      case VarKind::kShift: sf.c(sf.column[j]) = cj; break;
      case VarKind::kMirror: sf.c(sf.column[j]) = -cj; break;
      case VarKind::kFree:
        sf.c(sf.column[j]) = cj;
        sf.c(sf.column[j] + 1) = -cj;
        break;
    }
  }
  return sf;
}

// Dense tableau over [structural | slack/surplus | artificial] columns.
class Tableau {
 public:
  Tableau(const StandardForm& sf, const LpOptions& opt) : opt_(opt) {
    m_ = static_cast<int>(sf.b.size());
    structural_ = static_cast<int>(sf.a.cols());
    int slack = 0, art = 0;
    for (auto r : sf.rel) {
      if (r != Relation::kEqual) ++slack;
      if (r != Relation::kLessEqual) ++art;
    }
    first_art_ = structural_ + slack;
    cols_ = first_art_ + art;
    t_ = Eigen::MatrixXd::Zero(m_, cols_ + 1);
    t_.leftCols(structural_) = sf.a;
    t_.col(cols_) = sf.b;
    basis_.assign(m_, -1);
    int s = structural_, a = first_art_;
    for (int i = 0; i < m_; ++i) {
      switch (sf.rel[i]) {
        case Relation::kLessEqual:
          t_(i, s) = 1.0;
          basis_[i] = s++;
          break;
        case Relation::kGreaterEqual:
          t_(i, s++) = -1.0;
          t_(i, a) = 1.0;
          basis_[i] = a++;
          break;
        case Relation::kEqual:
          t_(i, a) = 1.0;
          basis_[i] = a++;
          break;
      }
    }
    row_alive_.assign(m_, true);
  }

  // Phase 1: maximise -sum(artificials). Returns the artificial mass left.
  double phase_one(int& pivots) {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols_);
    for (int j = first_art_; j < cols_; ++j) cost(j) = -1.0;
    run(cost, /*allow_artificial=*/true, pivots);
    double mass = 0.0;
    for (int i = 0; i < m_; ++i)
      if (row_alive_[i] && basis_[i] >= first_art_) mass += t_(i, cols_);
    return mass;
  }

  // Pivots remaining (zero-valued) artificials out of the basis; rows where
  // that is impossible are linearly dependent and get dropped.
  void purge_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!row_alive_[i] || basis_[i] < first_art_) continue;
      int enter = -1;
      for (int j = 0; j < first_art_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) pivot(i, enter);
      else row_alive_[i] = false;
    }
  }

  // Returns false when unbounded.
  bool phase_two(const Eigen::VectorXd& c, int& pivots) {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols_);
    cost.head(structural_) = c;
    return run(cost, /*allow_artificial=*/false, pivots);
  }

  const std::vector<int>& basis() const { return basis_; }
  const std::vector<bool>& alive() const { return row_alive_; }
  int structural() const { return structural_; }
  int first_artificial() const { return first_art_; }

 private:
  bool run(const Eigen::VectorXd& cost, bool allow_artificial, int& pivots) {
    const int limit = allow_artificial ? cols_ : first_art_;
    while (true) {
      if (pivots >= opt_.max_pivots) throw SolverError("lp: pivot limit exceeded");
      // Reduced costs r_j = cost_j - cost_B · column_j, recomputed each pass.
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (is_basic(j)) continue;
        double r = cost(j);
        for (int i = 0; i < m_; ++i)
          if (row_alive_[i]) r -= cost(basis_[i]) * t_(i, j);
        if (r > opt_.optimality_tol * 1e-1) {
          enter = j;  // Bland: lowest eligible index
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (!row_alive_[i] || t_(i, enter) <= opt_.pivot_tol) continue;
        const double ratio = t_(i, cols_) / t_(i, enter);
        if (leave < 0 || ratio < best - 1e-12) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-12 && basis_[i] < basis_[leave]) {
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  bool is_basic(int j) const {
    for (int i = 0; i < m_; ++i)
      if (row_alive_[i] && basis_[i] == j) return true;
    return false;
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i < m_; ++i) {
      if (i == row || !row_alive_[i]) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  LpOptions opt_;
  int m_ = 0, structural_ = 0, first_art_ = 0, cols_ = 0;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  std::vector<bool> row_alive_;
};

}  // namespace

LpSolution lp_solve(const LpProblem& problem, const LpOptions& options) {
  validate(problem);
  const StandardForm sf = standardize(problem);
  const int n = problem.num_vars();
  const auto m = static_cast<int>(sf.b.size());

  LpSolution sol;
  sol.duals.assign(problem.constraints.size(), 0.0);
  sol.x.assign(n, 0.0);

  Tableau tab(sf, options);
  const double bscale = std::max(1.0, sf.b.size() ? sf.b.lpNorm<Eigen::Infinity>() : 0.0);
  if (tab.phase_one(sol.pivots) > options.feasibility_tol * bscale) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  tab.purge_artificials();
  if (!tab.phase_two(sf.c, sol.pivots)) {
    sol.status = LpStatus::kUnbounded;
    sol.value = LpProblem::kInf;
    return sol;
  }
  sol.status = LpStatus::kOptimal;

  // Recompute the basic solution and duals from the original data rather
  // than trusting the accumulated tableau.
  std::vector<int> rows, basic_cols;
  for (int i = 0; i < m; ++i) {
    if (!tab.alive()[i]) continue;
    rows.push_back(i);
    basic_cols.push_back(tab.basis()[i]);
  }
  const int r = static_cast<int>(rows.size());
  const int structural = tab.structural();
  auto column_of = [&](int i, int col) -> double {
    if (col < structural) return sf.a(i, col);
    // slack/surplus columns are numbered in row order
    int s = structural;
    for (int k = 0; k < m; ++k) {
      if (sf.rel[k] == Relation::kEqual) continue;
      if (s == col) return k == i ? (sf.rel[k] == Relation::kLessEqual ? 1.0 : -1.0) : 0.0;
      ++s;
    }
    return 0.0;
  };
  Eigen::MatrixXd bmat(r, r);
  Eigen::VectorXd bvec(r), cb(r);
  for (int a = 0; a < r; ++a) {
    bvec(a) = sf.b(rows[a]);
    cb(a) = basic_cols[a] < structural ? sf.c(basic_cols[a]) : 0.0;
    for (int k = 0; k < r; ++k) bmat(a, k) = column_of(rows[a], basic_cols[k]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(bmat);
  const Eigen::VectorXd xb = lu.solve(bvec);
  const Eigen::VectorXd y = bmat.transpose().fullPivLu().solve(cb);

  Eigen::VectorXd xs = Eigen::VectorXd::Zero(sf.a.cols());
  for (int a = 0; a < r; ++a)
    if (basic_cols[a] < structural) xs(basic_cols[a]) = std::max(0.0, xb(a));

  for (int j = 0; j < n; ++j) {
    const int c = sf.column[j];
    switch (sf.kind[j]) {
      case VarKind::kShift: sol.x[j] = problem.lower[j] + xs(c); break;
      case VarKind::kMirror: sol.x[j] = problem.upper[j] - xs(c); break;
      case VarKind::kFree: sol.x[j] = xs(c) - xs(c + 1); break;
    }
  }
  for (int a = 0; a < r; ++a) {
    const int orig = sf.origin[rows[a]];
    if (orig >= 0) sol.duals[orig] = y(a) * sf.flip[rows[a]];
  }

  sol.value = 0.0;
  for (int j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];
  double infeas = 0.0;
  for (const auto& row : problem.constraints) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += row.coeffs[j] * sol.x[j];
    const double d = lhs - row.rhs;
    if (row.relation == Relation::kLessEqual) infeas = std::max(infeas, d);
    else if (row.relation == Relation::kGreaterEqual) infeas = std::max(infeas, -d);
    else infeas = std::max(infeas, std::abs(d));
  }
  for (int j = 0; j < n; ++j) {
    infeas = std::max(infeas, problem.lower[j] - sol.x[j]);
    infeas = std::max(infeas, sol.x[j] - problem.upper[j]);
  }
  sol.primal_infeasibility = infeas;
  sol.dual_value = lp_dual_objective(problem, sol.duals, &sol.dual_infeasibility);
  return sol;
}

}  // namespace ctxbounds
