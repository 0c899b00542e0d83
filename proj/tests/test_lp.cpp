#include <gtest/gtest.h>

#include <cmath>

#include "ctxbounds/errors.hpp"
#include "ctxbounds/lp.hpp"

using namespace ctxbounds;

namespace {

void expect_certified(const LpProblem& p, const LpSolution& s) {
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_LE(s.primal_infeasibility, 1e-9);
  EXPECT_LE(s.relative_gap(), 1e-8);
  double dual_inf = 0.0;
  const double dual = lp_dual_objective(p, s.duals, &dual_inf);
  EXPECT_LE(dual_inf, 1e-9);
  EXPECT_NEAR(dual, s.value, 1e-8 * std::max(1.0, std::abs(s.value)));
}

}  // namespace

TEST(LpSolve, SingleVariable) {
  LpProblem p(1);
  p.objective = {1.0};
  p.add({1.0}, Relation::kLessEqual, 1.0);
  const auto s = lp_solve(p);
  expect_certified(p, s);
  EXPECT_DOUBLE_EQ(s.value, 1.0);
}

TEST(LpSolve, DegenerateOptimum) {
  LpProblem p(2);
  p.objective = {1.0, 1.0};
  p.add({1.0, 1.0}, Relation::kLessEqual, 1.0);
  const auto s = lp_solve(p);
  expect_certified(p, s);
  EXPECT_DOUBLE_EQ(s.value, 1.0);
  // Deterministic basis: repeated solves agree exactly.
  EXPECT_EQ(lp_solve(p).x, s.x);
}

TEST(LpSolve, EqualitiesBoundsAndFreeVariables) {
  // max x - y s.t. x + y = 2, -1 <= y <= 3, x free, x <= 10
  LpProblem p(2);
  p.objective = {1.0, -1.0};
  p.lower = {-LpProblem::kInf, -1.0};
  p.upper = {10.0, 3.0};
  p.add({1.0, 1.0}, Relation::kEqual, 2.0);
  const auto s = lp_solve(p);
  expect_certified(p, s);
  EXPECT_NEAR(s.value, 4.0, 1e-12);
  EXPECT_NEAR(s.x[0], 3.0, 1e-12);
  EXPECT_NEAR(s.x[1], -1.0, 1e-12);
}

TEST(LpSolve, GreaterEqualAndNegativeRhs) {
  // min x + 2y  s.t. x + y >= 3, x - y <= -1
  LpProblem p(2);
  p.objective = {-1.0, -2.0};
  p.add({1.0, 1.0}, Relation::kGreaterEqual, 3.0);
  p.add({1.0, -1.0}, Relation::kLessEqual, -1.0);
  const auto s = lp_solve(p);
  expect_certified(p, s);
  EXPECT_NEAR(-s.value, 5.0, 1e-12);
}

TEST(LpSolve, InfeasibleAndUnbounded) {
  LpProblem inf(1);
  inf.add({1.0}, Relation::kGreaterEqual, 2.0);
  inf.add({1.0}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(lp_solve(inf).status, LpStatus::kInfeasible);
  LpProblem unb(2);
  unb.objective = {1.0, 0.0};
  unb.add({-1.0, 1.0}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(lp_solve(unb).status, LpStatus::kUnbounded);
}

TEST(LpSolve, RejectsMalformed) {
  LpProblem p(2);
  p.add({1.0}, Relation::kLessEqual, 1.0);
  EXPECT_THROW(lp_solve(p), InputError);
  LpProblem q(1);
  q.objective = {std::nan("")};
  EXPECT_THROW(lp_solve(q), InputError);
}

TEST(LpSolve, CyclingProneInstance) {
  // Beale's example, which cycles under the largest-coefficient rule.
  LpProblem p(4);
  p.objective = {0.75, -150.0, 0.02, -6.0};
  p.add({0.25, -60.0, -0.04, 9.0}, Relation::kLessEqual, 0.0);
  p.add({0.5, -90.0, -0.02, 3.0}, Relation::kLessEqual, 0.0);
  p.add({0.0, 0.0, 1.0, 0.0}, Relation::kLessEqual, 1.0);
  const auto s = lp_solve(p);
  expect_certified(p, s);
  EXPECT_NEAR(s.value, 0.05, 1e-12);
}
