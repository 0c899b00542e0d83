#include <gtest/gtest.h>

#include <cmath>

#include "ctxbounds/errors.hpp"
#include "ctxbounds/sdp.hpp"

using namespace ctxbounds;

namespace {

// ϑ-SDP of a graph written out by hand: max <J, T>, tr T = 1, T_ij = 0 on edges.
SdpProblem theta_sdp(int n, const std::vector<std::pair<int, int>>& edges) {
  SdpProblem p({n});
  p.set_objective(0, Eigen::MatrixXd::Ones(n, n));
  SymMatrixEntries trace;
  for (int i = 0; i < n; ++i) trace.push_back({0, i, i, 1.0});
  p.add_constraint(trace, 1.0);
  for (auto [i, j] : edges) p.add_constraint({{0, i, j, 1.0}}, 0.0);
  return p;
}

}  // namespace

TEST(SdpSolve, OneByOne) {
  SdpProblem p({1});
  p.set_objective(0, Eigen::MatrixXd::Ones(1, 1));
  p.add_constraint({{0, 0, 0, 1.0}}, 1.0);
  const auto s = sdp_solve(p);
  EXPECT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.primal_value, 1.0, 1e-8);
  EXPECT_NEAR(s.dual_value, 1.0, 1e-8);
}

TEST(SdpSolve, ThetaOfK2) {
  const auto s = sdp_solve(theta_sdp(2, {{0, 1}}));
  EXPECT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.dual_value, 1.0, 1e-7);
}

TEST(SdpSolve, ThetaOfPentagon) {
  const auto s = sdp_solve(theta_sdp(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}));
  EXPECT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.primal_value, std::sqrt(5.0), 1e-7);
  EXPECT_NEAR(s.dual_value, std::sqrt(5.0), 1e-7);
  EXPECT_LE(s.relative_gap, 1e-8);
  EXPECT_GE(s.x[0].selfadjointView<Eigen::Lower>().eigenvalues().minCoeff(), -1e-9);
  EXPECT_GE(s.z[0].selfadjointView<Eigen::Lower>().eigenvalues().minCoeff(), -1e-9);
}

TEST(SdpSolve, TwoBlocks) {
  // max x + 2y over diag blocks with x + y = 1: optimum 2.
  SdpProblem p({1, 1});
  p.add_objective({{0, 0, 0, 1.0}, {1, 0, 0, 2.0}});
  p.add_constraint({{0, 0, 0, 1.0}, {1, 0, 0, 1.0}}, 1.0);
  const auto s = sdp_solve(p);
  EXPECT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.dual_value, 2.0, 1e-7);
}

TEST(SdpSolve, IterationCapGivesInaccurate) {
  SdpOptions opts;
  opts.max_iterations = 1;
  const auto s = sdp_solve(theta_sdp(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}), opts);
  EXPECT_EQ(s.status, SdpStatus::kInaccurate);
}

TEST(SdpSolve, InconsistentEqualities) {
  SdpProblem p({2});
  p.add_constraint({{0, 0, 0, 1.0}}, 1.0);
  p.add_constraint({{0, 0, 0, 2.0}}, 3.0);
  EXPECT_EQ(sdp_solve(p).status, SdpStatus::kInfeasible);
}

TEST(SdpProblem, RejectsBadInput) {
  SdpProblem p({2});
  Eigen::MatrixXd c(2, 2);
  c << 1, 2, 3, 4;
  EXPECT_THROW(p.set_objective(0, c), InputError);
  EXPECT_THROW(p.add_constraint({{0, 2, 0, 1.0}}, 0.0), InputError);
  EXPECT_THROW(p.add_constraint({{1, 0, 0, 1.0}}, 0.0), InputError);
}
