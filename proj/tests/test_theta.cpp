#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "ctxbounds/bell.hpp"
#include "ctxbounds/errors.hpp"
#include "ctxbounds/independence.hpp"
#include "ctxbounds/packing.hpp"
#include "ctxbounds/reproduce/oracles.hpp"
#include "ctxbounds/theta.hpp"

using namespace ctxbounds;

namespace {

constexpr double kTol = 1e-7;

double cycle_theta(int n) {
  const double c = std::cos(std::numbers::pi / n);
  return n * c / (1.0 + c);
}

}  // namespace

TEST(LovaszTheta, Cycles) {
  EXPECT_NEAR(lovasz_theta(cycle_graph(5)).value, std::sqrt(5.0), kTol);
  EXPECT_NEAR(lovasz_theta(cycle_graph(7)).value, 3.31766721, 1e-7);
  for (int n = 5; n <= 13; n += 2) EXPECT_NEAR(lovasz_theta(cycle_graph(n)).value, cycle_theta(n), kTol) << n;
}

TEST(LovaszTheta, Extremes) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_NEAR(lovasz_theta(complete_graph(n)).value, 1.0, kTol);
    EXPECT_NEAR(lovasz_theta(Graph(n)).value, n, kTol);
  }
}

TEST(LovaszTheta, CertificateChecks) {
  const Graph g = cycle_graph(9);
  const auto r = lovasz_theta(g);
  EXPECT_EQ(r.certificate.status, SdpStatus::kOptimal);
  const auto v = check_theta_certificate(g, WeightVector::ones(9), r.certificate);
  EXPECT_LE(v.max_feasibility(), 1e-8);
  EXPECT_LE(v.gap, 1e-8);
  EXPECT_DOUBLE_EQ(r.value, r.certificate.dual_bound);
}

TEST(WeightedTheta, Examples) {
  EXPECT_NEAR(weighted_theta(cycle_graph(5), WeightVector::ones(5)).value, std::sqrt(5.0), kTol);
  EXPECT_NEAR(weighted_theta(cycle_graph(6), WeightVector::unit(6, 2)).value, 1.0, kTol);
  const auto f = chsh_functional();
  EXPECT_NEAR(weighted_theta(exclusivity_graph(f.scenario), f.weights()).value, 2.0 + std::sqrt(2.0), kTol);
}

TEST(WeightedTheta, ChshReducedToEightVertices) {
  const auto f = chsh_functional();
  const auto support = f.weights().support();
  ASSERT_EQ(support.size(), 8u);
  EXPECT_NEAR(lovasz_theta(induced_subgraph(exclusivity_graph(f.scenario), support)).value,
              2.0 + std::sqrt(2.0), kTol);
}

TEST(WeightedTheta, Scaling) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> w(0.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    const Graph g = oracle::random_graph(8, 0.4, rng);
    std::vector<double> weights(8);
    for (auto& x : weights) x = w(rng);
    const double base = weighted_theta(g, WeightVector(weights)).value;
    for (double c : {0.5, 3.0})
      EXPECT_NEAR(weighted_theta(g, WeightVector(weights).scaled(c)).value, c * base, 1e-6 * (1 + c * base));
  }
}

TEST(WeightedTheta, Hierarchy) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const Graph g = oracle::random_graph(n, 0.5, rng);
    std::vector<double> weights(n);
    for (auto& x : weights) x = w(rng);
    const WeightVector lambda(weights);
    const double c = weighted_independence(g, lambda);
    const double q = weighted_theta(g, lambda).value;
    const double gpt = fractional_packing_number(clique_hypergraph(g), lambda).value;
    EXPECT_LE(c, q + 1e-6);
    EXPECT_LE(q, gpt + 1e-6);
  }
}

TEST(ThetaBodyMembership, Examples) {
  const Graph c5 = cycle_graph(5);
  const auto kcbs = theta_body_membership(c5, ProbabilityAssignment(std::vector<double>(5, 1.0 / std::sqrt(5.0))));
  EXPECT_TRUE(kcbs.member);
  const auto half = theta_body_membership(c5, ProbabilityAssignment(std::vector<double>(5, 0.5)));
  EXPECT_FALSE(half.member);
  EXPECT_TRUE(half.certified);
  EXPECT_NEAR(half.scale_upper, 2.0 / std::sqrt(5.0), 1e-6);
  for (int k = 0; k < 5; ++k) {
    std::vector<double> e(5, 0.0);
    e[k] = 1.0;
    EXPECT_TRUE(theta_body_membership(c5, ProbabilityAssignment(e)).member);
  }
  EXPECT_TRUE(theta_body_membership(c5, ProbabilityAssignment::zeros(5)).member);
}

TEST(ThetaBodyMembership, NestedSetsOnRandomPoints) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const Graph g = oracle::random_graph(n, 0.5, rng);
    std::vector<double> p(n);
    for (auto& x : p) x = 0.7 * u(rng);
    const ProbabilityAssignment point(p);
    const bool c = classical_membership(g, point).member;
    const bool q = theta_body_membership(g, point).member;
    const bool gpt = fuzzy_membership(clique_hypergraph(g), point);
    if (c) {
      EXPECT_TRUE(q);
    }
    if (q) {
      EXPECT_TRUE(gpt);
    }
    checked += c + q + gpt;
  }
  EXPECT_GT(checked, 0);
}

TEST(ConstrainedTheta, NoConstraintsMatchesWeightedTheta) {
  const auto r = constrained_theta_max(cycle_graph(5), WeightVector::ones(5), {});
  EXPECT_EQ(r.status, SdpStatus::kOptimal);
  EXPECT_NEAR(r.value, std::sqrt(5.0), kTol);
}

TEST(ConstrainedTheta, ChshNormalized) {
  const auto f = chsh_functional();
  const Graph g = exclusivity_graph(f.scenario);
  const auto eqs = normalization_constraints(f.scenario);
  const auto r = constrained_theta_max(g, f.weights(), eqs);
  EXPECT_EQ(r.status, SdpStatus::kOptimal);
  EXPECT_NEAR(r.value, 2.0 + std::sqrt(2.0), kTol);
  const auto v = check_constrained_certificate(g, f.weights(), eqs, r);
  EXPECT_LE(v.max_feasibility(), 1e-8);
  EXPECT_LE(v.gap, 1e-8);
}

TEST(ConstrainedTheta, I3322Normalized) {
  const auto f = i3322_functional();
  const auto r = constrained_theta_max(exclusivity_graph(f.scenario), f.weights(),
                                       normalization_constraints(f.scenario), {.tol = 1e-10});
  EXPECT_EQ(r.status, SdpStatus::kOptimal);
  EXPECT_NEAR(r.value, 6.2515, 5e-5);
}

TEST(ConstrainedTheta, InfeasibleAndMalformed) {
  const Graph c5 = cycle_graph(5);
  // Two adjacent events cannot sum to 1.5.
  const auto r = constrained_theta_max(c5, WeightVector::ones(5), {{{0, 1}, 1.5}});
  EXPECT_EQ(r.status, SdpStatus::kInfeasible);
  EXPECT_THROW(constrained_theta_max(c5, WeightVector::ones(5), {{{0, 0}, 1.0}}), InputError);
  EXPECT_THROW(constrained_theta_max(c5, WeightVector::ones(5), {{{9}, 1.0}}), InputError);
}
