#include <gtest/gtest.h>

#include <random>

#include "ctxbounds/bell.hpp"
#include "ctxbounds/errors.hpp"
#include "ctxbounds/independence.hpp"
#include "ctxbounds/reproduce/oracles.hpp"

using namespace ctxbounds;

TEST(IndependenceNumber, Examples) {
  EXPECT_EQ(independence_number(cycle_graph(5)), 2);
  EXPECT_EQ(independence_number(complete_graph(7)), 1);
  EXPECT_EQ(independence_number(cycle_graph(9)), oracle::brute_force_independence_number(cycle_graph(9)));
  EXPECT_EQ(independence_number(cycle_graph(9)), 4);
  EXPECT_EQ(independence_number(Graph(0)), 0);
  EXPECT_EQ(independence_number(Graph(6)), 6);
}

TEST(IndependenceNumber, WitnessIsIndependentOfReportedSize) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_graph(1 + static_cast<int>(rng() % 30), 0.25, rng);
    const auto s = maximum_independent_set(g);
    EXPECT_TRUE(g.is_independent(s.vertices));
    EXPECT_EQ(static_cast<double>(s.vertices.size()), s.weight);
  }
}

TEST(WeightedIndependence, Examples) {
  EXPECT_EQ(weighted_independence(cycle_graph(5), WeightVector::ones(5)), 2.0);
  EXPECT_EQ(weighted_independence(cycle_graph(7), WeightVector::unit(7, 3)), 1.0);
  const auto f = chsh_functional();
  EXPECT_EQ(weighted_independence(exclusivity_graph(f.scenario), f.weights()), 3.0);
  EXPECT_THROW(WeightVector({1.0, -0.5}), InputError);
  EXPECT_THROW(weighted_independence(cycle_graph(5), WeightVector::ones(4)), InputError);
}

TEST(WeightedIndependence, AgreesWithUnweightedAndBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(0.0, 3.0);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + static_cast<int>(rng() % 16);
    const Graph g = oracle::random_graph(n, 0.1 + 0.8 * (t % 7) / 6.0, rng);
    EXPECT_EQ(static_cast<double>(independence_number(g)), weighted_independence(g, WeightVector::ones(n)));
    EXPECT_EQ(independence_number(g), oracle::brute_force_independence_number(g));
    std::vector<double> weights(n);
    for (auto& x : weights) x = w(rng);
    const auto best = maximum_weight_independent_set(g, WeightVector(weights));
    EXPECT_TRUE(g.is_independent(best.vertices));
    EXPECT_NEAR(best.weight, oracle::brute_force_independence(g, weights), 1e-12);
  }
}

TEST(ClassicalMembership, Examples) {
  const Graph c5 = cycle_graph(5);
  const auto in = classical_membership(c5, ProbabilityAssignment({0.5, 0.5, 0, 0, 0}));
  EXPECT_TRUE(in.member);
  double total = 0.0;
  std::vector<double> rebuilt(5, 0.0);
  for (const auto& term : in.combination) {
    EXPECT_TRUE(c5.is_independent(term.independent_set));
    total += term.weight;
    for (int v : term.independent_set) rebuilt[v] += term.weight;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_NEAR(rebuilt[0], 0.5, 1e-9);
  EXPECT_NEAR(rebuilt[1], 0.5, 1e-9);

  const ProbabilityAssignment half(std::vector<double>(5, 0.5));
  const auto out = classical_membership(c5, half);
  EXPECT_FALSE(out.member);
  // The separator holds on every independent set and cuts off p.
  for (const auto& s : enumerate_independent_sets(c5, 1000)) {
    double lhs = 0.0;
    for (int v : s) lhs += out.separator[v];
    EXPECT_LE(lhs, out.separator_bound + 1e-9);
  }
  EXPECT_GT(dot(out.separator, half.values()) - out.separator_bound, 1e-9);

  EXPECT_TRUE(classical_membership(c5, ProbabilityAssignment::zeros(5)).member);
  EXPECT_TRUE(classical_membership(complete_graph(30), ProbabilityAssignment::zeros(30)).member);
}

TEST(ClassicalMembership, TooLarge) {
  const ProbabilityAssignment p(std::vector<double>(30, 0.01));
  EXPECT_THROW(classical_membership(Graph(30), p), InputError);
}
