#include <gtest/gtest.h>

#include <random>

#include "ctxbounds/errors.hpp"
#include "ctxbounds/packing.hpp"
#include "ctxbounds/reproduce/oracles.hpp"

using namespace ctxbounds;

TEST(FractionalPacking, PentagonHalfWeights) {
  const auto r = fractional_packing_number(clique_hypergraph(cycle_graph(5)));
  EXPECT_NEAR(r.value, 2.5, 1e-9);
  for (double w : r.packing) EXPECT_NEAR(w, 0.5, 1e-9);
  EXPECT_LE(r.lp.relative_gap(), 1e-8);
}

TEST(FractionalPacking, CyclesOfEitherParity) {
  for (int n = 4; n <= 12; ++n)
    EXPECT_NEAR(fractional_packing_number(clique_hypergraph(cycle_graph(n))).value, n / 2.0, 1e-9) << n;
}

TEST(FractionalPacking, PairContextsOfCompleteGraph) {
  for (int n = 2; n <= 7; ++n) {
    std::vector<std::vector<int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    EXPECT_NEAR(fractional_packing_number(ContextHypergraph(n, pairs)).value, n / 2.0, 1e-9);
  }
}

TEST(FractionalPacking, MatchesRationalVertexEnumeration) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto h = oracle::random_hypergraph(n, 1 + t % 5, 4, rng);
    std::vector<std::int64_t> iw(n);
    std::vector<double> dw(n);
    for (int i = 0; i < n; ++i) dw[i] = static_cast<double>(iw[i] = 1 + static_cast<int>(rng() % 4));
    const auto lp = fractional_packing_number(h, WeightVector(dw));
    EXPECT_NEAR(lp.value, oracle::rational_packing_number(h, iw).to_double(), 1e-9);
    EXPECT_LE(packing_violation(h, lp.packing), 1e-9);
  }
}

TEST(FuzzyMembership, Examples) {
  const auto h = clique_hypergraph(cycle_graph(5));
  EXPECT_TRUE(fuzzy_membership(h, ProbabilityAssignment(std::vector<double>(5, 0.5))));
  EXPECT_FALSE(fuzzy_membership(h, ProbabilityAssignment({0.6, 0.6, 0, 0, 0})));
  EXPECT_NEAR(packing_violation(h, std::vector<double>{0.6, 0.6, 0, 0, 0}), 0.2, 1e-12);
  EXPECT_TRUE(fuzzy_membership(h, ProbabilityAssignment::zeros(5)));
  EXPECT_THROW(fuzzy_membership(h, ProbabilityAssignment::zeros(4)), InputError);
}
