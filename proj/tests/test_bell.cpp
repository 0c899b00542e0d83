#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ctxbounds/bell.hpp"
#include "ctxbounds/errors.hpp"
#include "ctxbounds/reproduce/oracles.hpp"

using namespace ctxbounds;

namespace {

std::size_t brute_force_edges(const BellScenario& s) {
  return oracle::bell_exclusive_pairs(s).size();
}

BellFunctional single_event(double coefficient) {
  BellFunctional f;
  f.coefficients.assign(16, 0.0);
  f.coefficients[0] = coefficient;
  return f;
}

}  // namespace

TEST(ExclusivityGraph, Sizes) {
  const Graph chsh = exclusivity_graph(BellScenario{});
  EXPECT_EQ(chsh.num_vertices(), 16);
  EXPECT_EQ(chsh.num_edges(), 56u);
  EXPECT_EQ(chsh.num_edges(), brute_force_edges(BellScenario{}));
  const BellScenario s3322{2, 2, 3, 3};
  EXPECT_EQ(exclusivity_graph(s3322).num_vertices(), 36);
  EXPECT_EQ(exclusivity_graph(s3322).num_edges(), brute_force_edges(s3322));
  const Graph one = exclusivity_graph(BellScenario{1, 1, 1, 1});
  EXPECT_EQ(one.num_vertices(), 1);
  EXPECT_EQ(one.num_edges(), 0u);
  EXPECT_THROW(exclusivity_graph(BellScenario{0, 2, 2, 2}), InputError);
}

TEST(NormalizeFunctional, Examples) {
  const auto f = chsh_functional();
  const auto same = normalize_functional(f);
  EXPECT_EQ(same.coefficients, f.coefficients);
  EXPECT_EQ(same.offset, 0.0);

  const auto g = normalize_functional(single_event(-1.0));
  EXPECT_EQ(g.offset, -1.0);
  for (int e = 0; e < 16; ++e) {
    const double expected = (e == 1 || e == 2 || e == 3) ? 1.0 : 0.0;
    EXPECT_EQ(g.coefficients[e], expected) << e;
  }
}

TEST(NormalizeFunctional, ProbabilityFormGivesTable) {
  const auto table = i3322_functional();
  const auto norm = normalize_functional(i3322_probability_form());
  EXPECT_EQ(norm.coefficients, table.coefficients);
  EXPECT_DOUBLE_EQ(norm.offset, -6.0);
  EXPECT_DOUBLE_EQ(table.offset, -6.0);
  int ones = 0;
  for (double c : table.coefficients) ones += c == 1.0;
  EXPECT_EQ(ones, 20);
}

TEST(NormalizeFunctional, PreservesValueOnNormalizedBoxes) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const BellScenario s{2, 3, 2, 3};
  for (int t = 0; t < 100; ++t) {
    BellFunctional f;
    f.scenario = s;
    f.coefficients.resize(s.num_events());
    for (auto& c : f.coefficients) c = u(rng);
    f.offset = u(rng);
    const auto g = normalize_functional(f);
    EXPECT_TRUE(g.is_normalized());
    std::vector<double> p(s.num_events());
    for (int x = 0; x < s.num_x; ++x)
      for (int y = 0; y < s.num_y; ++y) {
        double total = 0.0;
        for (int e : s.block(x, y)) total += p[e] = 0.1 + std::abs(u(rng));
        for (int e : s.block(x, y)) p[e] /= total;
      }
    EXPECT_NEAR(f.evaluate(p), g.evaluate(p), 1e-12);
  }
}

TEST(ClassicalValue, Examples) {
  EXPECT_EQ(classical_value(chsh_functional()), 3.0);
  EXPECT_EQ(classical_value(i3322_functional()), 6.0);
  EXPECT_EQ(classical_value(single_event(1.0)), 1.0);
  EXPECT_EQ(classical_value(chsh_functional()), oracle::local_deterministic_value(chsh_functional()));
}

TEST(NosignallingValue, Examples) {
  const auto chsh = nosignalling_value(chsh_functional());
  EXPECT_NEAR(chsh.value, 4.0, 1e-9);
  EXPECT_NEAR(nosignalling_value(single_event(1.0)).value, 1.0, 1e-9);
  BellFunctional ones;
  ones.scenario = {2, 2, 3, 3};
  ones.coefficients.assign(36, 1.0);
  EXPECT_NEAR(nosignalling_value(ones).value, 9.0, 1e-9);
  EXPECT_NEAR(nosignalling_value(i3322_functional()).value,
              oracle::nosignalling_polytope_value(i3322_functional()), 1e-9);
}

TEST(PenaltyMethod, Chsh) {
  const auto r = quantum_value_penalty(chsh_functional());
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.all_optimal);
  EXPECT_EQ(r.values.size(), 4u);
  EXPECT_NEAR(r.value, 2.0 + std::sqrt(2.0), 1e-5);
}

TEST(PenaltyMethod, I3322AgreesWithDirect) {
  const auto f = i3322_functional();
  const auto penalty = quantum_value_penalty(f);
  const auto direct = quantum_value_direct(f);
  EXPECT_TRUE(penalty.monotone);
  EXPECT_NEAR(direct.value, 6.2515, 5e-5);
  EXPECT_NEAR(penalty.value, direct.value, 1e-4);
  EXPECT_GE(penalty.value, direct.value - 1e-6);
}

TEST(PenaltyMethod, UnconstrainedOnPopulatedVertices) {
  const auto f = i3322_functional();
  const Graph g = exclusivity_graph(f.scenario);
  const auto w = f.weights();
  const auto support = w.support();
  ASSERT_EQ(support.size(), 20u);
  EXPECT_NEAR(weighted_theta(induced_subgraph(g, support), WeightVector::ones(20)).value, 6.4114, 5e-5);
}

TEST(BuiltinScenario, Examples) {
  const auto chsh = builtin_scenario("chsh");
  ASSERT_TRUE(chsh.functional);
  EXPECT_EQ(chsh.functional->coefficients.size(), 16u);
  EXPECT_EQ(chsh.weights.support().size(), 8u);
  const auto i3322 = builtin_scenario("i3322");
  EXPECT_EQ(i3322.functional->coefficients.size(), 36u);
  EXPECT_EQ(i3322.weights.support().size(), 20u);
  const auto c7 = builtin_scenario("ncycle:7");
  EXPECT_EQ(c7.graph, cycle_graph(7));
  EXPECT_FALSE(c7.functional);
  EXPECT_EQ(builtin_scenario("kcbs5").graph, cycle_graph(5));
  EXPECT_THROW(builtin_scenario("nope"), InputError);
  EXPECT_THROW(builtin_scenario("ncycle:2"), InputError);
}

TEST(PrBox, Membership) {
  const BellScenario s;
  const auto box = pr_box(s);
  EXPECT_TRUE(nosignalling_membership(s, box));
  EXPECT_EQ(normalization_violation(s, box.values()), 0.0);
  EXPECT_EQ(signalling_violation(s, box.values()), 0.0);
  EXPECT_FALSE(normalized_quantum_membership(s, box).member);
  EXPECT_DOUBLE_EQ(chsh_functional().evaluate(box.values()), 4.0);
  EXPECT_THROW(pr_box(BellScenario{2, 2, 3, 3}), InputError);
}

TEST(PrBox, UniformBoxIsQuantum) {
  const BellScenario s;
  const ProbabilityAssignment uniform(std::vector<double>(16, 0.25));
  EXPECT_TRUE(normalized_quantum_membership(s, uniform).member);
  EXPECT_TRUE(nosignalling_membership(s, uniform));
  // Subnormalized tables fail the equality constraints.
  EXPECT_FALSE(nosignalling_membership(s, ProbabilityAssignment::zeros(16)));
}
