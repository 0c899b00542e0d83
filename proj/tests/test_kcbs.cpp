#include <gtest/gtest.h>

#include <cmath>

#include "ctxbounds/errors.hpp"
#include "ctxbounds/kcbs.hpp"
#include "ctxbounds/theta.hpp"

using namespace ctxbounds;

TEST(KcbsVectors, Orthonormal) {
  const auto rep = kcbs_vectors();
  ASSERT_EQ(rep.vectors.size(), 5u);
  EXPECT_EQ(rep.dimension(), 3);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(rep.vectors[i].norm(), 1.0, 1e-12);
    EXPECT_NEAR(rep.vectors[i].dot(rep.vectors[(i + 1) % 5]), 0.0, 1e-12);
  }
  double sum = 0.0;
  for (const auto& v : rep.vectors) sum += std::pow(rep.handle.dot(v), 2);
  EXPECT_NEAR(sum, std::sqrt(5.0), 1e-9);
}

TEST(VerifyOr, Examples) {
  EXPECT_TRUE(verify_or(cycle_graph(5), kcbs_vectors()).valid);
  OrthonormalRepresentation same;
  same.handle = Eigen::Vector3d::UnitZ();
  same.vectors.assign(5, Eigen::Vector3d::UnitX());
  const auto bad = verify_or(cycle_graph(5), same);
  EXPECT_FALSE(bad.valid);
  EXPECT_NEAR(bad.max_violation, 1.0, 1e-12);
  OrthonormalRepresentation basis;
  basis.handle = Eigen::Vector3d::UnitX();
  basis.vectors = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
  EXPECT_TRUE(verify_or(Graph(3), basis).valid);
  EXPECT_THROW(verify_or(cycle_graph(4), basis), InputError);
}

TEST(OrValue, Examples) {
  const auto v = or_value(kcbs_vectors());
  EXPECT_NEAR(v.handle_value, std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(v.optimized_value, std::sqrt(5.0), 1e-9);
  OrthonormalRepresentation single;
  single.handle = Eigen::Vector2d(0.6, 0.8);
  single.vectors = {single.handle};
  EXPECT_NEAR(or_value(single).handle_value, 1.0, 1e-12);
  OrthonormalRepresentation basis;
  basis.handle = Eigen::Vector3d(1, 2, 2) / 3.0;
  basis.vectors = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
  EXPECT_NEAR(or_value(basis).handle_value, 1.0, 1e-12);
  EXPECT_NEAR(or_value(basis).optimized_value, 1.0, 1e-12);
}

TEST(OddCycleBound, Values) {
  const auto b5 = odd_cycle_quantum_bound(5);
  EXPECT_NEAR(b5.beta, std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(b5.beta_prime, 5.0 - 4.0 * std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(odd_cycle_quantum_bound(10001).beta / 10001.0, 0.5, 1e-6);
  for (int n = 5; n <= 11; n += 2)
    EXPECT_NEAR(odd_cycle_quantum_bound(n).beta, lovasz_theta(cycle_graph(n)).value, 1e-7);
  EXPECT_THROW(odd_cycle_quantum_bound(6), InputError);
  EXPECT_THROW(odd_cycle_quantum_bound(3), InputError);
}

TEST(CorrelationForm, Examples) {
  EXPECT_DOUBLE_EQ(correlation_form(2.0, 5), -3.0);
  EXPECT_NEAR(correlation_form(std::sqrt(5.0), 5), 5.0 - 4.0 * std::sqrt(5.0), 1e-12);
  for (int n = 3; n < 9; ++n) EXPECT_DOUBLE_EQ(correlation_form(0.0, n), n);
}
