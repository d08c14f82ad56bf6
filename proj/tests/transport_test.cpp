#include <gtest/gtest.h>

#include <random>

#include "forman/error.hpp"
#include "forman/transport.hpp"
#include "transport_oracles.hpp"

namespace forman {
namespace {

std::vector<double> random_masses(std::mt19937_64& rng, std::size_t k, bool allow_zero) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> m(k);
  double total = 0.0;
  for (double& x : m) {
    x = allow_zero && u(rng) < 0.25 ? 0.0 : u(rng) + 0.01;
    total += x;
  }
  if (total == 0.0) m[0] = total = 1.0;
  for (double& x : m) x /= total;
  return m;
}

std::vector<double> random_positions(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> x(k);
  for (double& v : x) v = u(rng);
  return x;
}

TEST(GroundDistanceTest, Examples) {
  const std::vector<double> a{0.0, 1.0};
  const std::vector<double> b{2.0};
  const auto d = ground_distance(a, b);
  ASSERT_EQ(d.rows(), 2);
  ASSERT_EQ(d.cols(), 1);
  EXPECT_EQ(d(0, 0), 2.0);
  EXPECT_EQ(d(1, 0), 1.0);
  const std::vector<double> zero{0.0};
  const std::vector<double> three{3.0};
  EXPECT_EQ(ground_distance(zero, three)(0, 0), 3.0);
  const auto same = ground_distance(a, a);
  EXPECT_EQ(same.diagonal().norm(), 0.0);
}

TEST(SolveTransportTest, IdenticalDistributions) {
  const std::vector<double> x{0.0, 1.0, 2.0};
  const std::vector<double> m{0.2, 0.5, 0.3};
  const auto plan = solve_transport(m, m, ground_distance(x, x));
  EXPECT_EQ(plan.cost, 0.0);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(plan.flow(i, i), m[i]);
}

TEST(SolveTransportTest, PointMasses) {
  const std::vector<double> zero{0.0};
  const std::vector<double> one{1.0};
  const std::vector<double> mass{1.0};
  const auto plan = solve_transport(mass, mass, ground_distance(zero, one));
  EXPECT_EQ(plan.cost, 1.0);
  EXPECT_EQ(plan.emd, 1.0);
}

TEST(SolveTransportTest, HalfSplit) {
  const std::vector<double> x1{0.0, 1.0};
  const std::vector<double> m1{0.5, 0.5};
  const std::vector<double> x2{0.0};
  const std::vector<double> m2{1.0};
  const auto plan = solve_transport(m1, m2, ground_distance(x1, x2));
  EXPECT_DOUBLE_EQ(plan.emd, 0.5);
  EXPECT_DOUBLE_EQ(testing::brute_force_transport_cost(m1, m2, ground_distance(x1, x2)), 0.5);
}

TEST(SolveTransportTest, UnbalancedMovesSmallerTotal) {
  const std::vector<double> supply{1.0, 1.0};
  const std::vector<double> demand{1.0};
  const std::vector<double> x1{0.0, 4.0};
  const std::vector<double> x2{1.0};
  const auto plan = solve_transport(supply, demand, ground_distance(x1, x2));
  EXPECT_DOUBLE_EQ(plan.flow.sum(), 1.0);
  EXPECT_DOUBLE_EQ(plan.cost, 1.0);
  EXPECT_DOUBLE_EQ(plan.emd, 1.0);
  EXPECT_LE(plan.flow.row(1).sum(), 1.0);
}

TEST(SolveTransportTest, MarginalsRespected) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m1 = random_masses(rng, 7, true);
    const auto m2 = random_masses(rng, 9, true);
    const auto plan =
        solve_transport(m1, m2, ground_distance(random_positions(rng, 7), random_positions(rng, 9)));
    EXPECT_TRUE((plan.flow.array() >= 0.0).all());
    for (int i = 0; i < 7; ++i) EXPECT_NEAR(plan.flow.row(i).sum(), m1[i], 1e-12);
    for (int j = 0; j < 9; ++j) EXPECT_NEAR(plan.flow.col(j).sum(), m2[j], 1e-12);
    EXPECT_NEAR(plan.cost, (plan.flow.array() * plan.ground.array()).sum(), 1e-12);
  }
}

TEST(SolveTransportTest, MatchesBruteForceOnSmallInstances) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(1, 4);
  std::uniform_real_distribution<double> cost(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int k1 = std::min(size(rng), 3);
    const int k2 = size(rng);
    const auto m1 = random_masses(rng, k1, true);
    const auto m2 = random_masses(rng, k2, true);
    Eigen::MatrixXd ground(k1, k2);
    for (int i = 0; i < k1; ++i)
      for (int j = 0; j < k2; ++j) ground(i, j) = cost(rng);
    EXPECT_NEAR(solve_transport(m1, m2, ground).cost,
                testing::brute_force_transport_cost(m1, m2, ground), 1e-9);
  }
}

TEST(SolveTransportTest, Errors) {
  const std::vector<double> bad{0.5, -0.1};
  const std::vector<double> good{1.0};
  const Eigen::MatrixXd d2 = Eigen::MatrixXd::Ones(2, 1);
  try {
    solve_transport(bad, good, d2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleMasses);
  }
  try {
    solve_transport(good, good, d2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  const std::vector<double> zeros{0.0, 0.0};
  EXPECT_THROW(solve_transport(zeros, good, d2), Error);
}

TEST(SolveTransport1dTest, MatchesCdfClosedForm) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const int k1 = size(rng);
    const int k2 = size(rng);
    const auto x1 = random_positions(rng, k1);
    const auto x2 = random_positions(rng, k2);
    const auto m1 = random_masses(rng, k1, true);
    const auto m2 = random_masses(rng, k2, true);
    EXPECT_NEAR(solve_transport_1d(x1, m1, x2, m2).emd, testing::cdf_l1_distance(x1, m1, x2, m2),
                1e-9);
  }
}

TEST(SolveTransport1dTest, AgreesWithSimplex) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x1 = random_positions(rng, 10);
    const auto x2 = random_positions(rng, 8);
    const auto m1 = random_masses(rng, 10, false);
    const auto m2 = random_masses(rng, 8, false);
    EXPECT_NEAR(solve_transport_1d(x1, m1, x2, m2).cost,
                solve_transport(m1, m2, ground_distance(x1, x2)).cost, 1e-9);
  }
}

TEST(SolveTransport1dTest, SymmetricExactly) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x1 = random_positions(rng, 6);
    const auto x2 = random_positions(rng, 9);
    const auto m1 = random_masses(rng, 6, true);
    const auto m2 = random_masses(rng, 9, true);
    EXPECT_EQ(solve_transport_1d(x1, m1, x2, m2).emd, solve_transport_1d(x2, m2, x1, m1).emd);
  }
}

TEST(SolveTransport1dTest, UnequalTotalsRejected) {
  const std::vector<double> x{0.0};
  const std::vector<double> a{1.0};
  const std::vector<double> b{2.0};
  EXPECT_THROW(solve_transport_1d(x, a, x, b), Error);
}

}  // namespace
}  // namespace forman
