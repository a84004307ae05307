#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "helpers.hpp"
#include "swapshop/error.hpp"
#include "swapshop/localsearch.hpp"
#include "swapshop/oracle.hpp"

using namespace swapshop;

TEST(Oracle, PathKMedian) {
  const auto one = exact_k_clustering(fixtures::path3(), 1);
  EXPECT_EQ(one.optimum, (Solution{1}));
  EXPECT_DOUBLE_EQ(one.cost, 2.0);
  EXPECT_EQ(one.enumerated, 3u);
  const auto two = exact_k_clustering(fixtures::path3(), 2);
  EXPECT_DOUBLE_EQ(two.cost, 1.0);
  EXPECT_EQ(two.optimum, (Solution{0, 1}));
  EXPECT_EQ(two.enumerated, 6u);
}

TEST(Oracle, SmallGridKMeans) {
  auto inst = generate_grid(2, 2);
  inst.p = 2;
  const auto res = exact_k_clustering(inst, 1);
  EXPECT_EQ(res.optimum, (Solution{0}));
  EXPECT_DOUBLE_EQ(res.cost, 6.0);
}

TEST(Oracle, PathUfl) {
  const auto expensive = exact_ufl(fixtures::path3(10.0));
  EXPECT_EQ(expensive.optimum, (Solution{1}));
  EXPECT_DOUBLE_EQ(expensive.cost, 12.0);
  const auto cheap = exact_ufl(fixtures::path3(0.1));
  EXPECT_EQ(cheap.optimum, (Solution{0, 1, 2}));
  EXPECT_NEAR(cheap.cost, 0.3, 1e-15);
  const auto unit = exact_ufl(fixtures::path3(1.0));
  EXPECT_EQ(unit.optimum, (Solution{0, 1}));
  EXPECT_DOUBLE_EQ(unit.cost, 3.0);
}

TEST(Oracle, MatchesBitmaskBruteForce) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    Instance inst = t % 2 ? generate_random_graph(3 + rng() % 6, rng() % 5, rng())
                          : generate_random_euclid(3 + rng() % 6, 2, rng());
    inst.p = 1 + rng() % 2;
    const int k = 1 + rng() % 3;
    const auto ref = fixtures::brute_force(inst, k);
    const auto got = exact_k_clustering(inst, k);
    EXPECT_EQ(got.optimum, ref.best);
    EXPECT_EQ(got.cost, ref.cost);
    inst.opening_cost = 0.5 * (rng() % 8);
    const int n = static_cast<int>(inst.candidates.size());
    const auto uref = fixtures::brute_force(inst, n);
    const auto ugot = exact_ufl(inst);
    EXPECT_EQ(ugot.optimum, uref.best);
    EXPECT_EQ(ugot.cost, uref.cost);
  }
}

TEST(Oracle, SerialAndParallelAgree) {
  auto inst = generate_grid(4, 4, WeightModel::Random, 2);
  OracleOptions serial;
  serial.parallel = false;
  const auto a = exact_k_clustering(inst, 3, serial);
  const auto b = exact_k_clustering(inst, 3);
  EXPECT_EQ(a.optimum, b.optimum);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.enumerated, b.enumerated);
  inst.opening_cost = 4.0;
  const auto c = exact_ufl(inst, serial);
  const auto d = exact_ufl(inst);
  EXPECT_EQ(c.optimum, d.optimum);
  EXPECT_EQ(c.enumerated, d.enumerated);
  EXPECT_LT(c.enumerated, ufl_subsets(16));  // the opening-cost cut fires
}

TEST(Oracle, RelabelingKeepsCost) {
  const auto inst = generate_random_graph(8, 6, 77);
  std::vector<int> perm(8);
  for (int i = 0; i < 8; ++i) perm[i] = (i * 5 + 3) % 8;
  Instance moved = inst;
  for (auto& e : moved.edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  for (int k = 1; k <= 3; ++k) {
    EXPECT_DOUBLE_EQ(exact_k_clustering(inst, k).cost, exact_k_clustering(moved, k).cost);
  }
}

TEST(Oracle, BelowLocalSearch) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto inst = generate_grid(4, 3, WeightModel::Random, rng());
    SearchConfig cfg;
    cfg.k = 3;
    cfg.s = 1 + t % 2;
    const auto trace = local_search(inst, cfg);
    EXPECT_LE(exact_k_clustering(inst, 3).cost, trace.final_cost);
  }
}

TEST(Oracle, Budget) {
  EXPECT_EQ(k_clustering_subsets(8, 3), 8u + 28u + 56u);
  EXPECT_EQ(k_clustering_subsets(3, 5), 7u);
  EXPECT_EQ(ufl_subsets(10), 1023u);
  EXPECT_EQ(ufl_subsets(80), std::numeric_limits<std::uint64_t>::max());
  OracleOptions tiny;
  tiny.budget = 10;
  try {
    exact_k_clustering(generate_grid(4, 4), 2, tiny);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.needed(), 16u + 120u);
  }
  auto ufl = generate_grid(4, 4);
  ufl.opening_cost = 1.0;
  EXPECT_THROW(exact_ufl(ufl, tiny), BudgetExceeded);
  EXPECT_THROW(exact_k_clustering(ufl, 2), Error);
  EXPECT_THROW(exact_ufl(generate_grid(2, 2)), Error);
}

TEST(Oracle, BudgetFromEnvironment) {
  ::setenv("SWAPSHOP_BUDGET", "1234", 1);
  EXPECT_EQ(oracle_budget_from_env(), 1234u);
  ::setenv("SWAPSHOP_BUDGET", "junk", 1);
  EXPECT_EQ(oracle_budget_from_env(), kDefaultOracleBudget);
  ::unsetenv("SWAPSHOP_BUDGET");
  EXPECT_EQ(oracle_budget_from_env(), kDefaultOracleBudget);
}
