#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "helpers.hpp"
#include "swapshop/analysis.hpp"
#include "swapshop/error.hpp"
#include "swapshop/localsearch.hpp"
#include "swapshop/oracle.hpp"

using namespace swapshop;

namespace {

// a1 = 0 and a2 = 1 each carry a two-client blob; b = 2 sits between them.
Instance two_blobs() {
  return parse_instance_text("n=7\n0 2 1\n1 2 1\n0 3 0.1\n0 4 0.1\n1 5 0.1\n1 6 0.1\n",
                             InstanceFormat::EdgeList);
}

Solution local_k(const Instance& inst, int k, int s, std::uint64_t seed = 0) {
  SearchConfig cfg;
  cfg.k = k;
  cfg.s = s;
  cfg.epsilon = 0.01;
  if (seed) {
    cfg.init = InitRule::SeededRandom;
    cfg.seed = seed;
  }
  return local_search(inst, cfg).final_solution;
}

}  // namespace

TEST(Isolation, IdenticalSingleCenter) {
  const auto inst = generate_grid(3, 3);
  const auto rep = detect_isolation(inst, Solution{4}, Solution{4}, 0.3);
  ASSERT_EQ(rep.one_one_pairs.size(), 1u);
  EXPECT_EQ(rep.one_one_pairs[0], (std::pair<int, int>{4, 4}));
  EXPECT_EQ(rep.k_bar, 0);
  EXPECT_EQ(rep.num_good(), 9);
}

TEST(Isolation, DisjointOverlap) {
  const auto inst = parse_instance_text("0 1 1\n1 2 1\n2 3 1\n", InstanceFormat::EdgeList);
  const auto rep = detect_isolation(inst, Solution{1}, Solution{0, 3}, 0.3);
  EXPECT_TRUE(rep.isolated_regions.empty());
  EXPECT_TRUE(rep.one_one_pairs.empty());
  EXPECT_EQ(rep.k_bar, 2);
}

TEST(Isolation, TwoBlobsIsolatedButNotOneToOne) {
  const auto inst = two_blobs();
  const DistanceOracle d(inst);
  const auto rep = detect_isolation(inst, d, Solution{0, 1}, Solution{2}, 0.3);
  ASSERT_EQ(rep.isolated_regions.size(), 1u);
  EXPECT_EQ(rep.isolated_regions[0].f0, 2);
  EXPECT_EQ(rep.isolated_regions[0].L0, (std::vector<int>{0, 1}));
  EXPECT_TRUE(rep.one_one_pairs.empty());
  EXPECT_EQ(rep.k_bar, 1);
  EXPECT_EQ(rep.num_good(), 7);
  // Cells by hand: vertex 2 ties and goes to 0, so V_L(0) = {0,2,3,4},
  // V_L(1) = {1,5,6}, and V_G(2) is everything.
  EXPECT_EQ(std::count(rep.local_center.begin(), rep.local_center.end(), 0), 4);
  EXPECT_EQ(std::count(rep.local_center.begin(), rep.local_center.end(), 1), 3);
  for (const auto& c : check_reassignment(inst, d, rep, 0.25)) EXPECT_TRUE(c.holds) << c.direction;
}

TEST(Isolation, EpsilonRange) {
  EXPECT_THROW(detect_isolation(fixtures::path3(), Solution{0}, Solution{1}, 0.5), Error);
  EXPECT_THROW(detect_isolation(fixtures::path3(), Solution{0}, Solution{1}, 0.0), Error);
}

TEST(Isolation, PropertiesOnRandomPairs) {
  std::mt19937_64 rng(13);
  int regions_seen = 0;
  for (int t = 0; t < 40; ++t) {
    const auto inst = generate_grid(4 + rng() % 4, 4 + rng() % 4, WeightModel::Random, rng());
    const int k = 2 + rng() % 3;
    const auto G = exact_k_clustering(inst, k).optimum;
    const auto L = local_k(inst, k, 1, 1 + rng() % 1000);
    const double eps = std::array{0.1, 0.2, 0.3, 0.4}[rng() % 4];
    const DistanceOracle d(inst);
    const auto rep = detect_isolation(inst, d, L, G, eps);
    EXPECT_TRUE(rep.l_sides_disjoint);
    std::set<std::pair<int, int>> pairs(rep.one_one_pairs.begin(), rep.one_one_pairs.end());
    for (const auto& r : rep.isolated_regions) {
      if (r.L0.size() == 1) EXPECT_TRUE(pairs.count({r.f0, r.L0[0]}));
    }
    for (const auto& [f, l] : rep.one_one_pairs) {
      const auto it = std::find_if(rep.isolated_regions.begin(), rep.isolated_regions.end(),
                                   [&](const auto& r) { return r.f0 == f; });
      ASSERT_NE(it, rep.isolated_regions.end());
      EXPECT_TRUE(std::binary_search(it->L0.begin(), it->L0.end(), l));
    }
    regions_seen += static_cast<int>(rep.isolated_regions.size());
    for (const auto& c : check_reassignment(inst, d, rep, 0.25)) {
      EXPECT_TRUE(c.holds) << c.direction << " f0=" << c.f0 << " " << c.lhs << " > " << c.rhs;
    }
  }
  EXPECT_GT(regions_seen, 0);
}

TEST(Coloring, RhoShape) {
  const std::map<int, int> phi{{1, 2}, {2, 1}, {3, 1}};
  const auto c = color_functional_graph(phi, {1, 2, 3});
  EXPECT_EQ(c, (std::map<int, int>{{1, 0}, {2, 1}, {3, 1}}));
}

TEST(Coloring, CyclesOfEveryLengthAreDichromatic) {
  for (int len = 2; len <= 9; ++len) {
    std::map<int, int> phi;
    std::vector<int> verts;
    for (int i = 0; i < len; ++i) {
      phi[10 + i] = 10 + (i + 1) % len;
      verts.push_back(10 + i);
    }
    // A tail of length 3 hanging off the cycle and one arc into a sink.
    phi[1] = 2;
    phi[2] = 3;
    phi[3] = len > 2 ? 12 : 10;
    phi[4] = 99;
    verts.insert(verts.end(), {1, 2, 3, 4, 99});
    const auto c = color_functional_graph(phi, verts);
    for (const auto& [f, t] : phi) EXPECT_NE(c.at(f), c.at(t)) << "len " << len;
    for (const auto& [v, col] : c) {
      EXPECT_GE(col, 0);
      EXPECT_LE(col, 2);
    }
    EXPECT_EQ(c.at(99), 0);
  }
}

TEST(Deletion, AllOneToOneIsVacuous) {
  const auto inst = parse_instance_text("0 1 1\n1 2 1\n2 3 1\n", InstanceFormat::EdgeList);
  const auto res = delete_centers(inst, Solution{0, 3}, Solution{0, 3}, 0.3);
  EXPECT_EQ(res.k_bar, 0);
  EXPECT_TRUE(res.S0.empty());
  EXPECT_TRUE(res.vacuous);
  EXPECT_TRUE(res.passed());
}

TEST(Deletion, GridEndToEnd) {
  const auto inst = generate_grid(5, 6);  // 30 clients
  const auto G = exact_k_clustering(inst, 4).optimum;
  const auto L = local_k(inst, 4, 2);
  const auto res = delete_centers(inst, L, G, 0.3);
  EXPECT_TRUE(res.passed());
  EXPECT_GE(static_cast<double>(res.S0.size()), 0.027 * res.k_bar / 6);
  EXPECT_LE(res.cost_after, res.bound_rhs);
  EXPECT_TRUE(res.dichromatic);
  for (int f : res.S0) {
    EXPECT_FALSE(std::binary_search(res.S0.begin(), res.S0.end(), res.phi.at(f)));
  }
}

TEST(Deletion, PropertiesOnRandomPairs) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 30; ++t) {
    auto inst = generate_grid(4 + rng() % 5, 4 + rng() % 5, WeightModel::Random, rng());
    inst.p = 1 + rng() % 2;
    const int k = 3 + rng() % 2;
    const auto G = exact_k_clustering(inst, k).optimum;
    const auto L = local_k(inst, k, 1, 1 + rng() % 1000);
    const double eps = std::array{0.2, 0.3, 0.4}[rng() % 3];
    const auto res = delete_centers(inst, L, G, eps);
    EXPECT_TRUE(res.passed()) << "t=" << t;
    EXPECT_TRUE(res.redirect_ok()) << "t=" << t;
    std::vector<int> in_parts;
    for (const auto& p : res.parts) in_parts.insert(in_parts.end(), p.begin(), p.end());
    EXPECT_EQ(in_parts, res.color_class);
  }
}

TEST(Deletion, NeedsTwoFacilities) {
  EXPECT_THROW(delete_centers(fixtures::path3(), Solution{0}, Solution{1}, 0.3), Error);
}

TEST(Coarsen, BalancedPartsStayAlone) {
  std::vector<std::vector<int>> parts;
  std::vector<int> A, B;
  for (int i = 0; i < 6; ++i) {
    parts.emplace_back();
    for (int j = 0; j < 10; ++j) {
      const int x = i * 10 + j;
      parts.back().push_back(x);
      (j < 5 ? A : B).push_back(x);
    }
  }
  const auto res = balanced_coarsen(parts, A, B, 0.3);
  ASSERT_EQ(res.groups.size(), 6u);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(res.groups[i], (std::vector<int>{i}));
}

TEST(Coarsen, TwoOppositePartsMerge) {
  std::vector<std::vector<int>> parts(2);
  std::vector<int> A, B;
  for (int j = 0; j < 10; ++j) {
    parts[0].push_back(j);
    A.push_back(j);
  }
  for (int j = 10; j < 18; ++j) {
    parts[1].push_back(j);
    B.push_back(j);
  }
  const auto res = balanced_coarsen(parts, A, B, 0.3);
  ASSERT_EQ(res.groups.size(), 1u);
  EXPECT_EQ(res.groups[0], (std::vector<int>{0, 1}));
}

TEST(Coarsen, RandomisedBalanced) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> ground(2000);
    std::iota(ground.begin(), ground.end(), 0);
    std::shuffle(ground.begin(), ground.end(), rng);
    std::vector<std::vector<int>> parts;
    for (int i = 0; i < 200; ++i) parts.emplace_back(ground.begin() + 10 * i, ground.begin() + 10 * i + 10);
    std::shuffle(ground.begin(), ground.end(), rng);
    const std::vector<int> A(ground.begin(), ground.begin() + 1100);
    std::shuffle(ground.begin(), ground.end(), rng);
    const std::vector<int> B(ground.begin(), ground.begin() + 900);
    const auto res = balanced_coarsen(parts, A, B, 0.3);
    const std::set<int> a(A.begin(), A.end()), b(B.begin(), B.end());
    std::vector<int> used;
    for (const auto& g : res.groups) {
      int sa = 0, sb = 0;
      for (int p : g) {
        used.push_back(p);
        for (int x : parts[p]) {
          sa += a.count(x);
          sb += b.count(x);
        }
      }
      EXPECT_GE(sa, sb);
      EXPECT_LE(static_cast<int>(g.size()), res.part_limit);
    }
    std::sort(used.begin(), used.end());
    std::vector<int> all(200);
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(used, all);
    EXPECT_EQ(res.part_limit, 824);  // ceil(2 / 0.3^5)
  }
}

TEST(Coarsen, Errors) {
  const std::vector<std::vector<int>> parts{{0, 1, 2, 3, 4, 5}};
  EXPECT_THROW(balanced_coarsen(parts, {0}, {1, 2}, 0.3), Error);
  EXPECT_THROW(balanced_coarsen({{0, 1}}, {0}, {}, 0.3), Error);
  EXPECT_THROW(balanced_coarsen({{0, 1, 2, 3, 4, 5}, {5, 6, 7, 8, 9, 10}}, {0}, {}, 0.3), Error);
}

TEST(Certifier, IdenticalSolutionsPass) {
  auto inst = generate_grid(4, 5);
  inst.opening_cost = 3.0;
  const Solution S{0, 7, 13, 19};
  const auto rep = certify_ufl(inst, S, S, 0.5);
  EXPECT_TRUE(rep.symdiff_ok);
  EXPECT_EQ(rep.max_symdiff, 0);
  EXPECT_TRUE(rep.clients_ok);
  EXPECT_TRUE(rep.size_ok);
  EXPECT_EQ(rep.r, 4);
}

TEST(Certifier, GridUflChain) {
  auto inst = generate_grid(8, 8);
  inst.opening_cost = 3.0;
  SearchConfig cfg;
  cfg.mode = SearchMode::UFL;
  cfg.s = 4;
  cfg.epsilon = 0.01;
  const auto L = local_search(inst, cfg).final_solution;
  cfg.init = InitRule::SeededRandom;
  cfg.seed = 5;
  cfg.s = 2;
  const auto G = local_search(inst, cfg).final_solution;
  const auto rep = certify_ufl(inst, L, G, 0.5);
  EXPECT_TRUE(rep.locally_optimal);
  EXPECT_LE(rep.max_symdiff, rep.r);
  EXPECT_TRUE(rep.passed());
  for (const auto& rec : rep.records) {
    if (!rec.empty_mixed) EXPECT_GE(rec.exchange_slack, -1e-9);
  }
}

TEST(Certifier, RegionWithoutFacilities) {
  // A long path: most regions of G_Vor(F) hold few facilities.
  std::string text;
  for (int i = 0; i < 30; ++i) text += std::to_string(i) + " " + std::to_string(i + 1) + " 1\n";
  auto inst = parse_instance_text(text, InstanceFormat::EdgeList);
  inst.opening_cost = 2.0;
  const auto rep = certify_ufl(inst, Solution{3, 12, 20, 28}, Solution{5, 15, 25}, 0.5);
  EXPECT_TRUE(rep.symdiff_ok);
  EXPECT_TRUE(rep.clients_ok);
}

TEST(Certifier, Errors) {
  EXPECT_THROW(certify_ufl(generate_grid(3, 3), Solution{0}, Solution{1}, 0.5), Error);
  auto pts = generate_random_euclid(10, 2, 1);
  pts.opening_cost = 1.0;
  EXPECT_THROW(certify_ufl(pts, Solution{0}, Solution{1}, 0.5), Error);
}
