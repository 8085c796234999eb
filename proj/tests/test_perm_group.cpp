#include <gtest/gtest.h>

#include "support.hpp"

namespace gpi {
namespace {

using testing::Rng;

Perm cycle4() { return {1, 2, 3, 0}; }

TEST(Bsgs, Examples) {
  PermGroup triv(5, {});
  EXPECT_EQ(triv.order(), 1u);
  EXPECT_TRUE(triv.contains(perm_identity(5)));
  EXPECT_EQ(PermGroup(4, {cycle4()}).order(), 4u);
  PermGroup S4(4, {{1, 0, 2, 3}, cycle4()});
  EXPECT_EQ(S4.order(), 24u);
  EXPECT_EQ(testing::perm_closure(4, {{1, 0, 2, 3}, cycle4()}).size(), 24u);
}

TEST(Bsgs, RejectsBadGenerators) {
  EXPECT_THROW(PermGroup(3, {{0, 1}}), InvalidInput);
  EXPECT_THROW(PermGroup(3, {{0, 0, 1}}), InvalidInput);
}

// Order and membership against exhaustive closure on random generator sets of degree <= 8.
TEST(Bsgs, MatchesExhaustiveClosure) {
  Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    int deg = testing::uniform(rng, 2, 8), k = testing::uniform(rng, 1, 3);
    std::vector<Perm> gens;
    for (int i = 0; i < k; ++i) gens.push_back(testing::random_perm(deg, rng));
    auto all = testing::perm_closure(deg, gens);
    PermGroup P(deg, gens);
    ASSERT_EQ(P.order(), all.size());
    if (all.size() <= 10000) {
      auto els = P.elements();
      EXPECT_EQ(std::set<Perm>(els.begin(), els.end()), all);
    }
    for (int s = 0; s < 30; ++s) {
      Perm x = testing::random_perm(deg, rng);
      EXPECT_EQ(P.contains(x), all.count(x) == 1);
    }
    // Invariant under generator order.
    std::reverse(gens.begin(), gens.end());
    EXPECT_EQ(PermGroup(deg, gens).order(), all.size());
  }
}

TEST(PointTransporter, Examples) {
  PermGroup S4(4, {{1, 0, 2, 3}, cycle4()});
  auto same = point_transporter(S4, 2, 2);
  ASSERT_FALSE(same.empty);
  EXPECT_TRUE(perm_is_identity(same.rep));
  EXPECT_EQ(same.subgroup.order(), 6u);

  PermGroup small(4, {{1, 0, 2, 3}});
  EXPECT_TRUE(point_transporter(small, 0, 3).empty);

  auto c = point_transporter(PermGroup(4, {cycle4()}), 0, 2);
  ASSERT_FALSE(c.empty);
  EXPECT_EQ(c.rep, perm_mul(cycle4(), cycle4()));
  EXPECT_EQ(c.subgroup.order(), 1u);
}

TEST(SetwiseTransporter, Examples) {
  auto t = setwise_transporter(PermGroup(4, {}), {1, 2}, {1, 2});
  ASSERT_FALSE(t.empty);
  EXPECT_TRUE(perm_is_identity(t.rep));
  EXPECT_EQ(t.subgroup.order(), 1u);

  PermGroup two_orbits(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
  EXPECT_TRUE(setwise_transporter(two_orbits, {0, 1}, {2, 3}).empty);

  auto c = setwise_transporter(PermGroup(4, {cycle4()}), {0, 1}, {2, 3});
  ASSERT_FALSE(c.empty);
  EXPECT_EQ(c.rep, perm_mul(cycle4(), cycle4()));

  EXPECT_THROW(setwise_transporter(two_orbits, {0}, {1, 2}), InvalidInput);
}

TEST(SetwiseTransporter, NodeBudget) {
  std::vector<Perm> gens{{1, 0, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7, 0}};
  EXPECT_THROW(setwise_transporter(PermGroup(8, gens), {0, 1, 2, 3}, {4, 5, 6, 7}, 3), BudgetExceeded);
}

std::set<Perm> coset_elements(const PermCoset& C) {
  std::set<Perm> out;
  if (C.empty) return out;
  for (const auto& h : C.subgroup.elements()) out.insert(perm_mul(h, C.rep));
  return out;
}

bool maps_set(const Perm& g, const std::vector<int>& S, const std::vector<int>& T) {
  std::vector<int> img;
  for (int s : S) img.push_back(g[s]);
  std::sort(img.begin(), img.end());
  auto t = T;
  std::sort(t.begin(), t.end());
  return img == t;
}

// Transporter cosets equal the exhaustive filter of P.
TEST(Transporters, EqualExhaustiveFilter) {
  Rng rng(32);
  int tested = 0;
  for (int t = 0; t < 150; ++t) {
    int deg = testing::uniform(rng, 3, 8), k = testing::uniform(rng, 1, 2);
    std::vector<Perm> gens;
    for (int i = 0; i < k; ++i) gens.push_back(testing::random_perm(deg, rng));
    PermGroup P(deg, gens);
    auto all = testing::perm_closure(deg, gens);
    if (all.size() > 10000) continue;
    ++tested;

    int x = testing::uniform(rng, 0, deg - 1), y = testing::uniform(rng, 0, deg - 1);
    std::set<Perm> want;
    for (const auto& g : all)
      if (g[x] == y) want.insert(g);
    auto pc = point_transporter(P, x, y);
    EXPECT_EQ(coset_elements(pc), want);
    if (!pc.empty) {
      EXPECT_EQ(pc.rep[x], y);
      for (const auto& g : pc.subgroup.generators()) EXPECT_EQ(g[x], x);
    }

    int size = testing::uniform(rng, 1, deg - 1);
    Perm a = testing::random_perm(deg, rng), b = testing::random_perm(deg, rng);
    std::vector<int> S(a.begin(), a.begin() + size), T(b.begin(), b.begin() + size);
    std::set<Perm> want_set;
    for (const auto& g : all)
      if (maps_set(g, S, T)) want_set.insert(g);
    auto sc = setwise_transporter(P, S, T);
    EXPECT_EQ(coset_elements(sc), want_set);
    if (!sc.empty) {
      EXPECT_TRUE(maps_set(sc.rep, S, T));
      for (const auto& g : sc.subgroup.generators()) EXPECT_TRUE(maps_set(g, S, S));
    }
  }
  EXPECT_GE(tested, 80);
}

TEST(OrbitStabilizer, OrbitTimesStabilizerIsGroupOrder) {
  // S4 acting on 2-subsets encoded as bitmasks.
  std::vector<Perm> gens{{1, 0, 2, 3}, cycle4()};
  auto act = [&](std::uint64_t mask, int g) {
    std::uint64_t out = 0;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) out |= 1ull << gens[g][i];
    return out;
  };
  auto os = orbit_stabilizer(4, gens, 0b0011, act, 24);
  EXPECT_EQ(os.orbit.size(), 6u);
  EXPECT_EQ(os.stabilizer.order(), 4u);
}

}  // namespace
}  // namespace gpi
