#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

namespace gpi {
namespace {

using testing::Rng;

TEST(BruteIso, Examples) {
  FiniteGroup S3 = symmetric_group(3);
  auto self = brute_iso(S3, S3);
  ASSERT_TRUE(self.has_value());
  EXPECT_FALSE(verify_isomorphism(S3, S3, *self).has_value());

  auto crt = brute_iso(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3)));
  ASSERT_TRUE(crt.has_value());
  EXPECT_FALSE(verify_isomorphism(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3)), *crt));

  EXPECT_FALSE(brute_iso(dihedral_group(2), quaternion_group(2)).has_value());
  EXPECT_FALSE(brute_iso(cyclic_group(4), cyclic_group(5)).has_value());
  EXPECT_THROW(brute_iso(cyclic_group(201), cyclic_group(201)), BudgetExceeded);
}

int count_involutions(const FiniteGroup& G) {
  int c = 0;
  for (int x = 1; x < G.order(); ++x) c += element_order(G, x) == 2;
  return c;
}

TEST(BruteIso, InvolutionCountsSeparateD8AndQ8) {
  EXPECT_EQ(count_involutions(dihedral_group(2)), 5);
  EXPECT_EQ(count_involutions(quaternion_group(2)), 1);
}

// Aut orders of small groups, each derived by hand: |Aut(Z_n)| = phi(n), Aut(V4) = S3,
// Aut(Z2^3) = GL(3,2), Aut(S_n) = S_n for n != 6, Aut(A4) = S4, Aut(D8) = D8, Aut(Q8) = S4.
TEST(BruteAut, KnownOrders) {
  const std::vector<std::pair<FiniteGroup, std::uint64_t>> cases{
      {cyclic_group(1), 1},       {cyclic_group(7), 6},       {cyclic_group(12), 4},   {elem_ab_group(2, 2), 6},
      {elem_ab_group(2, 3), 168}, {symmetric_group(3), 6},    {symmetric_group(4), 24}, {alternating_group(4), 24},
      {dihedral_group(2), 8},     {quaternion_group(2), 24},  {elem_ab_group(3, 2), 48}};
  for (const auto& [G, want] : cases) {
    BruteAut A = brute_aut(G);
    EXPECT_EQ(A.order, want) << "order " << G.order();
    EXPECT_EQ(A.group.order(), want);
    for (const auto& a : A.group.generators()) EXPECT_FALSE(verify_isomorphism(G, G, a).has_value());
  }
}

// Every automorphism found by exhaustive permutation search of a tiny group lies in brute_aut.
TEST(BruteAut, MatchesPermutationSearchOnTinyGroups) {
  for (const FiniteGroup& G : {cyclic_group(6), symmetric_group(3), elem_ab_group(2, 2), cyclic_group(5)}) {
    std::vector<int> p(G.order());
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t count = 0;
    BruteAut A = brute_aut(G);
    do {
      if (verify_isomorphism(G, G, p)) continue;
      ++count;
      EXPECT_TRUE(A.group.contains(p));
    } while (std::next_permutation(p.begin() + 1, p.end()));
    EXPECT_EQ(count, A.order);
  }
}

TEST(BruteIndecomposable, Examples) {
  auto Z2 = make_group_ref(cyclic_group(2));
  Field F2 = Field::of(2);
  EXPECT_TRUE(brute_indecomposable(trivial_rep(Z2, F2, 1).module()));
  EXPECT_FALSE(brute_indecomposable(trivial_rep(Z2, F2, 2).module()));
  EXPECT_TRUE(brute_indecomposable(regular_rep(Z2, F2).module()));
  EXPECT_FALSE(brute_indecomposable(regular_rep(Z2, Field::of(3)).module()));
  EXPECT_THROW(brute_indecomposable(trivial_rep(Z2, Field::of(5), 3).module()), BudgetExceeded);
}

TEST(BruteCohomologous, Examples) {
  auto Z2 = make_group_ref(cyclic_group(2));
  Representation t = trivial_rep(Z2, Field::of(2), 1);
  Cocycle z4 = Cocycle::zero(2, 2, 1);
  z4.at(1, 1)[0] = 1;
  auto same = brute_cohomologous(t, z4, z4);
  ASSERT_TRUE(same.has_value());
  for (auto x : same->u) EXPECT_EQ(x, 0);
  EXPECT_FALSE(brute_cohomologous(t, z4, Cocycle::zero(2, 2, 1)).has_value());

  // A constructed coboundary is recognized.
  auto Z3 = make_group_ref(cyclic_group(3));
  Representation t3 = trivial_rep(Z3, Field::of(3), 1);
  Vec u{0, 1, 2};
  Cocycle b = coboundary(t3, u);
  auto w = brute_cohomologous(t3, b, Cocycle::zero(3, 3, 1));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(coboundary(t3, w->u).values, b.values);
}

// Higman: with cyclic Sylow p-subgroup there are at most |Q| indecomposable types.
TEST(IndecomposableCensus, HigmanBound) {
  const std::vector<FiniteGroup> groups{cyclic_group(2), cyclic_group(3), cyclic_group(4),
                                        cyclic_group(5), symmetric_group(3), cyclic_group(6)};
  int cases = 0;
  for (const auto& Q : groups)
    for (int p : {2, 3, 5}) {
      auto grp = make_group_ref(Q);
      auto C = brute_indecomposable_census(grp, Field::of(p));
      EXPECT_LE(static_cast<int>(C.types.size()), Q.order());
      EXPECT_GE(C.max_dim, 2);
      for (const auto& R : C.types) EXPECT_TRUE(is_indecomposable(R.module()));
      ++cases;
    }
  EXPECT_EQ(cases, 18);
}

TEST(IndecomposableCensus, KnownSmallCases) {
  // Z4 over GF(2): Jordan blocks J_1..J_4 at eigenvalue 1.
  auto C = brute_indecomposable_census(make_group_ref(cyclic_group(4)), Field::of(2));
  std::map<int, int> by_dim;
  for (const auto& R : C.types) by_dim[R.d]++;
  EXPECT_EQ(by_dim, (std::map<int, int>{{1, 1}, {2, 1}, {3, 1}, {4, 1}}));
  // Z4 over GF(5) is split semisimple: four characters.
  EXPECT_EQ(brute_indecomposable_census(make_group_ref(cyclic_group(4)), Field::of(5)).types.size(), 4u);
}

// |Ind(Q, d)| <= [Q:P] * sum over d' in [ceil(d/[Q:P]), d] of |Ind(P, d')|.
TEST(IndecomposableCensus, SylowIndexInequality) {
  const std::vector<std::pair<FiniteGroup, int>> cases{
      {symmetric_group(3), 2}, {symmetric_group(3), 3}, {cyclic_group(6), 2}, {cyclic_group(6), 3}};
  for (const auto& [Q, p] : cases) {
    Field F = Field::of(p);
    auto CQ = brute_indecomposable_census(make_group_ref(Q), F);
    SubgroupGroup P = subgroup_as_group(Q, sylow_subgroup(Q, p));
    auto CP = brute_indecomposable_census(make_group_ref(P.group), F);
    const int index = Q.order() / P.group.order();
    std::map<int, int> nq, np;
    for (const auto& R : CQ.types) nq[R.d]++;
    for (const auto& R : CP.types) np[R.d]++;
    for (int d = 1; d <= std::min(CQ.max_dim, CP.max_dim); ++d) {
      int rhs = 0;
      for (int dp = (d + index - 1) / index; dp <= d; ++dp) rhs += np[dp];
      EXPECT_LE(nq[d], index * rhs) << "|Q|=" << Q.order() << " p=" << p << " d=" << d;
    }
  }
}

// Agreement between the oracles and the main algorithms on random inputs.
TEST(OracleAgreement, ModuleIsoAndIndecomposability) {
  Rng rng(81);
  auto S3 = make_group_ref(symmetric_group(3));
  Field F2 = Field::of(2);
  for (int t = 0; t < 20; ++t) {
    Representation a = testing::random_representation(S3, F2, 3, rng);
    Representation b = t % 2 ? conjugate_rep(a, testing::random_invertible(F2, a.d, rng))
                             : testing::random_representation(S3, F2, 3, rng);
    if (a.d != b.d) continue;
    EXPECT_EQ(module_isomorphism(a.module(), b.module()).isomorphic, brute_module_iso(a.module(), b.module()).has_value());
    EXPECT_EQ(is_indecomposable(a.module()), brute_indecomposable(a.module()));
  }
}

}  // namespace
}  // namespace gpi
