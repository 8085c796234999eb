#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

namespace gpi {
namespace {

TEST(ClassifyWord, Examples) {
  EXPECT_EQ(classify_word(parse_word("a0"), 1).cls, WordClass::kSymString);
  WordVerdict bad = classify_word(parse_word("a1 b1 a1"), 1);
  EXPECT_EQ(bad.cls, WordClass::kInvalid);
  EXPECT_FALSE(bad.reason.empty());
  // b1 a_(l+1) is forbidden, so b1 a2 is only valid once l + 1 > 2.
  EXPECT_EQ(classify_word(parse_word("b1 a2"), 3).cls, WordClass::kAsymString);
  EXPECT_EQ(classify_word(parse_word("b1 a2"), 1).cls, WordClass::kInvalid);
  EXPECT_EQ(word_inverse(parse_word("b1 a2")), parse_word("a-2 b-1"));
}

TEST(ClassifyWord, RejectsMalformedWords) {
  EXPECT_EQ(classify_word(parse_word("a1 a1"), 1).cls, WordClass::kInvalid);
  EXPECT_EQ(classify_word(parse_word("a3"), 1).cls, WordClass::kInvalid);
  EXPECT_EQ(classify_word(parse_word("b2"), 1).cls, WordClass::kInvalid);
  EXPECT_EQ(classify_word(parse_word("a0 b1 a0 b1"), 1, true).cls, WordClass::kInvalid);  // a power
  EXPECT_EQ(classify_word(parse_word("a0 b-1 a0"), 1, true).cls, WordClass::kInvalid);    // odd length
  EXPECT_THROW(parse_word("c1"), InvalidInput);
}

TEST(ClassifyWord, BandSymmetryIsRotationInvariant) {
  Word w = parse_word("a0 b-1 a0 b1");
  ASSERT_EQ(classify_word(w, 1, true).cls, WordClass::kSymBand);
  for (std::size_t k = 0; k < w.size(); ++k) {
    Word r(w.begin() + static_cast<long>(k), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<long>(k));
    EXPECT_EQ(classify_word(r, 1, true).cls, WordClass::kSymBand);
  }
  EXPECT_EQ(classify_word(parse_word("a-1 b1"), 1, true).cls, WordClass::kAsymBand);
}

TEST(EnumerateWords, Regressions) {
  auto zero = enumerate_words(1, 0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].word, parse_word("a0"));
  EXPECT_EQ(zero[0].cls, WordClass::kSymString);

  std::vector<std::string> one;
  int a_letters = 0;
  for (const auto& e : enumerate_words(1, 1))
    if (e.word.size() == 1) {
      one.push_back(word_to_string(e.word));
      if (e.word[0].c == 'a') ++a_letters;
    }
  EXPECT_EQ(one, (std::vector<std::string>{"a-2", "a-1", "b-1", "a0"}));
  EXPECT_EQ(a_letters, 3);

  EXPECT_THROW(enumerate_words(1, 17), BudgetExceeded);
  EXPECT_THROW(enumerate_words(0, 2), InvalidInput);
}

TEST(EnumerateWords, Deterministic) {
  auto a = enumerate_words(3, 4), b = enumerate_words(3, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].word, b[i].word);
}

// Orbit of an entry: inversion for strings; rotations of w and w^-1 for bands.
std::vector<Word> orbit_of(const WordEntry& e) {
  if (e.cls == WordClass::kAsymString || e.cls == WordClass::kSymString) return {e.word, word_inverse(e.word)};
  std::vector<Word> out;
  for (const Word& base : {e.word, word_inverse(e.word)})
    for (std::size_t k = 0; k < base.size(); ++k) {
      Word r(base.begin() + static_cast<long>(k), base.end());
      r.insert(r.end(), base.begin(), base.begin() + static_cast<long>(k));
      out.push_back(r);
    }
  return out;
}

TEST(EnumerateWords, NoOrbitHoldsTwoRepresentatives) {
  for (int l : {1, 3}) {
    auto entries = enumerate_words(l, 4);
    std::map<std::pair<bool, Word>, int> owner;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      bool band = entries[i].cls == WordClass::kAsymBand || entries[i].cls == WordClass::kSymBand;
      owner[{band, entries[i].word}] = static_cast<int>(i);
    }
    ASSERT_EQ(owner.size(), entries.size()) << "duplicate representative at l=" << l;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      bool band = entries[i].cls == WordClass::kAsymBand || entries[i].cls == WordClass::kSymBand;
      EXPECT_EQ(classify_word(entries[i].word, l, band).cls, entries[i].cls) << word_to_string(entries[i].word);
      for (const Word& o : orbit_of(entries[i])) {
        auto it = owner.find({band, o});
        if (it != owner.end()) EXPECT_EQ(it->second, static_cast<int>(i)) << word_to_string(entries[i].word);
      }
    }
  }
}

TEST(BuildModule, Examples) {
  AuxChoice zero{WordClass::kSymString};
  zero.e = 0;
  SDModule M = build_module(parse_word("a0"), WordClass::kSymString, zero, 1);
  EXPECT_EQ(M.dim, 1);
  EXPECT_FALSE(sd_relation_violation(M.a, M.b, 1).has_value());

  AuxChoice one{WordClass::kSymString};
  one.e = 1;
  SDModule N = build_module(parse_word("a0"), WordClass::kSymString, one, 1);
  EXPECT_EQ(N.dim, 5);
  EXPECT_FALSE(sd_relation_violation(N.a, N.b, 1).has_value());

  AuxChoice j1{WordClass::kAsymBand};
  j1.jordan = 1;
  j1.eigen = 1;
  Word w = parse_word("a-1 b1");
  SDModule B = build_module(band_layout(w, WordClass::kAsymBand), WordClass::kAsymBand, j1, 1);
  EXPECT_EQ(B.dim, 2);
  EXPECT_FALSE(sd_relation_violation(B.a, B.b, 1).has_value());

  EXPECT_THROW(build_module(parse_word("a0"), WordClass::kSymString, j1, 1), InvalidInput);
}

TEST(BuildModule, RelationViolationIsReported) {
  Matrix a = Matrix::identity(2), b(2, 2);
  EXPECT_EQ(sd_relation_violation(a, b, 1).value_or(""), "a^3 != 0");
}

TEST(BuildModule, EveryMaterializedModuleSatisfiesTheRelations) {
  for (int l : {1, 3})
    for (int d = 1; d <= 7; ++d)
      for (const auto& M : materialize_dimension(l, d)) {
        EXPECT_EQ(M.dim, d);
        auto v = sd_relation_violation(M.a, M.b, l);
        EXPECT_FALSE(v.has_value()) << "l=" << l << " " << word_to_string(M.word) << " [" << M.aux.describe()
                                    << "]: " << v.value_or("");
      }
}

TEST(BuildModule, SmallModulesAreIndecomposable) {
  for (int d = 1; d <= 6; ++d)
    for (const auto& M : materialize_dimension(1, d))
      EXPECT_TRUE(is_indecomposable(M.module())) << word_to_string(M.word) << " [" << M.aux.describe() << "]";
}

TEST(CountIndecomposables, RegressionCountsAtLevelOne) {
  // distinct classes per d: asym_string, sym_string, asym_band, sym_band
  const std::vector<std::vector<int>> want{{0, 1, 0, 0}, {2, 0, 3, 0}, {4, 0, 0, 0},
                                           {7, 0, 9, 0}, {12, 1, 0, 0}, {21, 2, 18, 0}};
  for (int d = 1; d <= 6; ++d) {
    CountReport R = count_indecomposables(1, d);
    const auto& w = want[d - 1];
    EXPECT_EQ(R.counts[WordClass::kAsymString], w[0]) << "d=" << d;
    EXPECT_EQ(R.counts[WordClass::kSymString], w[1]) << "d=" << d;
    EXPECT_EQ(R.counts[WordClass::kAsymBand], w[2]) << "d=" << d;
    EXPECT_EQ(R.counts[WordClass::kSymBand], w[3]) << "d=" << d;
    EXPECT_EQ(R.unexplained_duplicates, 0) << "d=" << d;
    EXPECT_TRUE(R.within_bounds()) << "d=" << d;
    const long double p4 = std::pow(4.0L, d);
    EXPECT_LE(static_cast<long double>(R.total()), 4 * p4 + 2 * p4 + 3.0L * d * p4 + d * 4 * p4);
  }
}

TEST(CountIndecomposables, LevelThreeTotals) {
  const std::vector<int> want{1, 5, 4, 20, 16, 65};
  for (int d = 1; d <= 6; ++d) {
    CountReport R = count_indecomposables(3, d);
    EXPECT_EQ(R.total(), want[d - 1]) << "d=" << d;
    EXPECT_EQ(R.unexplained_duplicates, 0);
    EXPECT_TRUE(R.within_bounds());
  }
}

TEST(CountIndecomposables, RejectsOutOfRangeDimension) {
  EXPECT_THROW(count_indecomposables(1, 0), InvalidInput);
  EXPECT_THROW(count_indecomposables(1, 11), InvalidInput);
}

TEST(KleinFour, CensusMatchesExhaustiveSearch) {
  for (int d = 1; d <= 3; ++d) {
    auto census = klein_four_census(d);
    auto brute = brute_klein_four(d);
    ASSERT_EQ(census.size(), brute.size()) << "d=" << d;
    const Field F = Field::of(2);
    for (const auto& M : census) {
      EXPECT_TRUE(mat_mul(F, M.gens[0], M.gens[0]).is_zero());
      EXPECT_TRUE(mat_mul(F, M.gens[1], M.gens[1]).is_zero());
      EXPECT_EQ(mat_mul(F, M.gens[0], M.gens[1]), mat_mul(F, M.gens[1], M.gens[0]));
      int hits = 0;
      for (const auto& N : brute) hits += brute_module_iso(M, N).has_value();
      EXPECT_EQ(hits, 1) << "d=" << d;
    }
  }
  EXPECT_EQ(brute_klein_four(2).size(), 3u);
}

TEST(WildFamily, Examples) {
  for (int p : {2, 3, 5}) {
    WildReport R = wild_family(p, 1);
    EXPECT_EQ(R.classes, p);
    EXPECT_EQ(R.lower_bound, 1u);
  }
  WildReport two = wild_family(2, 2);
  EXPECT_EQ(two.pairs, 16);
  EXPECT_EQ(two.lower_bound, 4u);
  EXPECT_EQ(two.classes, 10);
  WildReport three = wild_family(3, 2);
  EXPECT_EQ(three.lower_bound, 9u);
  EXPECT_EQ(three.classes, 33);
  EXPECT_THROW(wild_family(2, 5), BudgetExceeded);
  EXPECT_THROW(wild_family(4, 1), InvalidInput);
}

TEST(WildFamily, ClassCountsMeetTheLowerBound) {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}, {5, 2}, {2, 3}}) {
    WildReport R = wild_family(p, d);
    EXPECT_GE(static_cast<std::uint64_t>(R.classes), R.lower_bound) << "p=" << p << " d=" << d;
  }
}

}  // namespace
}  // namespace gpi
