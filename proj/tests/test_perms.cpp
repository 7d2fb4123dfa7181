#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rankmra/combinatorics.hpp"
#include "rankmra/permutation.hpp"
#include "rankmra/young.hpp"

using namespace rankmra;

TEST(CycleForm, StandardizesArbitraryCycleOrder) {
  const auto t = from_cycles(5, CycleForm{{{4, 1, 3}, {2, 5}}});
  EXPECT_EQ(standard_cycle_form(t).to_string(), "(1 3 4)(2 5)");
  EXPECT_EQ(parse_permutation("(25)(413)", 5), t);
  EXPECT_EQ(cycle_key(Permutation::identity(4)), "id");
  EXPECT_TRUE(standard_cycle_form(Permutation::identity(4)).cycles.empty());
  EXPECT_EQ(cycle_key(Permutation::transposition(4, 3, 4)), "(3 4)");
}

TEST(CycleForm, ParsingVariants) {
  const auto t = parse_permutation("(1 3 4)(2 5)", 5);
  EXPECT_EQ(parse_permutation("(134)(25)", 5), t);
  EXPECT_EQ(parse_permutation("(1,3,4)(2,5)", 5), t);
  EXPECT_EQ(parse_permutation("id", 5), Permutation::identity(5));
  EXPECT_THROW(parse_permutation("(1 1)", 5), std::invalid_argument);
  EXPECT_THROW(parse_permutation("(1 6)", 5), std::invalid_argument);
  EXPECT_THROW(parse_permutation("(1 2", 5), std::invalid_argument);
}

TEST(CycleForm, RoundTripExhaustive) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& p : oracle::all_perms(n)) {
      const Permutation t(std::vector<Item>(p.begin(), p.end()));
      const auto form = standard_cycle_form(t);
      ASSERT_TRUE(form.is_standard());
      ASSERT_EQ(from_cycles(n, form), t);
      ASSERT_EQ(standard_cycle_form(from_cycles(n, form)).cycles, form.cycles);
      ASSERT_EQ(parse_permutation(form.to_string(), n), t);
    }
}

TEST(Permutation, CompositionConvention) {
  // (st)(i) = s(t(i))
  const auto s = parse_permutation("(1 2)", 3);
  const auto t = parse_permutation("(2 3)", 3);
  EXPECT_EQ((s * t)(1), 2);
  EXPECT_EQ((s * t)(2), 3);
  EXPECT_EQ((s * t)(3), 1);
  EXPECT_EQ(cycle_key(s * t), "(1 2 3)");
  EXPECT_EQ(s * s.inverse(), Permutation::identity(3));
}

TEST(Derangements, Examples) {
  const auto d2 = derangements({1, 2}, 4);
  ASSERT_EQ(d2.size(), 1u);
  EXPECT_EQ(cycle_key(d2[0]), "(1 2)");
  const auto d3 = derangements({1, 2, 3}, 3);
  ASSERT_EQ(d3.size(), 2u);
  EXPECT_EQ(cycle_key(d3[0]), "(1 2 3)");
  EXPECT_EQ(cycle_key(d3[1]), "(1 3 2)");
  EXPECT_EQ(derangements({1, 2, 3, 4}, 4).size(), 9u);
  EXPECT_EQ(derangements(ItemSet{}, 3), std::vector<Permutation>{Permutation::identity(3)});
  EXPECT_TRUE(derangements({2}, 3).empty());
}

TEST(Derangements, CountsMatchBruteForceAndRecurrence) {
  for (int k = 2; k <= 7; ++k) {
    const auto brute = oracle::count_derangements(k);
    EXPECT_EQ(derangement_number(k), brute) << k;
    EXPECT_EQ(derangements(ItemSet::range(k), k).size(), brute) << k;
    // support shifted inside a larger universe
    std::vector<Item> shifted;
    for (int i = 0; i < k; ++i) shifted.push_back(static_cast<Item>(i + 2));
    EXPECT_EQ(derangements(ItemSet(shifted), k + 2).size(), brute) << k;
  }
  EXPECT_EQ(derangement_number(0), 1u);
  EXPECT_EQ(derangement_number(1), 0u);
}

TEST(Derangements, FixedPointCountIdentity) {
  for (int n = 1; n <= 8; ++n) {
    std::uint64_t total = 0;
    for (int k = 0; k <= n; ++k) total += binomial(n, k) * derangement_number(n - k);
    EXPECT_EQ(total, factorial(n)) << n;
  }
}

TEST(Derangements, SortedByCycleKeyAndSupportExact) {
  const auto d = derangements({1, 3, 4, 6}, 6);
  for (std::size_t i = 1; i < d.size(); ++i) EXPECT_LT(cycle_key(d[i - 1]), cycle_key(d[i]));
  for (const auto& t : d) EXPECT_EQ(t.support(), (ItemSet{1, 3, 4, 6}));
}

TEST(Cycles, InsertionBijection) {
  // {gamma (a_j b) : gamma a full cycle on A, a_j in A} = full cycles on A + {b}
  auto full_cycles = [](const ItemSet& A, int n) {
    std::set<Permutation> out;
    for (const auto& t : derangements(A, n))
      if (t.cycle_count() == 1) out.insert(t);
    return out;
  };
  const int n = 6;
  for (const auto& A : subsets_of(ItemSet::range(n), 2)) {
    if (A.size() > 5) continue;
    for (Item b = 1; b <= n; ++b) {
      if (A.contains(b)) continue;
      std::set<Permutation> produced;
      std::size_t attempts = 0;
      for (const auto& g : full_cycles(A, n))
        for (Item a : A) {
          produced.insert(g * Permutation::transposition(n, a, b));
          ++attempts;
        }
      const auto target = full_cycles(A.with(b), n);
      ASSERT_EQ(produced, target) << A.to_string() << " + " << int(b);
      ASSERT_EQ(attempts, target.size());
    }
  }
}

TEST(Young, PartitionsAndTableauxOfFour) {
  const auto ps = partitions(4);
  EXPECT_EQ(ps.size(), 5u);
  EXPECT_EQ(to_string(Partition{3, 1}), "[3,1]");
  const auto all = enumerate_syt(4);
  EXPECT_EQ(all.size(), 10u);
  std::map<std::string, int> by_shape;
  for (const auto& q : all) ++by_shape[to_string(q.shape())];
  EXPECT_EQ(by_shape["[4]"], 1);
  EXPECT_EQ(by_shape["[3,1]"], 3);
  EXPECT_EQ(by_shape["[2,2]"], 2);
  EXPECT_EQ(by_shape["[2,1,1]"], 3);
  EXPECT_EQ(by_shape["[1,1,1,1]"], 1);
  EXPECT_EQ(enumerate_syt(1).size(), 1u);
  EXPECT_EQ(enumerate_syt(3).size(), 4u);
  EXPECT_THROW(enumerate_syt(11), std::invalid_argument);
}

TEST(Young, HookDimMatchesFillingCount) {
  EXPECT_EQ(hook_dim({3, 1}), 3u);
  EXPECT_EQ(hook_dim({2, 2}), 2u);
  EXPECT_EQ(hook_dim({6}), 1u);
  for (int n = 1; n <= 7; ++n)
    for (const auto& p : partitions(n)) {
      std::size_t count = 0;
      for (const auto& q : enumerate_syt(p)) {
        ASSERT_TRUE(q.is_standard());
        ++count;
      }
      ASSERT_EQ(hook_dim(p), count) << to_string(p);
      if (n <= 6) {
        ASSERT_EQ(hook_dim(p), oracle::count_syt_by_filling(std::vector<int>(p.begin(), p.end()))) << to_string(p);
      }
    }
}

TEST(Young, EigExamples) {
  EXPECT_EQ(eig(YoungTableau({{1, 2, 3, 4}})), 4);
  EXPECT_EQ(eig(YoungTableau({{1}, {2}, {3}, {4}})), 0);
  EXPECT_EQ(eig(YoungTableau({{1, 2}, {3}, {4}})), 2);
  EXPECT_EQ(eig(YoungTableau({{1, 2, 4}, {3}})), 1);
  EXPECT_EQ(eig(YoungTableau({{1, 3}, {2, 4}})), 0);
  EXPECT_THROW(eig(YoungTableau({{2, 1}})), std::invalid_argument);
}

TEST(Young, EigClassDimensionsMatchScaleDimensions) {
  for (int n = 2; n <= 8; ++n) {
    std::map<int, std::uint64_t> dims;
    for (const auto& q : enumerate_syt(n)) dims[eig(q)] += hook_dim(q.shape());
    EXPECT_EQ(dims[n], 1u);
    EXPECT_EQ(dims.count(n - 1), 0u) << n;
    for (int k = 2; k <= n; ++k) EXPECT_EQ(dims[n - k], binomial(n, k) * derangement_number(k)) << n << " " << k;
  }
}

TEST(Young, GreedyHookReadIsWellDefined) {
  // The greedy read must land on a hook filled with exactly 1..l+m.
  for (int n = 1; n <= 10; ++n)
    for (const auto& q : enumerate_syt(n)) {
      const auto& rows = q.rows();
      int l = 0;
      while (l < static_cast<int>(rows[0].size()) && rows[0][static_cast<std::size_t>(l)] == l + 1) ++l;
      ASSERT_GE(l, 1);
      if (l < static_cast<int>(rows[0].size())) {
        ASSERT_GT(rows[0][static_cast<std::size_t>(l)], l + 1);
      }
      const int e = eig(q);
      ASSERT_TRUE(e == l || e == l - 1);
    }
}
