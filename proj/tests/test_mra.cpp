#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "rankmra/mra.hpp"

using namespace rankmra;

namespace {

const WaveletBasis& basis_for(int n) {
  static std::map<int, WaveletBasis> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_basis(n)).first;
  return it->second;
}

ObservationDesign paper_design() { return ObservationDesign(4, {{1, 3}, {2, 4}, {3, 4}, {1, 2, 3}, {1, 3, 4}}); }

/// Random coefficients on the given keys, synthesized.
RealChain random_in_span(const WaveletBasis& basis, const std::vector<std::string>& keys, std::mt19937_64& rng,
                         CoefficientVector* out = nullptr) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  CoefficientVector c{basis.n(), CoefficientScope::full, {}, {}};
  for (const auto& k : keys) c.coeffs.emplace_back(k, coef(rng));
  if (out) *out = c;
  return synthesize(c, basis);
}

std::vector<std::string> keys_up_to_scale(const WaveletBasis& basis, int k) {
  std::vector<std::string> keys;
  for (const auto& e : basis.elements())
    if (e.scale() <= k) keys.push_back(e.key);
  return keys;
}

}  // namespace

TEST(Basis, SizesAndScaleCounts) {
  EXPECT_EQ(build_basis(2).size(), 2u);
  std::map<int, int> by_scale;
  for (const auto& e : basis_for(4).elements()) ++by_scale[e.scale()];
  EXPECT_EQ(basis_for(4).size(), 24u);
  EXPECT_EQ(by_scale, (std::map<int, int>{{0, 1}, {2, 6}, {3, 8}, {4, 9}}));
  by_scale.clear();
  for (const auto& e : basis_for(5).elements()) ++by_scale[e.scale()];
  EXPECT_EQ(by_scale, (std::map<int, int>{{0, 1}, {2, 10}, {3, 20}, {4, 45}, {5, 44}}));
  EXPECT_THROW(build_basis(1), std::invalid_argument);
  EXPECT_THROW(build_basis(9), std::invalid_argument);
}

TEST(Basis, DeterministicOrderIndependentOfWorkers) {
  const auto a = build_basis(5, 1);
  const auto b = build_basis(5, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].key, b[i].key);
    ASSERT_EQ(a[i].psi, b[i].psi);
  }
  EXPECT_EQ(a[0].key, "id");
  for (std::size_t i = 2; i < a.size(); ++i) {
    const auto s1 = a[i - 1].tau.support();
    const auto s2 = a[i].tau.support();
    ASSERT_TRUE(s1 < s2 || (s1 == s2 && a[i - 1].key < a[i].key));
  }
}

TEST(Basis, PermutationRankMatchesEnumeration) {
  const auto words = all_rankings(5);
  for (std::size_t i = 0; i < words.size(); ++i) ASSERT_EQ(permutation_rank(words[i], 5), i);
}

TEST(Decompose, Examples) {
  const int n = 4;
  const auto& basis = basis_for(n);
  const WaveletAnalyzer an(basis);
  const auto uniform = RealChain::indicator(n, all_rankings(n)) * (1.0 / 24.0);
  const auto c = an.decompose(uniform);
  EXPECT_NEAR(c.value("id"), 1.0 / 24.0, 1e-12);
  for (const auto& [k, v] : c.coeffs)
    if (k != "id") {
      EXPECT_NEAR(v, 0.0, 1e-12) << k;
    }

  const auto c12 = an.decompose(basis.at("(1 2)").psi.cast<double>());
  for (const auto& [k, v] : c12.coeffs) EXPECT_NEAR(v, k == "(1 2)" ? 1.0 : 0.0, 1e-12) << k;
  EXPECT_EQ(c12.keys(), std::vector<std::string>([&] {
              std::vector<std::string> k;
              for (const auto& e : basis.elements()) k.push_back(e.key);
              return k;
            }()));
}

TEST(Decompose, DiracRoundTripFive) {
  const int n = 5;
  const WaveletAnalyzer an(basis_for(n));
  const auto perms = all_rankings(n);
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const auto f = RealChain::dirac(n, perms[rng() % perms.size()]);
    worst = std::max(worst, max_abs_difference(an.synthesize(an.decompose(f)), f));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Decompose, RejectsBadInput) {
  const WaveletAnalyzer an(basis_for(3));
  EXPECT_THROW(an.decompose(RealChain(4)), std::invalid_argument);
  EXPECT_THROW(an.decompose(RealChain::dirac(3, Word{1, 2})), std::invalid_argument);
  const auto b7 = build_basis(7);
  EXPECT_THROW(WaveletAnalyzer{b7}, std::invalid_argument);
}

TEST(Synthesize, Examples) {
  const int n = 4;
  const auto& basis = basis_for(n);
  const auto one = synthesize({n, CoefficientScope::full, {{"id", 1.0}}, {}}, basis);
  EXPECT_EQ(one, RealChain::indicator(n, all_rankings(n)));
  const auto diff = synthesize({n, CoefficientScope::full, {{"(1 2)", 1.0}, {"(1 3)", -1.0}}, {}}, basis);
  RealChain expected = basis.at("(1 2)").psi.cast<double>();
  expected -= basis.at("(1 3)").psi.cast<double>();
  EXPECT_EQ(diff, expected);
  EXPECT_THROW(synthesize({n, CoefficientScope::full, {{"(1 5)", 1.0}}, {}}, basis), std::out_of_range);
}

TEST(Synthesize, RandomRoundTrip) {
  std::mt19937_64 rng(41);
  for (int n = 3; n <= 5; ++n) {
    const WaveletAnalyzer an(basis_for(n));
    const auto f = oracle::random_function(n, rng);
    EXPECT_LE(max_abs_difference(an.synthesize(an.decompose(f)), f), 1e-8);
  }
}

TEST(DesignAnalysis, PaperExampleKeys) {
  const auto taus = design_permutations(paper_design());
  std::vector<std::string> keys;
  for (const auto& t : taus) keys.push_back(cycle_key(t));
  const std::set<std::string> got(keys.begin(), keys.end());
  const std::set<std::string> expected{"id",    "(1 2)", "(1 3)",   "(1 4)",   "(2 3)",   "(2 4)",
                                       "(3 4)", "(1 2 3)", "(1 3 2)", "(1 3 4)", "(1 4 3)"};
  EXPECT_EQ(keys.size(), 11u);
  EXPECT_EQ(got, expected);
}

TEST(DesignAnalysis, UniformMarginals) {
  const auto d = paper_design();
  const auto fam = exact_marginals(RealChain::indicator(4, all_rankings(4)) * (1.0 / 24.0), d);
  const auto c = decompose_marginals(fam);
  EXPECT_EQ(c.scope, CoefficientScope::design);
  EXPECT_NEAR(c.value("id"), 1.0 / 24.0, 1e-12);
  for (const auto& [k, v] : c.coeffs)
    if (k != "id") {
      EXPECT_NEAR(v, 0.0, 1e-12);
    }
}

TEST(DesignAnalysis, RecoversPlantedCoefficients) {
  std::mt19937_64 rng(43);
  const std::vector<ObservationDesign> designs{
      paper_design(),
      ObservationDesign(5, {{1, 2}, {2, 3, 4}, {1, 4, 5}, {3, 5}}),
      ObservationDesign(5, {{1, 2, 3, 4, 5}}),
      ObservationDesign(6, {{1, 2, 3}, {3, 4, 5, 6}, {1, 6}}),
  };
  for (const auto& d : designs) {
    const auto& basis = basis_for(d.n());
    std::vector<std::string> keys;
    for (const auto& t : design_permutations(d)) keys.push_back(cycle_key(t));
    CoefficientVector planted;
    const auto f = random_in_span(basis, keys, rng, &planted);
    const auto got = decompose_marginals(exact_marginals(f, d), basis);
    ASSERT_EQ(got.keys(), keys);
    for (std::size_t i = 0; i < keys.size(); ++i) EXPECT_NEAR(got.coeffs[i].second, planted.coeffs[i].second, 1e-8) << keys[i];
  }
}

TEST(DesignAnalysis, MarginalsOfAnyFunctionAreReproduced) {
  std::mt19937_64 rng(47);
  const auto d = paper_design();
  const auto f = oracle::random_function(4, rng);
  const auto c = decompose_marginals(exact_marginals(f, d));
  const auto g = synthesize(c, basis_for(4));
  for (const auto& A : d.subsets()) EXPECT_LE(max_abs_difference(marginal(g, A), marginal(f, A)), 1e-8);
}

TEST(DesignAnalysis, RejectsNonProjectiveFamily) {
  const ObservationDesign d(3, {{1, 2}, {1, 2, 3}});
  MarginalFamily<double> fam{d, {}};
  fam.per_subset.emplace(ItemSet{1, 2}, RealChain::dirac(3, Word{1, 2}));
  fam.per_subset.emplace(ItemSet{1, 2, 3}, RealChain::dirac(3, Word{3, 2, 1}));
  try {
    decompose_marginals(fam);
    FAIL() << "expected ProjectivityError";
  } catch (const ProjectivityError& e) {
    EXPECT_FALSE(e.report().passed());
  }
}

TEST(DesignAnalysis, InconsistentOverlapsFailResidual) {
  // {1,2,3} and {2,3,4} disagree on the order of 2 and 3; no nested pair, so
  // only the residual can notice.
  const ObservationDesign d(4, {{1, 2, 3}, {2, 3, 4}});
  MarginalFamily<double> fam{d, {}};
  fam.per_subset.emplace(ItemSet{1, 2, 3}, RealChain::dirac(4, Word{1, 2, 3}));
  fam.per_subset.emplace(ItemSet{2, 3, 4}, RealChain::dirac(4, Word{3, 2, 4}));
  EXPECT_THROW(decompose_marginals(fam), SolverError);
}

TEST(KernelCharacterization, InvisibleWaveletsVanishOnDesign) {
  std::mt19937_64 rng(53);
  const std::vector<ObservationDesign> designs{
      paper_design(), ObservationDesign(5, {{1, 2}, {2, 3, 4}, {1, 4, 5}}), ObservationDesign(5, {{1, 2, 3, 4}, {4, 5}})};
  for (const auto& d : designs) {
    const auto& basis = basis_for(d.n());
    std::set<std::string> visible;
    for (const auto& t : design_permutations(d)) visible.insert(cycle_key(t));
    std::vector<std::string> hidden;
    for (const auto& e : basis.elements())
      if (!visible.count(e.key)) hidden.push_back(e.key);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_in_span(basis, hidden, rng);
      for (const auto& A : d.subsets()) EXPECT_LE(marginal(f, A).max_abs(), 1e-9);
    }
  }
}

TEST(Dezoom, FixesScaleSpaceAndFullScale) {
  std::mt19937_64 rng(59);
  for (int n = 3; n <= 5; ++n) {
    const auto& basis = basis_for(n);
    const WaveletAnalyzer an(basis);
    for (int k = 2; k <= n; ++k) {
      const auto f = random_in_span(basis, keys_up_to_scale(basis, k), rng);
      EXPECT_LE(max_abs_difference(an.dezoom(f, k), f), 1e-8);
    }
    const auto g = oracle::random_function(n, rng);
    EXPECT_LE(max_abs_difference(an.dezoom(g, n), g), 1e-8);
  }
}

TEST(Dezoom, ZeroScaleIsMean) {
  std::mt19937_64 rng(61);
  const auto f = oracle::random_function(4, rng);
  const auto z = dezoom(f, 0, basis_for(4));
  for (const auto& w : all_rankings(4)) EXPECT_NEAR(z(w), f.sum() / 24.0, 1e-12);
}

TEST(Dezoom, MatchesScaleMarginals) {
  std::mt19937_64 rng(67);
  const int n = 5;
  const WaveletAnalyzer an(basis_for(n));
  const auto f = oracle::random_function(n, rng);
  for (int k = 2; k < n; ++k) {
    const auto g = an.dezoom(f, k);
    for (const auto& A : subsets_of(ItemSet::range(n), 2))
      if (static_cast<int>(A.size()) == k) {
        EXPECT_LE(max_abs_difference(marginal(g, A), marginal(f, A)), 1e-8);
      }
  }
}

TEST(Dezoom, IdempotentNestedAndTranslationInvariant) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const WaveletAnalyzer an(basis_for(n));
    const auto f = oracle::random_function(n, rng);
    const int k = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    const int k2 = k + static_cast<int>(rng() % static_cast<unsigned>(n - k + 1));
    const auto once = an.dezoom(f, k);
    EXPECT_LE(max_abs_difference(an.dezoom(once, k), once), 1e-8);
    EXPECT_LE(max_abs_difference(an.dezoom(an.dezoom(f, k2), k), once), 1e-8);
    const auto s = oracle::random_permutation(n, rng);
    EXPECT_LE(max_abs_difference(translate(once, s), an.dezoom(translate(f, s), k)), 1e-8);
  }
}

TEST(Dezoom, RejectsInvalidScale) {
  const WaveletAnalyzer an(basis_for(3));
  const auto f = RealChain::indicator(3, all_rankings(3));
  EXPECT_THROW(an.dezoom(f, 1), std::invalid_argument);
  EXPECT_THROW(an.dezoom(f, 4), std::invalid_argument);
  EXPECT_THROW(an.dezoom(f, -1), std::invalid_argument);
}

TEST(Displacement, TranslatedWaveletsSolveExactlyOnTargetSupport) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const auto& basis = basis_for(n);
    const auto& e = basis[1 + rng() % (basis.size() - 1)];
    const auto s = oracle::random_permutation(n, rng);
    std::vector<Item> image;
    for (Item a : e.tau.support()) image.push_back(s(a));
    const ItemSet B(image);
    const auto targets = derangements(B, n);
    const auto full = all_rankings(n);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(full.size()), static_cast<Eigen::Index>(targets.size()));
    for (std::size_t j = 0; j < targets.size(); ++j)
      m.col(static_cast<Eigen::Index>(j)) = to_dense(basis.at(cycle_key(targets[j])).psi.cast<double>());
    const Eigen::VectorXd rhs = to_dense(translate(e.psi, s).cast<double>());
    const Eigen::VectorXd sol = m.colPivHouseholderQr().solve(rhs);
    ASSERT_LE((m * sol - rhs).cwiseAbs().maxCoeff(), 1e-10) << e.key;
  }
}

TEST(Dimensions, FourMatchesTable) {
  const auto r = verify_dimensions(4);
  EXPECT_TRUE(r.passed()) << r.to_string();
  ASSERT_EQ(r.scales.size(), 4u);
  EXPECT_EQ(r.scales[0].wavelets, 1u);
  EXPECT_EQ(r.scales[1].wavelets, 6u);
  EXPECT_EQ(r.scales[2].wavelets, 8u);
  EXPECT_EQ(r.scales[3].wavelets, 9u);
  EXPECT_EQ(r.scales[1].eig_dim, 6u);
  EXPECT_EQ(r.scales[2].eig_dim, 8u);
  EXPECT_EQ(r.scales[3].eig_dim, 9u);
  EXPECT_EQ(r.total, 24u);
  ASSERT_TRUE(r.rank.has_value());
  EXPECT_EQ(*r.rank, 24);
  EXPECT_NE(r.to_string().find("24 = 24"), std::string::npos);
}

TEST(Dimensions, LargeNCountsWithoutRank) {
  for (int n = 7; n <= 8; ++n) {
    const auto r = verify_dimensions(n);
    EXPECT_TRUE(r.passed()) << r.to_string();
    EXPECT_FALSE(r.rank.has_value());
  }
  EXPECT_THROW(verify_dimensions(9), std::invalid_argument);
}

TEST(Dimensions, CorruptionIsDetected) {
  VerifyOptions opts;
  opts.corrupt_basis = true;
  const auto r = verify_dimensions(4, opts);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(*r.rank, 23);
}
