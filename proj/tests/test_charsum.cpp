#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ffekr/charsum.hpp"
#include "oracles.hpp"

using namespace ffekr;

namespace {

DensePoly D(std::initializer_list<std::uint32_t> c) {
  std::vector<Fe> v;
  for (auto x : c) v.push_back(Fe{x});
  return DensePoly(std::move(v));
}

DensePoly linear_factor(const Field& F, Fe r) { return DensePoly({F.neg(r), F.one()}); }

// Roots of a prime-field polynomial in F_{p^m}, by evaluation.
int roots_in_extension(const Field& E, const DensePoly& f) {
  int count = 0;
  for (std::uint32_t x = 0; x < E.q(); ++x) count += poly::eval(E, f, Fe{x}).is_zero();
  return count;
}

DensePoly random_poly(const Field& F, std::mt19937_64& rng, int degree) {
  std::vector<Fe> c(static_cast<std::size_t>(degree + 1));
  for (auto& x : c) x = Fe{static_cast<std::uint32_t>(rng() % F.q())};
  c.back() = F.one();
  return DensePoly(std::move(c));
}

}  // namespace

TEST(CharSum, Examples) {
  for (std::string s : {"3^1", "5^1", "7^1", "3^2"}) {
    const Field F(s);
    EXPECT_EQ(char_sum(F, D({0, 1}), F.one()), 0) << s;
  }
  const Field F5("5");
  EXPECT_EQ(char_sum(F5, D({0, 0, 1}), F5.one()), 4);
  EXPECT_EQ(char_sum(F5, D({1, 0, 1}), F5.one()), -1);
  EXPECT_THROW(char_sum(Field("2^2"), D({0, 1}), Fe{1}), field_error);
}

TEST(QuadSumExact, Examples) {
  EXPECT_EQ(quad_sum_exact(Field("5"), Fe{1}, Fe{0}, Fe{0}), 4);
  EXPECT_EQ(quad_sum_exact(Field("3"), Fe{2}, Fe{0}, Fe{0}), -2);
  EXPECT_EQ(quad_sum_exact(Field("7"), Fe{1}, Fe{0}, Fe{1}), -1);
  EXPECT_THROW(quad_sum_exact(Field("5"), Fe{0}, Fe{1}, Fe{1}), std::invalid_argument);
  EXPECT_THROW(quad_sum_exact(Field("2^2"), Fe{1}, Fe{1}, Fe{1}), field_error);
}

TEST(QuadSumExact, MatchesDirectSumEverywhere) {
  for (std::string s : {"3^1", "5^1", "7^1", "3^2", "11^1", "13^1"}) {
    const Field F(s);
    for (std::uint32_t a = 1; a < F.q(); ++a)
      for (std::uint32_t b = 0; b < F.q(); ++b)
        for (std::uint32_t c = 0; c < F.q(); ++c)
          ASSERT_EQ(quad_sum_exact(F, Fe{a}, Fe{b}, Fe{c}), char_sum(F, DensePoly({Fe{c}, Fe{b}, Fe{a}}), F.one())) << s;
    EXPECT_TRUE(quad_sum_scan(F).ok());
  }
}

TEST(DistinctRoots, Examples) {
  const Field F5("5");
  EXPECT_EQ(distinct_root_count(F5, D({0, 0, 1})), 1);
  EXPECT_EQ(distinct_root_count(F5, D({4, 0, 1})), 2);
  EXPECT_EQ(distinct_root_count(F5, D({0, 4, 0, 0, 0, 1})), 5);
  EXPECT_EQ(distinct_root_count(F5, D({3})), 0);
  EXPECT_THROW(distinct_root_count(F5, DensePoly{}), std::invalid_argument);
  const Field F3("3");
  // (x^2 + 1)^3 = x^6 + 1 over F_3
  EXPECT_EQ(distinct_root_count(F3, D({1, 0, 0, 0, 0, 0, 1})), 2);
  // x^3 (x + 1)^4
  const auto f = poly::mul(F3, poly::power(F3, D({0, 1}), 3), poly::power(F3, D({1, 1}), 4));
  EXPECT_EQ(distinct_root_count(F3, f), 2);
}

TEST(DistinctRoots, MatchesRootsInExtensionField) {
  // Polynomials of degree <= 3 over F_p split in F_{p^6}.
  for (auto [p, ext] : std::vector<std::pair<std::string, std::string>>{{"2", "2^6"}, {"3", "3^6"}, {"5", "5^6"}}) {
    const Field F(p), E(ext);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      const DensePoly f = random_poly(F, rng, 1 + static_cast<int>(rng() % 3));
      const DensePoly g = random_poly(F, rng, 1 + static_cast<int>(rng() % 3));
      const int df = roots_in_extension(E, f), dg = roots_in_extension(E, g);
      ASSERT_EQ(distinct_root_count(F, f), df);
      // Coefficients lie in the prime field, so products and powers can be
      // evaluated in E as well.
      const auto fg = poly::mul(F, f, g);
      ASSERT_EQ(distinct_root_count(F, fg), roots_in_extension(E, fg));
      if (roots_in_extension(E, poly::gcd(F, f, g)) == 0 && poly::gcd(F, f, g).degree() == 0)
        ASSERT_EQ(distinct_root_count(F, fg), df + dg);
      const auto fp = poly::power(F, f, F.p());
      ASSERT_EQ(distinct_root_count(F, fp), df);
      const auto mixed = poly::mul(F, poly::power(F, f, F.p() + 1), g);
      ASSERT_EQ(distinct_root_count(F, mixed), roots_in_extension(E, mixed));
    }
  }
}

TEST(DistinctRoots, AdditiveOnCoprimeProducts) {
  // Split factors with known roots plus distinct irreducible quadratics, each
  // contributing two conjugate roots.
  for (std::string s : {"5^1", "7^1", "3^2", "2^3"}) {
    const Field F(s);
    std::vector<DensePoly> irreducible;
    for (std::uint32_t b = 0; b < F.q() && irreducible.size() < 4; ++b)
      for (std::uint32_t c = 1; c < F.q() && irreducible.size() < 4; ++c) {
        const DensePoly h({Fe{c}, Fe{b}, F.one()});
        bool has_root = false;
        for (std::uint32_t x = 0; x < F.q(); ++x) has_root |= poly::eval(F, h, Fe{x}).is_zero();
        if (!has_root) irreducible.push_back(h);
      }
    ASSERT_GE(irreducible.size(), 2u) << s;
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
      std::set<std::uint32_t> roots_f, roots_g;
      DensePoly f = D({1}), g = D({1});
      for (int i = 0; i < 3; ++i) {
        const std::uint32_t r = static_cast<std::uint32_t>(rng() % F.q());
        const int mult = 1 + static_cast<int>(rng() % (F.p() + 1));
        const bool into_f = roots_g.count(r) == 0 && (roots_f.count(r) || rng() % 2);
        if (into_f) {
          f = poly::mul(F, f, poly::power(F, linear_factor(F, Fe{r}), mult));
          roots_f.insert(r);
        } else if (!roots_f.count(r)) {
          g = poly::mul(F, g, poly::power(F, linear_factor(F, Fe{r}), mult));
          roots_g.insert(r);
        }
      }
      const std::size_t i = rng() % irreducible.size();
      const std::size_t j = (i + 1) % irreducible.size();
      f = poly::mul(F, f, poly::power(F, irreducible[i], 1 + rng() % 3));
      g = poly::mul(F, g, irreducible[j]);
      const int df = static_cast<int>(roots_f.size()) + 2, dg = static_cast<int>(roots_g.size()) + 2;
      ASSERT_EQ(distinct_root_count(F, f), df) << s;
      ASSERT_EQ(distinct_root_count(F, g), dg) << s;
      ASSERT_EQ(distinct_root_count(F, poly::mul(F, f, g)), df + dg) << s;
    }
  }
}

TEST(WeilCheck, Examples) {
  const Field F9("3^2");
  const auto r = weil_check(F9, D({0, 1, 0, 1}), F9.one());
  EXPECT_EQ(r.distinct_roots, 3);
  EXPECT_LE(std::abs(r.sum_value), 6);
  EXPECT_TRUE(r.within_bound);
  EXPECT_EQ(r.sum_value, char_sum(F9, D({0, 1, 0, 1}), F9.one()));

  const Field F5("5");
  const auto sq = weil_check(F5, D({1, 2, 1}), F5.one());
  EXPECT_TRUE(sq.is_square_shape);
  EXPECT_EQ(sq.sum_value, 4);
  EXPECT_FALSE(sq.within_bound);

  const auto ok = weil_check(F5, D({1, 0, 1}), F5.one());
  EXPECT_EQ(ok.sum_value, -1);
  EXPECT_FALSE(ok.is_square_shape);
  EXPECT_TRUE(ok.within_bound);
}

TEST(WeilCheck, SeededSampleHasNoViolations) {
  for (std::string s : {"3^2", "5^2", "7^2", "11^2"}) {
    const auto r = weil_sample_scan(Field(s), 1000, 5, kDefaultSeed);
    EXPECT_TRUE(r.ok()) << s;
    EXPECT_EQ(r.counters.at("scanned"), 1000);
    EXPECT_EQ(r.counters.at("violations"), 0);
  }
}

TEST(PerfectSquare, Examples) {
  const Field F5("5");
  const auto g = perfect_square_test(F5, D({1, 2, 1}));
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, D({1, 1}));
  EXPECT_FALSE(perfect_square_test(F5, D({1, 0, 1})));
  const Field F9("3^2");
  EXPECT_FALSE(perfect_square_test(F9, D({0, 0, 0, 1, 1})));
  const auto h = perfect_square_test(F9, D({0, 0, 1, 2, 1}));
  ASSERT_TRUE(h);
  EXPECT_EQ(poly::mul(F9, *h, *h), D({0, 0, 1, 2, 1}));
}

TEST(PerfectSquare, RecoversCanonicalRootAndRejectsNonSquares) {
  for (std::string s : {"3^1", "5^1", "7^1", "3^2"}) {
    const Field F(s);
    const std::uint32_t q = F.q();
    std::set<std::vector<std::uint32_t>> squares;
    for (std::uint32_t c0 = 0; c0 < q; ++c0)
      for (std::uint32_t c1 = 0; c1 < q; ++c1)
        for (std::uint32_t c2 = 0; c2 < q; ++c2) {
          const DensePoly g({Fe{c0}, Fe{c1}, Fe{c2}});
          if (g.is_zero()) continue;
          const auto sq = poly::mul(F, g, g);
          std::vector<std::uint32_t> key;
          for (Fe c : sq.coeffs) key.push_back(c.v);
          squares.insert(key);
          const auto got = perfect_square_test(F, sq);
          ASSERT_TRUE(got) << s;
          const Fe lead = g.lead(), neg_lead = F.neg(lead);
          const DensePoly want = neg_lead < lead ? poly::scale(F, g, F.neg(F.one())) : g;
          ASSERT_EQ(*got, want) << s;
        }
    // Every degree-<=4 polynomial that is not in the enumerated set of squares
    // must be rejected; sample monic quartics and quadratics.
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 3000; ++trial) {
      const DensePoly f = random_poly(F, rng, 2 * (1 + static_cast<int>(rng() % 2)));
      std::vector<std::uint32_t> key;
      for (Fe c : f.coeffs) key.push_back(c.v);
      ASSERT_EQ(perfect_square_test(F, f).has_value(), squares.count(key) == 1) << s;
    }
  }
}

TEST(FrobeniusSquares, ExhaustiveScanAtNine) {
  const auto r = frobenius_square_scan(Field("3^2"), 1);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.counters.at("scanned"), 6561);
  EXPECT_EQ(r.counters.at("violations"), 0);
  EXPECT_GT(r.counters.at("perfectSquares"), 0);
}

TEST(Shortcut, RejectsSmallOrUnsuitableFields) {
  EXPECT_THROW(shortcut_scan(Field("3^2")), field_error);
  EXPECT_THROW(shortcut_scan(Field("2^4")), field_error);
  EXPECT_THROW(shortcut_scan(Field("11")), field_error);
}

TEST(Shortcut, PositiveControlAtTwentyFive) {
  const Field F("5^2");
  // x^6 = norm(x) lies in F_5, and all of F_5 is square in F_25.
  for (std::uint32_t x = 0; x < 25; ++x) EXPECT_TRUE(F.is_square(F.pow(Fe{x}, 6)));
}

TEST(Shortcut, FullScanAtTwentyFive) {
  const auto r = shortcut_scan(Field("5^2"));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.counters.at("scanned"), 375000);
  EXPECT_EQ(r.counters.at("violations"), 0);
  EXPECT_EQ(r.counters.at("controls"), 24 * 25 * 24);
  EXPECT_EQ(r.counters.at("controlFailures"), 0);
}

TEST(McConnel, Examples) {
  const Field F5("5");
  auto found = mcconnel_scan(F5, 2);
  ASSERT_EQ(found.size(), 1u);
  for (std::uint32_t x = 0; x < 5; ++x) EXPECT_EQ(found[0].values[x], Fe{x});

  const Field F9("3^2");
  found = mcconnel_scan(F9, 2);
  ASSERT_EQ(found.size(), 2u);
  std::set<std::vector<Fe>> want;
  for (std::uint64_t e : {1, 3}) {
    std::vector<Fe> v;
    for (std::uint32_t x = 0; x < 9; ++x) v.push_back(F9.pow(Fe{x}, e));
    want.insert(v);
  }
  EXPECT_EQ((std::set<std::vector<Fe>>{found[0].values, found[1].values}), want);

  // q = 4, delta = 3: pinned from the search output (identity only).
  const Field F4("2^2");
  found = mcconnel_scan(F4, 3);
  ASSERT_EQ(found.size(), 1u);
  for (std::uint32_t x = 0; x < 4; ++x) EXPECT_EQ(found[0].values[x], Fe{x});
  EXPECT_EQ(found, mcconnel_predicted(F4, 3));

  EXPECT_THROW(mcconnel_scan(F5, 3), std::invalid_argument);
  EXPECT_THROW(mcconnel_scan(F5, 1), std::invalid_argument);
}

TEST(McConnel, SearchMatchesBruteForceAtSmallQ) {
  // Full enumeration of all maps with F(0) = 0, F(1) = 1.
  for (auto [s, delta] : std::vector<std::pair<std::string, std::uint32_t>>{{"5", 2}, {"5", 4}, {"7", 2}, {"7", 3}, {"2^2", 3}}) {
    const Field F(s);
    const std::uint32_t q = F.q();
    const std::uint64_t e = (q - 1) / delta;
    std::vector<FuncTable> brute;
    std::uint64_t total = 1;
    for (std::uint32_t i = 2; i < q; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<Fe> v(q);
      v[1] = F.one();
      std::uint64_t c = code;
      for (std::uint32_t x = 2; x < q; ++x) {
        v[x] = Fe{static_cast<std::uint32_t>(c % q)};
        c /= q;
      }
      bool ok = true;
      for (std::uint32_t x = 0; x < q && ok; ++x)
        for (std::uint32_t y = 0; y < x && ok; ++y)
          ok = F.pow(F.sub(v[x], v[y]), e) == F.pow(F.sub(Fe{x}, Fe{y}), e);
      if (ok) brute.push_back(FuncTable{v});
    }
    std::sort(brute.begin(), brute.end());
    EXPECT_EQ(mcconnel_scan(F, delta), brute) << s << " delta " << delta;
  }
}
