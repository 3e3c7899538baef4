#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ffekr/directions.hpp"
#include "oracles.hpp"

using namespace ffekr;

namespace {

FuncTable table(const Field& F, const std::function<Fe(Fe)>& f) {
  FuncTable t;
  for (std::uint32_t x = 0; x < F.q(); ++x) t.values.push_back(f(Fe{x}));
  return t;
}

std::vector<Fe> members(std::initializer_list<std::uint32_t> xs) {
  std::vector<Fe> v;
  for (auto x : xs) v.push_back(Fe{x});
  return v;
}

// Size of the F_p-span by closing the set under addition (every element of
// F_q is a sum of copies of the generators).
std::uint32_t span_size_by_closure(const Field& F, const std::vector<Fe>& gens) {
  const auto N = oracle::naive(F);
  std::set<std::uint32_t> span{0};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto s : std::vector<std::uint32_t>(span.begin(), span.end()))
      for (Fe g : gens) grew |= span.insert(N.add(s, g.v)).second;
  }
  return static_cast<std::uint32_t>(span.size());
}

std::uint32_t pow_u(std::uint32_t b, std::uint32_t e) {
  std::uint32_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(DirectionSet, Examples) {
  const Field F5("5");
  auto d = direction_set(F5, table(F5, [](Fe x) { return x; }));
  EXPECT_EQ(d.members, members({1}));
  EXPECT_EQ(d.span_dim, 1u);

  const Field F4("2^2");
  d = direction_set(F4, table(F4, [&](Fe x) { return F4.mul(x, x); }));
  EXPECT_EQ(d.members, members({1, 2, 3}));
  EXPECT_EQ(d.span_dim, 2u);

  // x^2 over F_5: slopes are x + y over distinct pairs.
  d = direction_set(F5, table(F5, [&](Fe x) { return F5.mul(x, x); }));
  std::set<std::uint32_t> sums;
  for (std::uint32_t x = 0; x < 5; ++x)
    for (std::uint32_t y = x + 1; y < 5; ++y) sums.insert((x + y) % 5);
  std::vector<Fe> want;
  for (auto s : sums) want.push_back(Fe{s});
  EXPECT_EQ(d.members, want);
  EXPECT_EQ(d.members, members({0, 1, 2, 3, 4}));

  EXPECT_THROW(direction_set(F5, FuncTable{members({0, 1})}), std::invalid_argument);
}

TEST(DirectionSet, MatchesNaiveSlopes) {
  for (std::string s : {"2^2", "5^1", "2^3", "3^2"}) {
    const Field F(s);
    const auto N = oracle::naive(F);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      FuncTable t;
      for (std::uint32_t x = 0; x < F.q(); ++x) t.values.push_back(Fe{static_cast<std::uint32_t>(rng() % F.q())});
      std::set<std::uint32_t> slopes;
      for (std::uint32_t x = 0; x < F.q(); ++x)
        for (std::uint32_t y = 0; y < F.q(); ++y)
          if (x != y) slopes.insert(N.mul(N.sub(t.values[x].v, t.values[y].v), N.inv(N.sub(x, y))));
      const auto d = direction_set(F, t);
      std::set<std::uint32_t> got;
      for (Fe m : d.members) got.insert(m.v);
      EXPECT_EQ(got, slopes);
      EXPECT_EQ(pow_u(F.p(), d.span_dim), span_size_by_closure(F, d.members));
    }
  }
}

TEST(AdditiveSpan, Examples) {
  const Field F4("2^2");
  EXPECT_EQ(additive_span(F4, members({1})).dim, 1u);
  EXPECT_EQ(additive_span(F4, members({1, 2})).dim, 2u);
  const Field F9("3^2");
  EXPECT_EQ(additive_span(F9, members({1, 2})).dim, 1u);
  EXPECT_EQ(additive_span(F9, members({0})).dim, 0u);
  EXPECT_THROW(additive_span(F9, {}), std::invalid_argument);
  const auto r = additive_span(F9, members({1, 2, 3, 5}));
  EXPECT_EQ(r.dim, 2u);
  EXPECT_EQ(r.basis, members({1, 3}));
}

TEST(AdditiveSpan, MonotoneAndMatchesClosure) {
  for (std::string s : {"2^3", "2^4", "3^2", "3^3", "5^2"}) {
    const Field F(s);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Fe> set;
      std::uint32_t last = 0;
      for (int i = 0; i < 4; ++i) {
        set.push_back(Fe{static_cast<std::uint32_t>(rng() % F.q())});
        const auto dim = additive_span(F, set).dim;
        EXPECT_GE(dim, last);
        last = dim;
        EXPECT_EQ(pow_u(F.p(), dim), span_size_by_closure(F, set)) << s;
      }
    }
  }
}

TEST(DirectionSet, AffineMapsHaveOneDirection) {
  for (std::string s : {"2^1", "3^1", "2^2", "5^1", "7^1", "2^3", "3^2"}) {
    const Field F(s);
    for (std::uint32_t a = 0; a < F.q(); ++a)
      for (std::uint32_t b = 0; b < F.q(); ++b) {
        const auto t = table(F, [&](Fe x) { return F.add(F.mul(Fe{a}, x), Fe{b}); });
        const auto d = direction_set(F, t);
        ASSERT_EQ(d.members, members({a}));
        ASSERT_TRUE(is_affine(F, t));
      }
  }
}

TEST(DirectionSet, InvariantUnderTranslations) {
  for (std::string s : {"2^3", "3^2", "7^1"}) {
    const Field F(s);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
      FuncTable t;
      for (std::uint32_t x = 0; x < F.q(); ++x) t.values.push_back(Fe{static_cast<std::uint32_t>(rng() % F.q())});
      const Fe c{static_cast<std::uint32_t>(rng() % F.q())};
      const auto base = direction_set(F, t);
      const auto lifted = table(F, [&](Fe x) { return F.add(t.values[x.v], c); });
      const auto moved = table(F, [&](Fe x) { return t.values[F.add(x, c).v]; });
      EXPECT_EQ(direction_set(F, lifted).members, base.members);
      EXPECT_EQ(direction_set(F, moved).members, base.members);
    }
  }
}

TEST(Carlitz, ExhaustiveAtFour) {
  const auto r = carlitz_scan(Field("2^2"));
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.counters.at("scanned"), 256);
  EXPECT_EQ(r.counters.at("affine"), 16);
  EXPECT_EQ(r.counters.at("violations"), 0);
}

TEST(Carlitz, ExhaustiveAtThreeAgreesWithBruteClassification) {
  const Field F("3");
  const auto r = carlitz_scan(F);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.counters.at("scanned"), 27);
  std::int64_t affine = 0, proper = 0;
  for (std::uint32_t code = 0; code < 27; ++code) {
    FuncTable t{members({code % 3, code / 3 % 3, code / 9})};
    const auto d = direction_set(F, t);
    affine += is_affine(F, t);
    proper += span_size_by_closure(F, d.members) < F.q();
  }
  EXPECT_EQ(r.counters.at("affine"), affine);
  EXPECT_EQ(r.counters.at("properSpan"), proper);
}

TEST(Carlitz, QEqualsTwoIsVacuous) {
  const auto r = carlitz_scan(Field("2"));
  EXPECT_EQ(r.verdict, Verdict::inapplicable);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.front().find("vacuous"), std::string::npos);
}

TEST(Carlitz, ExhaustiveBudgetRejectsNine) {
  EXPECT_THROW(carlitz_scan(Field("3^2")), budget_error);
}

TEST(Carlitz, SampleModeIsThreadIndependent) {
  const Field F("3^2");
  CarlitzOptions o;
  o.mode = CarlitzOptions::Mode::sample;
  o.samples = 20000;
  auto a = carlitz_scan(F, o);
  o.threads = 3;
  auto b = carlitz_scan(F, o);
  a.wall_time_ms = b.wall_time_ms = 0;
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.verdict, Verdict::pass);
  EXPECT_EQ(a.counters.at("scanned"), 20000);
  EXPECT_EQ(*a.seed, kDefaultSeed);
}

TEST(Carlitz, ExhaustiveThreadsAgree) {
  const Field F("2^2");
  CarlitzOptions o;
  o.threads = 4;
  auto a = carlitz_scan(F), b = carlitz_scan(F, o);
  a.wall_time_ms = b.wall_time_ms = 0;
  EXPECT_EQ(a, b);
}
