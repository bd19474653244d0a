#include <gtest/gtest.h>

#include <algorithm>

#include "rpack/ech.hpp"

using namespace rpack;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

// All a m + b n up to a * count, sorted. The count-th value is at most a * count
// (take n = 0), so nothing below it is missed.
std::vector<Rational> brute_ellipsoid(const Rational& a, const Rational& b, std::size_t count) {
  Rational top = a * static_cast<long>(count);
  std::vector<Rational> v;
  for (long m = 0; a * m <= top; ++m)
    for (long n = 0; a * m + b * n <= top; ++n) v.push_back(a * m + b * n);
  std::sort(v.begin(), v.end());
  v.resize(count);
  return v;
}

Rational brute_polydisk(const Rational& s, const Rational& t, long i) {
  Rational best = s * i;
  for (long m = 0; m <= i; ++m)
    for (long n = 0; n <= i; ++n)
      if ((m + 1) * (n + 1) >= i + 1) best = std::min(best, Rational(s * m + t * n));
  return best;
}

}  // namespace

TEST(Ellipsoid, FirstTerms) {
  auto v = ellipsoid_caps(q(1), q(2), 8);
  std::vector<Rational> expect{q(0), q(1), q(2), q(2), q(3), q(3), q(4), q(4)};
  EXPECT_EQ(v, expect);
}

TEST(Ellipsoid, MatchesBruteForce) {
  for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{q(1), q(1)}, {q(1), q(8)}, {q(3, 2), q(5, 7)}, {q(2), q(2)}, {q(1, 3), q(17, 5)}}) {
    CapSequence e = CapSequence::ellipsoid(a, b);
    auto brute = brute_ellipsoid(a, b, 150);
    EXPECT_EQ(e.prefix(150), brute);
    CapSequence fresh = CapSequence::ellipsoid(a, b);
    for (std::size_t i = 0; i < 150; i += 7) EXPECT_EQ(fresh.at(i), brute[i]) << i;
  }
}

TEST(Ellipsoid, FarIndexByCounting) {
  // E(1,k): the count of m + k n <= V is sum over n of (V - k n + 1).
  CapSequence e = CapSequence::ellipsoid(q(1), q(8));
  for (long V : {100L, 1000L, 12345L}) {
    long count = 0;
    for (long n = 0; 8 * n <= V; ++n) count += V - 8 * n + 1;
    EXPECT_EQ(e.at(static_cast<std::uint64_t>(count - 1)), Rational(V));
    EXPECT_EQ(e.at(static_cast<std::uint64_t>(count)), Rational(V + 1));
  }
}

TEST(Polydisk, FirstTerms) {
  auto v = polydisk_caps(q(1), q(1), 9);
  std::vector<Rational> expect{q(0), q(1), q(2), q(2), q(3), q(3), q(4), q(4), q(4)};
  EXPECT_EQ(v, expect);
}

TEST(Polydisk, MatchesBruteForce) {
  for (auto [s, t] : std::vector<std::pair<Rational, Rational>>{{q(1), q(1)}, {q(1), q(2)}, {q(3, 2), q(5, 7)}, {q(1), q(17, 16)}}) {
    auto v = polydisk_caps(s, t, 120);
    for (long i = 0; i < 120; ++i) EXPECT_EQ(v[i], brute_polydisk(s, t, i)) << i;
    CapSequence p = CapSequence::polydisk(s, t);
    EXPECT_EQ(p.at(499), brute_polydisk(s, t, 499));
  }
}

TEST(Sequences, NondecreasingAndScaling) {
  CapSequence e = CapSequence::ellipsoid(q(3, 4), q(7, 3));
  CapSequence p = CapSequence::polydisk(q(2, 3), q(5, 2));
  const auto& ev = e.prefix(300);
  const auto& pv = p.prefix(300);
  EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
  EXPECT_TRUE(std::is_sorted(pv.begin(), pv.end()));
  CapSequence e3 = e.scaled(q(3));
  CapSequence p3 = p.scaled(q(3));
  for (std::size_t i = 0; i < 300; i += 11) {
    EXPECT_EQ(e3.at(i), 3 * ev[i]);
    EXPECT_EQ(p3.at(i), 3 * pv[i]);
  }
  EXPECT_THROW(e.scaled(q(0)), DomainError);
  EXPECT_THROW(CapSequence::polydisk(q(0), q(1)), DomainError);
}

TEST(Dominance, UsesNonStrictComparison) {
  CapSequence a = CapSequence::ellipsoid(q(1), q(1));
  CapSequence b = CapSequence::ellipsoid(q(1), q(1));
  EXPECT_TRUE(dominates(a, b, 100));
  CapSequence c = CapSequence::ellipsoid(q(1), q(3, 2));
  DominanceResult d = dominance(c, a, 100);
  EXPECT_FALSE(d.dominated);
  ASSERT_TRUE(d.witnessIndex.has_value());
  EXPECT_GT(c.at(*d.witnessIndex), a.at(*d.witnessIndex));
  EXPECT_THROW(dominance(a, b, 0), DomainError);
}

TEST(Embed, WidthExactPath) {
  // E(a, 8a) in P(1, 2): allowed iff a <= 12/17.
  EmbedResult yes = embeds_ellipsoid_in_polydisk(q(12, 17), q(96, 17), q(1), q(2));
  EXPECT_TRUE(yes.embeds);
  EXPECT_EQ(yes.method, EmbedMethod::WidthExact);
  EXPECT_EQ(yes.k, 8);
  EXPECT_FALSE(embeds_ellipsoid_in_polydisk(q(13, 17), q(104, 17), q(1), q(2)).embeds);
  // axes in either order
  EXPECT_TRUE(embeds_ellipsoid_in_polydisk(q(96, 17), q(12, 17), q(2), q(1)).embeds);
}

TEST(Embed, PrefixPathForNonIntegerRatio) {
  EmbedResult r = embeds_ellipsoid_in_polydisk(q(1), q(5, 2), q(2), q(2));
  EXPECT_EQ(r.method, EmbedMethod::Prefix);
  EXPECT_EQ(r.prefixUsed, 200u);
  EXPECT_TRUE(r.embeds);
  EmbedResult no = embeds_ellipsoid_in_polydisk(q(2), q(5), q(1), q(1));
  EXPECT_FALSE(no.embeds);
  ASSERT_TRUE(no.witnessIndex.has_value());
  EXPECT_THROW(embeds_ellipsoid_in_polydisk(q(0), q(1), q(1), q(1)), DomainError);
}

TEST(Embed, BothRoutesAgreeAwayFromTheWidth) {
  // Closed-form width against capacity dominance on a long prefix, 10% either side.
  for (int k = 8; k <= 16; ++k)
    for (long m = 4; m <= 16; m += 3) {
      Rational mu = q(m, 4);
      QuadExt w = width_at(BundleSpec{BundleKind::Trivial, mu}, k);
      Rational thousand(1000);
      Rational in = make_rational((w * QuadExt(thousand)).floor(), Integer(1000)) * q(9, 10);
      Rational out = make_rational((w * QuadExt(thousand)).ceil(), Integer(1000)) * q(11, 10);
      for (const Rational& a : {in, out}) {
        bool exact = embeds_ellipsoid_in_polydisk(a, a * k, q(1), mu).embeds;
        CapSequence E = CapSequence::ellipsoid(a, a * k);
        CapSequence P = CapSequence::polydisk(q(1), mu);
        bool caps = dominates(E, P, 3000);
        EXPECT_EQ(exact, a == in) << "k=" << k << " mu=" << to_string(mu);
        EXPECT_EQ(caps, exact) << "k=" << k << " mu=" << to_string(mu) << " a=" << to_string(a);
      }
    }
}

TEST(IndexWindow, KEightXTwo) {
  IndexWindowReport r = index_window_check(8, 2);
  EXPECT_EQ(r.above.value, 17);
  ASSERT_TRUE(r.above.actualLo.has_value());
  EXPECT_EQ(*r.above.actualLo, 27);
  EXPECT_EQ(*r.above.actualHi, 29);
  EXPECT_EQ(r.above.printedLo, 27);
  EXPECT_EQ(r.above.printedHi, 30);
  EXPECT_TRUE(r.above.lowerAgrees());
  EXPECT_FALSE(r.above.agrees());
}

TEST(IndexWindow, MatchesEnumeration) {
  for (long k = 2; k <= 12; ++k)
    for (long x = 1; x <= 6; ++x) {
      IndexWindowReport r = index_window_check(k, x);
      auto caps = brute_ellipsoid(q(1), q(k), static_cast<std::size_t>(k * x * x + 4 * k * x + 50));
      for (const IndexWindow* w : {&r.below, &r.above}) {
        Rational v(w->value);
        auto lo = std::lower_bound(caps.begin(), caps.end(), v);
        auto hi = std::upper_bound(caps.begin(), caps.end(), v);
        ASSERT_NE(hi, caps.end());
        if (lo == hi) {
          EXPECT_FALSE(w->actualLo.has_value());
        } else {
          EXPECT_EQ(*w->actualLo, lo - caps.begin());
          EXPECT_EQ(*w->actualHi, (hi - caps.begin()) - 1);
        }
      }
    }
}
