#include <gtest/gtest.h>

#include "rpack/widths.hpp"

using namespace rpack;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

BundleSpec trivial(const Rational& mu) { return {BundleKind::Trivial, mu}; }
BundleSpec twisted(const Rational& mu) { return {BundleKind::Twisted, mu}; }

const Integer kDenom = Integer(1) << 40;

void expect_matches_bisection(const BundleSpec& b, int k) {
  Bracket br = width_by_bisection(b, k, kDenom);
  QuadExt w = width_at(b, k);
  EXPECT_TRUE(bracket_contains(br, w)) << to_string(b.kind) << " mu=" << to_string(b.mu) << " k=" << k << " closed " << w.str()
                                       << " bracket [" << to_string(br.lo) << ", " << to_string(br.hi) << "]";
}

}  // namespace

TEST(WidthAt, SpotValues) {
  EXPECT_EQ(width_at(trivial(q(2)), 9), QuadExt(q(2, 3)));
  EXPECT_EQ(width_at(trivial(q(2)), 8), QuadExt(q(12, 17)));
  EXPECT_EQ(width_at(trivial(q(1)), 8), QuadExt(q(1, 2)));
  EXPECT_EQ(width_at(twisted(q(1, 2)), 8), QuadExt(q(1, 2)));
  EXPECT_EQ(width_at(twisted(q(2)), 9), QuadExt(q(20, 27)));
  EXPECT_EQ(width_at(twisted(q(17, 16)), 8), QuadExt(q(5, 8)));
}

TEST(WidthAt, VolumePieceIsIrrational) {
  // trivial k = 9, mu = 1: sqrt(2/9)
  QuadExt w = width_at(trivial(q(1)), 9);
  EXPECT_FALSE(w.is_rational());
  EXPECT_EQ(w * w, QuadExt(q(2, 9)));
}

TEST(WidthAt, DomainErrors) {
  EXPECT_THROW(width_at(trivial(q(1, 2)), 8), DomainError);
  EXPECT_THROW(width_at(twisted(q(0)), 8), DomainError);
  EXPECT_THROW(width_at(trivial(q(2)), 0), DomainError);
  EXPECT_THROW(width(trivial(q(2)), 8, 1), DomainError);
}

TEST(WidthAt, MatchesBisectionSmallGrid) {
  for (int k = 1; k <= 14; ++k) {
    for (long m = 8; m <= 56; m += 3) expect_matches_bisection(trivial(q(m, 8)), k);
    for (long m = 1; m <= 48; m += 3) expect_matches_bisection(twisted(q(m, 8)), k);
  }
}

TEST(WidthAt, MatchesBisectionInsideEvenPieces) {
  // Samples deep inside the accumulating pieces of trivial k = 2p.
  for (int p = 4; p <= 8; ++p) {
    SequenceEngine e(p);
    for (long n = 2; n <= 7; ++n) {
      Rational lo = e.gamma_ratio(n), hi = e.gamma_ratio(n - 1);
      expect_matches_bisection(trivial(lo), 2 * p);
      expect_matches_bisection(trivial((2 * lo + hi) / 3), 2 * p);
    }
  }
}

TEST(WidthAt, MatchesBisectionOnTwistedEightPieces) {
  for (long n = 1; n <= 5; ++n) {
    for (const Rational& mu : {s1(n), s2(n), *s3(n), Rational((s2(n) + *s3(n)) / 2), s1(-n), s2(-n), Rational((s1(-n) + s2(-n)) / 2)})
      expect_matches_bisection(twisted(mu), 8);
  }
  EXPECT_EQ(twisted8_piece(q(1, 2)).kind, Twisted8Piece::Volume);
}

TEST(WidthAt, NeverExceedsVolumeOrOne) {
  for (int k = 1; k <= 20; ++k)
    for (long m = 1; m <= 80; ++m) {
      BundleSpec b = twisted(q(m, 10));
      QuadExt w = width_at(b, k);
      EXPECT_LE(w, c_vol(b, k));
      EXPECT_LE(w, QuadExt(1));
      EXPECT_GT(w.sign(), 0);
      if (m >= 10) {
        BundleSpec t = trivial(q(m, 10));
        EXPECT_LE(width_at(t, k), c_vol(t, k));
        EXPECT_LE(width_at(t, k), QuadExt(1));
      }
    }
}

TEST(WidthAt, NonincreasingInK) {
  for (long m = 10; m <= 60; m += 7) {
    for (int k = 1; k < 20; ++k) {
      EXPECT_GE(width_at(trivial(q(m, 10)), k), width_at(trivial(q(m, 10)), k + 1));
      EXPECT_GE(width_at(twisted(q(m, 10)), k), width_at(twisted(q(m, 10)), k + 1));
    }
  }
}

TEST(Profile, PiecesAreOrderedAndCoverTheirRange) {
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted})
    for (int k = 1; k <= 20; ++k) {
      WidthProfile prof = width(BundleSpec{kind, Rational(kind == BundleKind::Trivial ? 1 : 1)}, k, 5);
      ASSERT_FALSE(prof.pieces.empty());
      EXPECT_FALSE(prof.pieces.back().hi.has_value());
      for (std::size_t i = 0; i + 1 < prof.pieces.size(); ++i) {
        const WidthPiece& a = prof.pieces[i];
        const WidthPiece& b = prof.pieces[i + 1];
        ASSERT_TRUE(a.hi.has_value());
        EXPECT_LE(a.lo, *a.hi);
        EXPECT_LE(*a.hi, b.lo);
        bool gap = *a.hi < b.lo;
        bool inUnlisted = false;
        for (const UnlistedRange& u : prof.unlisted) inUnlisted = inUnlisted || (u.lo == *a.hi && u.hi == b.lo);
        if (gap) {
          EXPECT_TRUE(inUnlisted) << "k=" << k << " piece " << i;
        } else {
          EXPECT_NE(a.hiClosed, b.loClosed) << "k=" << k << " piece " << i;
        }
      }
    }
}

TEST(Profile, ContinuousAtBreakpoints) {
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted})
    for (int k = 1; k <= 20; ++k) {
      WidthProfile prof = width(BundleSpec{kind, Rational(1)}, k, 6);
      for (std::size_t i = 0; i + 1 < prof.pieces.size(); ++i) {
        const WidthPiece& a = prof.pieces[i];
        const WidthPiece& b = prof.pieces[i + 1];
        if (*a.hi != b.lo) continue;
        EXPECT_EQ(evaluate_squared(a.formula, *a.hi), evaluate_squared(b.formula, b.lo)) << to_string(kind) << " k=" << k << " at " << b.lo.str();
      }
    }
}

TEST(Profile, ProfileAgreesWithWidthAt) {
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted})
    for (int k = 1; k <= 16; ++k) {
      WidthProfile prof = width(BundleSpec{kind, Rational(1)}, k, 6);
      for (const WidthPiece& pc : prof.pieces) {
        if (!pc.lo.is_rational() || !pc.loClosed) continue;
        Rational mu = pc.lo.as_rational();
        if (kind == BundleKind::Trivial && mu < 1) continue;
        if (kind == BundleKind::Twisted && mu <= 0) continue;
        EXPECT_EQ(width_at(BundleSpec{kind, mu}, k), evaluate(pc.formula, pc.lo)) << to_string(kind) << " k=" << k << " mu=" << to_string(mu);
      }
    }
}

TEST(Twisted8, PieceBoundariesAreOrdered) {
  for (long n = 0; n <= 20; ++n) {
    if (n > 0) {
      EXPECT_LT(*s3(n - 1), s1(n));
      EXPECT_LT(s1(n), s2(n));
    }
    EXPECT_LT(s2(n), *s3(n));
    EXPECT_LT(*s3(n), q(1, 2));
  }
  for (long m = 1; m <= 20; ++m) {
    EXPECT_GT(*s3(-(m + 1)), q(1, 2));
    EXPECT_LT(*s3(-(m + 1)), s1(-m));
    EXPECT_LT(s1(-m), s2(-m));
    if (m > 1) {
      EXPECT_LT(s2(-m), *s3(-m));
    }
  }
  EXPECT_FALSE(s3(-1).has_value());
}

TEST(Twisted8, UFunctionsMeetAtBreakpoints) {
  for (long n = 1; n <= 20; ++n) {
    EXPECT_EQ(u1(s1(n), n), u2(s1(n), n));
    EXPECT_EQ(u2(s2(n), n), u3(s2(n), n));
    EXPECT_EQ(u1(s1(-n), -n), u2(s1(-n), -n));
    EXPECT_EQ(u2(s2(-n), -n), u3(s2(-n), -n));
  }
  // the linear pieces touch the volume bound where the accumulating point pieces sit
  for (long n = 0; n <= 20; ++n) {
    Rational t = *s3(n), u = u3(t, n);
    EXPECT_EQ(Rational(u * u), (2 * t + 1) / 8) << n;
    Rational v = u1(t, n + 1);
    EXPECT_EQ(Rational(v * v), (2 * t + 1) / 8) << n;
  }
}

TEST(Twisted8, FullSetMembers) {
  EXPECT_TRUE(in_eight_ball_full_set(q(1, 2)));
  EXPECT_TRUE(in_eight_ball_full_set(q(1, 16)));
  EXPECT_TRUE(in_eight_ball_full_set(q(17, 16)));
  EXPECT_TRUE(in_eight_ball_full_set(q(17, 64)));
  EXPECT_TRUE(in_eight_ball_full_set(q(49, 64)));
  EXPECT_FALSE(in_eight_ball_full_set(q(1, 4)));
  EXPECT_FALSE(in_eight_ball_full_set(q(1)));
  for (long n = 1; n <= 30; ++n) {
    Rational a = make_rational(8 * n * n - 8 * n + 1, 16 * n * n), b = make_rational(8 * n * n + 8 * n + 1, 16 * n * n);
    EXPECT_TRUE(full_packing_set_contains(twisted(a), 8)) << n;
    EXPECT_TRUE(full_packing_set_contains(twisted(b), 8)) << n;
  }
}

TEST(PackingNumber, Examples) {
  EXPECT_EQ(packing_number(trivial(q(2)), 8), QuadExt(q(8 * 144, 4 * 289)));
  EXPECT_EQ(packing_number(trivial(q(1)), 9), QuadExt(1));
  EXPECT_EQ(packing_number(trivial(q(5)), 1), QuadExt(q(1, 10)));
  for (int k = 1; k <= 20; ++k)
    for (long m = 10; m <= 40; m += 5) {
      QuadExt pk = packing_number(trivial(q(m, 10)), k);
      EXPECT_LE(pk, QuadExt(1));
      EXPECT_EQ(pk == QuadExt(1), full_packing_set_contains(trivial(q(m, 10)), k));
    }
}

TEST(CVol, Values) {
  EXPECT_EQ(c_vol(trivial(q(2)), 8), QuadExt::sqrt(q(1, 2)));
  EXPECT_EQ(c_vol(trivial(q(4)), 8), QuadExt(1));
  EXPECT_EQ(c_vol(twisted(q(1, 2)), 8), QuadExt(q(1, 2)));
  EXPECT_EQ(c_vol(twisted(q(4)), 9), QuadExt(1));
}
