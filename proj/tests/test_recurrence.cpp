#include <gtest/gtest.h>

#include <vector>

#include "rpack/recurrence.hpp"

using namespace rpack;

namespace {

// Plain recurrence from explicit seeds; a[0..2] = 0, 1, p-1.
std::vector<Integer> naive_a(int p, long N) {
  std::vector<Integer> a{0, 1, Integer(p - 1)};
  while (static_cast<long>(a.size()) <= N) {
    std::size_t m = a.size();
    a.push_back((p - 1) * a[m - 1] - (p - 1) * a[m - 2] + a[m - 3]);
  }
  return a;
}

// gamma_{-1}, gamma_0, gamma_1 = 0, 1, p; entry i holds gamma_{i-1}.
std::vector<Integer> naive_gamma(int p, long N) {
  std::vector<Integer> g{0, 1, Integer(p)};
  while (static_cast<long>(g.size()) <= N + 1) {
    std::size_t m = g.size();
    g.push_back((p - 1) * g[m - 1] - (p - 1) * g[m - 2] + g[m - 3]);
  }
  return g;
}

double to_d(const Rational& q) { return q.get_d(); }

}  // namespace

TEST(Sequences, FirstTermsForPFour) {
  SequenceEngine e(4);
  std::vector<long> a{0, 1, 3, 6, 10, 15, 21};  // triangular numbers at p = 4
  for (long n = 0; n < 7; ++n) EXPECT_EQ(e.a(n), a[n]);
  EXPECT_EQ(e.beta(1), 1);
  EXPECT_EQ(e.beta(2), 7);
  EXPECT_EQ(e.beta(3), 17);
  EXPECT_EQ(e.gamma(-1), 0);
  EXPECT_EQ(e.gamma(0), 1);
  EXPECT_EQ(e.gamma(1), 4);
}

TEST(Sequences, MatchNaiveRecurrence) {
  for (int p = 4; p <= 15; ++p) {
    SequenceEngine e(p);
    auto a = naive_a(p, 60);
    auto g = naive_gamma(p, 60);
    for (long n = 0; n <= 60; ++n) {
      EXPECT_EQ(e.a(n), a[n]) << p << " " << n;
      EXPECT_EQ(e.gamma(n - 1), g[n]) << p << " " << n;
      if (n >= 1) {
        EXPECT_EQ(e.beta(n), 2 * (a[n] + a[n - 1]) - 1) << p << " " << n;
      }
    }
  }
}

TEST(Sequences, EvaluationOrderDoesNotMatter) {
  SequenceEngine late(7), early(7);
  Integer far = late.a(80);
  for (long n = 0; n <= 80; ++n) early.a(n);
  EXPECT_EQ(early.a(80), far);
  EXPECT_EQ(seq(7, SeqKind::A, 80), Rational(far));
}

TEST(Sequences, RejectsBadIndices) {
  EXPECT_THROW(SequenceEngine(3), DomainError);
  SequenceEngine e(5);
  EXPECT_THROW(e.a(-1), DomainError);
  EXPECT_THROW(e.gamma(-2), DomainError);
  EXPECT_THROW(e.x(0), DomainError);
  EXPECT_THROW(e.w(0, Rational(1)), DomainError);
}

TEST(Identities, HoldForRangeOfP) {
  for (int p = 4; p <= 12; ++p) {
    IdentityReport r = verify_identities(p, 50);
    EXPECT_TRUE(r.ok) << "p=" << p << " " << r.failedIdentity << " at n=" << r.failedAt;
    EXPECT_EQ(r.checks, 6u * 50 + 4);
  }
}

TEST(Identities, CheckedDirectly) {
  for (int p = 4; p <= 20; ++p) {
    auto a = naive_a(p, 40);
    for (long n = 1; n <= 40; ++n) {
      Integer beta = 2 * (a[n] + a[n - 1]) - 1;
      EXPECT_EQ(beta * beta, 4 * p * a[n] * a[n - 1] + 1);
      Integer s = a[n] + a[n - 1];
      EXPECT_EQ(Integer(s * s - s), p * a[n] * a[n - 1]);
    }
  }
}

TEST(XSequence, IntegerAndRecurrent) {
  for (int p = 4; p <= 12; ++p) {
    SequenceEngine e(p);
    for (long n = 1; n <= 40; ++n) {
      ASSERT_TRUE(is_integer(e.x(n)));
      Rational sign = n % 2 == 0 ? Rational(-1) : Rational(1);
      EXPECT_EQ(e.x(n + 3), Rational(p - 1) * (e.x(n + 2) - e.x(n + 1)) + e.x(n) + sign);
    }
  }
  SequenceEngine e4(4);
  EXPECT_EQ(e4.x(1), 0);
  EXPECT_EQ(e4.x(2), 1);
  EXPECT_EQ(e4.x(3), 2);
}

TEST(Lambda, IsRootOfCharacteristicQuadratic) {
  for (int p = 4; p <= 30; ++p) {
    QuadExt l = lambda_of(p);
    EXPECT_EQ(l * l - QuadExt(Rational(p - 2)) * l + QuadExt(1), QuadExt(0));
    EXPECT_GE(l, QuadExt(1));
  }
  EXPECT_EQ(lambda_of(4), QuadExt(1));
}

TEST(Lambda, GammaRatiosDecreaseToLambda) {
  for (int p = 4; p <= 12; ++p) {
    SequenceEngine e(p);
    QuadExt l = lambda_of(p);
    for (long n = 2; n <= 60; ++n) {
      EXPECT_LT(e.gamma_ratio(n), e.gamma_ratio(n - 1));
      EXPECT_GT(QuadExt(e.gamma_ratio(n)), l);
    }
    if (p > 4) {
      EXPECT_NEAR(to_d(e.gamma_ratio(60)), l.to_double(), 1e-12);
    }
  }
}

TEST(IntervalIndex, LocatesMu) {
  for (int p = 5; p <= 10; ++p) {
    SequenceEngine e(p);
    EXPECT_EQ(interval_index(e, Rational(p)), 0);
    EXPECT_EQ(interval_index(e, Rational(p + 3)), 0);
    for (long n = 2; n <= 12; ++n) {
      Rational lo = e.gamma_ratio(n), hi = e.gamma_ratio(n - 1);
      EXPECT_EQ(interval_index(e, lo), n);
      EXPECT_EQ(interval_index(e, (lo + hi) / 2), n);
    }
  }
  EXPECT_EQ(interval_index(4, Rational(1)), std::nullopt);
  EXPECT_EQ(interval_index(6, Rational(1)), std::nullopt);
  EXPECT_THROW(interval_index(6, make_rational(1, 2)), DomainError);
}

TEST(Widths, WnFormula) {
  // k = 8, n = 3: (a3 + a2 mu) / (2(a3 + a2) - 1) = (6 + 3 mu)/17
  EXPECT_EQ(w_n(4, 3, Rational(2)), make_rational(12, 17));
  SequenceEngine e(6);
  for (long n = 1; n <= 15; ++n) {
    Rational mu = make_rational(7, 3);
    Integer an = e.a(n), am = e.a(n - 1);
    EXPECT_EQ(e.w(n, mu), (Rational(an) + Rational(am) * mu) / Rational(2 * (an + am) - 1));
  }
}

TEST(Widths, StepDownExactlyBelowGammaRatio) {
  for (int p = 4; p <= 10; ++p) {
    SequenceEngine e(p);
    for (long n = 1; n <= 25; ++n) {
      Rational g = e.gamma_ratio(n);
      for (const Rational& mu : {g, Rational(g - make_rational(1, 1000)), Rational(g + make_rational(1, 1000)), Rational(1), Rational(p + 1)}) {
        if (mu < 1) continue;
        EXPECT_EQ(e.w(n + 1, mu) <= e.w(n, mu), mu <= g) << "p=" << p << " n=" << n << " mu=" << to_string(mu);
      }
    }
  }
}

TEST(Widths, AtMostOneInteriorMinimumOverN) {
  for (int p = 4; p <= 10; ++p) {
    SequenceEngine e(p);
    for (long m = 8; m <= 8 * (p + 2); ++m) {
      Rational mu = make_rational(m, 8);
      int changes = 0, last = 0;
      for (long n = 1; n <= 30; ++n) {
        int s = sgn(Rational(e.w(n + 1, mu) - e.w(n, mu)));
        if (s != 0 && last != 0 && s != last) ++changes;
        if (s != 0) last = s;
      }
      EXPECT_LE(changes, 1) << "p=" << p << " mu=" << to_string(mu);
    }
  }
}

TEST(Widths, EchIndex) {
  SequenceEngine e(4);
  EXPECT_EQ(e.ech_index(3), 27);  // (6+1)(3+1) - 1
}

TEST(Orbit, DeterminantInvariant) {
  for (int p = 4; p <= 12; ++p)
    for (long c = 1; c <= 20; ++c) {
      OrbitState s = orbit_start(p, make_rational(5, 3), make_rational(c, 21));
      Rational inv = orbit_invariant(p, s);
      for (const OrbitState& t : orbit_trace(p, s, 30)) EXPECT_EQ(orbit_invariant(p, t), inv);
    }
}

TEST(Orbit, StepMatchesMatrix) {
  // Powers of M applied directly.
  for (int p = 4; p <= 9; ++p) {
    Integer m00 = p - 3, m01 = -1, m10 = 4 - p, m11 = 1;
    Integer P00 = 1, P01 = 0, P10 = 0, P11 = 1;
    OrbitState s{make_rational(3, 7), make_rational(-2, 5)};
    auto trace = orbit_trace(p, s, 12);
    for (std::size_t i = 0; i <= 12; ++i) {
      EXPECT_EQ(trace[i], (OrbitState{Rational(P00) * s.R + Rational(P01) * s.S, Rational(P10) * s.R + Rational(P11) * s.S}));
      Integer n00 = m00 * P00 + m01 * P10, n01 = m00 * P01 + m01 * P11;
      Integer n10 = m10 * P00 + m11 * P10, n11 = m10 * P01 + m11 * P11;
      P00 = n00, P01 = n01, P10 = n10, P11 = n11;
    }
    EXPECT_EQ(P00 * P11 - P01 * P10, 1);
  }
}

TEST(Orbit, StartState) {
  // R = B - C, S = C - D of the class after one Cremona move at mu = 2, c = 1/2, p = 4.
  OrbitState s = orbit_start(4, Rational(2), make_rational(1, 2));
  EXPECT_EQ(s.R, Rational(-1));
  EXPECT_EQ(s.S, Rational(1));
}
