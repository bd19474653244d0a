// Closed-form generalized Gromov widths w_k of the trivial bundle (mu >= 1) and
// the twisted bundle (mu > 0), packing numbers and full-packing tests.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rpack/exact.hpp"
#include "rpack/recurrence.hpp"
#include "rpack/reducer.hpp"
#include "rpack/twisted8.hpp"

namespace rpack {

struct Constant {
  Rational value;
};

// slope * mu + intercept
struct Linear {
  Rational slope;
  Rational intercept;
};

// sqrt(slope * mu + intercept)
struct VolumeBound {
  Rational slope;
  Rational intercept;
};

using Formula = std::variant<Constant, Linear, VolumeBound>;

inline bool is_volume(const Formula& f) { return std::holds_alternative<VolumeBound>(f); }

inline QuadExt evaluate(const Formula& f, const QuadExt& mu) {
  if (auto* c = std::get_if<Constant>(&f)) return QuadExt(c->value);
  if (auto* l = std::get_if<Linear>(&f)) return QuadExt(l->slope) * mu + QuadExt(l->intercept);
  const auto& v = std::get<VolumeBound>(f);
  QuadExt inside = QuadExt(v.slope) * mu + QuadExt(v.intercept);
  return QuadExt::sqrt(inside.as_rational());
}

// Square of the value; defined for irrational mu as well.
inline QuadExt evaluate_squared(const Formula& f, const QuadExt& mu) {
  if (const auto* v = std::get_if<VolumeBound>(&f)) return QuadExt(v->slope) * mu + QuadExt(v->intercept);
  QuadExt x = evaluate(f, mu);
  return x * x;
}

inline std::string to_string(const Formula& f) {
  if (auto* c = std::get_if<Constant>(&f)) return to_string(c->value);
  if (auto* l = std::get_if<Linear>(&f)) return "(" + to_string(l->slope) + ")*mu + (" + to_string(l->intercept) + ")";
  const auto& v = std::get<VolumeBound>(f);
  return "sqrt((" + to_string(v.slope) + ")*mu + (" + to_string(v.intercept) + "))";
}

struct WidthPiece {
  QuadExt lo;
  std::optional<QuadExt> hi;  // nullopt: +infinity
  bool loClosed;
  bool hiClosed;
  Formula formula;
};

inline bool contains(const WidthPiece& p, const QuadExt& mu) {
  int c = compare(mu, p.lo);
  if (c < 0 || (c == 0 && !p.loClosed)) return false;
  if (!p.hi) return true;
  c = compare(mu, *p.hi);
  return c < 0 || (c == 0 && p.hiClosed);
}

// An open interval of the domain whose pieces accumulate at one end and are
// therefore not listed; width_at still evaluates there.
struct UnlistedRange {
  QuadExt lo;
  QuadExt hi;
};

struct WidthProfile {
  BundleKind bundle;
  int k;
  std::vector<WidthPiece> pieces;  // ordered by mu
  std::vector<UnlistedRange> unlisted;
};

// c_vol^2 = 2 mu / k (trivial) or (2 mu + 1) / k (twisted).
inline VolumeBound volume_bound(BundleKind b, int k) {
  if (k < 1) throw DomainError("k must be positive");
  return b == BundleKind::Trivial ? VolumeBound{make_rational(2, k), Rational(0)} : VolumeBound{make_rational(2, k), make_rational(1, k)};
}

inline QuadExt c_vol(const BundleSpec& b, int k) { return evaluate(volume_bound(b.kind, k), QuadExt(b.mu)); }

namespace detail {

inline Linear lin(long num_slope, long num_int, long den) { return Linear{make_rational(num_slope, den), make_rational(num_int, den)}; }

inline WidthPiece piece(QuadExt lo, bool loClosed, std::optional<QuadExt> hi, bool hiClosed, Formula f) {
  return WidthPiece{std::move(lo), std::move(hi), loClosed, hiClosed, std::move(f)};
}

inline Formula one() { return Constant{Rational(1)}; }

inline QuadExt q(long n, long d = 1) { return QuadExt(make_rational(n, d)); }

// k <= 7, widths recovered from the printed packing numbers.
inline std::vector<WidthPiece> small_trivial_pieces(int k) {
  const QuadExt one_ = q(1);
  switch (k) {
    case 1:
    case 2:
      return {piece(one_, true, std::nullopt, false, one())};
    case 3:
    case 4:
      return {piece(one_, true, q(2), false, lin(1, 1, 3)), piece(q(2), true, std::nullopt, false, one())};
    case 5:
      return {piece(one_, true, q(3), false, lin(1, 2, 5)), piece(q(3), true, std::nullopt, false, one())};
    case 6:
      return {piece(one_, true, q(4, 3), false, lin(2, 2, 7)), piece(q(4, 3), true, q(3), false, lin(1, 2, 5)),
              piece(q(3), true, std::nullopt, false, one())};
    case 7:
      return {piece(one_, true, q(8, 7), false, lin(4, 4, 15)), piece(q(8, 7), true, q(11, 8), false, lin(3, 4, 13)),
              piece(q(11, 8), true, q(4), false, lin(1, 3, 7)), piece(q(4), true, std::nullopt, false, one())};
  }
  throw DomainError("not a small k");
}

inline std::vector<WidthPiece> small_twisted_pieces(int k) {
  const QuadExt zero = q(0);
  switch (k) {
    case 1:
      return {piece(zero, false, std::nullopt, false, one())};
    case 2:
    case 3:
      return {piece(zero, false, q(1), false, lin(1, 1, 2)), piece(q(1), true, std::nullopt, false, one())};
    case 4:
      return {piece(zero, false, q(2), false, lin(1, 2, 4)), piece(q(2), true, std::nullopt, false, one())};
    case 5:
      return {piece(zero, false, q(2, 3), true, lin(2, 2, 5)), piece(q(2, 3), false, q(2), true, lin(1, 2, 4)),
              piece(q(2), false, std::nullopt, false, one())};
    case 6:
      return {piece(zero, false, q(1, 4), true, lin(2, 2, 5)), piece(q(1, 4), false, q(3, 5), true, lin(2, 3, 7)),
              piece(q(3, 5), false, q(3), true, lin(1, 3, 6)), piece(q(3), false, std::nullopt, false, one())};
    case 7:
      return {piece(zero, false, q(1, 7), true, lin(3, 3, 8)), piece(q(1, 7), false, q(3, 8), true, lin(4, 5, 13)),
              piece(q(3, 8), false, q(6, 11), true, lin(4, 6, 15)), piece(q(6, 11), false, q(3, 2), true, lin(3, 6, 14)),
              piece(q(3, 2), false, q(3), true, lin(1, 3, 6)), piece(q(3), false, std::nullopt, false, one())};
  }
  throw DomainError("not a small k");
}

// Trivial, k = 2p + 1 >= 9.
inline std::vector<WidthPiece> trivial_odd_pieces(int p) {
  QuadExt b1 = QuadExt(Rational(p + 1), Rational(-1), Rational(2 * p + 1));
  return {piece(q(1), true, b1, false, volume_bound(BundleKind::Trivial, 2 * p + 1)),
          piece(b1, true, q(p + 1), false, lin(1, p, 2 * p + 1)), piece(q(p + 1), true, std::nullopt, false, one())};
}

// Twisted, k >= 9; the volume piece is split at 1/2 where the small-mu regime ends.
inline std::vector<WidthPiece> twisted_large_pieces(int k) {
  int p = k / 2;
  Formula vol = volume_bound(BundleKind::Twisted, k);
  std::vector<WidthPiece> out{piece(q(0), false, q(1, 2), true, vol)};
  if (k % 2 == 0) {
    QuadExt b1(Rational(p), Rational(-1), Rational(2 * p));
    out.push_back(piece(q(1, 2), false, b1, false, vol));
    out.push_back(piece(b1, true, q(p), false, Linear{make_rational(1, 2 * p), make_rational(1, 2)}));
  } else {
    Rational p2(p * p);
    QuadExt b1(Rational(p * p * p - 2 * p * p + 1) / p2, Rational(-(p - 1)) / p2, Rational(2 * p + 1));
    QuadExt b2 = q(p * (p - 1), p + 1);
    Rational den(2 * p * p - p - 1);
    out.push_back(piece(q(1, 2), false, b1, false, vol));
    out.push_back(piece(b1, true, b2, false, Linear{Rational(p) / den, Rational(p * (p - 1)) / den}));
    out.push_back(piece(b2, true, q(p), false, Linear{make_rational(1, 2 * p), make_rational(1, 2)}));
  }
  out.push_back(piece(q(p), true, std::nullopt, false, one()));
  return out;
}

inline Linear u1_formula(long n) {
  Rational N(n), den = 32 * N * N - 1;
  return Linear{2 * N * (4 * N + 1) / den, (12 * N * N - N) / den};
}
inline Linear u2_formula(long n) {
  Rational N(n), den = 8 * N * (4 * N + 3);
  return Linear{(8 * N * N + 8 * N + 1) / den, (12 * N * N + 8 * N) / den};
}
inline Linear u3_formula(long n) {
  Rational N(n), den = 32 * N * N + 48 * N + 17;
  return Linear{2 * (4 * N * N + 7 * N + 3) / den, (12 * N * N + 17 * N + 6) / den};
}

}  // namespace detail

// Which of the twisted eight-ball pieces contains mu.
struct Twisted8Piece {
  enum Kind { U1, U2, U3, Volume } kind;
  long n;  // family index; unused for Volume
};

inline Twisted8Piece twisted8_piece(const Rational& mu) {
  if (mu <= 0) throw DomainError("twisted bundle requires mu > 0");
  const Rational half(1, 2);
  if (mu == half) return {Twisted8Piece::Volume, 0};
  if (mu < half) {
    for (long n = 0;; ++n) {
      Rational t3 = *s3(n);
      if (mu > s2(n) && mu < t3) return {Twisted8Piece::U3, n};
      if (mu == t3) return {Twisted8Piece::Volume, 0};
      if (mu > t3 && mu <= s1(n + 1)) return {Twisted8Piece::U1, n + 1};
      if (mu > s1(n + 1) && mu <= s2(n + 1)) return {Twisted8Piece::U2, n + 1};
    }
  }
  for (long m = 1;; ++m) {
    std::optional<Rational> top = s3(-m);
    Rational t3 = *s3(-(m + 1));
    if (mu > s2(-m) && (!top || mu < *top)) return {Twisted8Piece::U3, -m};
    if (mu > s1(-m) && mu <= s2(-m)) return {Twisted8Piece::U2, -m};
    if (mu > t3 && mu <= s1(-m)) return {Twisted8Piece::U1, -m};
    if (mu == t3) return {Twisted8Piece::Volume, 0};
  }
}

inline WidthProfile width(const BundleSpec& b, int k, long depth = 8) {
  if (k < 1) throw DomainError("k must be positive");
  if (depth < 2) throw DomainError("profile depth must be at least 2");
  WidthProfile prof{b.kind, k, {}, {}};
  using detail::piece;
  using detail::q;
  if (b.kind == BundleKind::Trivial) {
    if (k <= 7) {
      prof.pieces = detail::small_trivial_pieces(k);
    } else if (k % 2 == 1) {
      prof.pieces = detail::trivial_odd_pieces(k / 2);
    } else {
      int p = k / 2;
      SequenceEngine eng(p);
      QuadExt lam = lambda_of(p);
      prof.pieces.push_back(piece(q(1), true, lam, true, volume_bound(BundleKind::Trivial, k)));
      prof.unlisted.push_back({lam, QuadExt(eng.gamma_ratio(depth))});
      for (long n = depth; n >= 2; --n) {
        Rational beta(2 * (eng.a(n) + eng.a(n - 1)) - 1);
        prof.pieces.push_back(piece(QuadExt(eng.gamma_ratio(n)), true, QuadExt(eng.gamma_ratio(n - 1)), false,
                                    Linear{Rational(eng.a(n - 1)) / beta, Rational(eng.a(n)) / beta}));
      }
      prof.pieces.push_back(piece(q(p), true, std::nullopt, false, detail::one()));
    }
    return prof;
  }
  if (k <= 7) {
    prof.pieces = detail::small_twisted_pieces(k);
  } else if (k >= 9) {
    prof.pieces = detail::twisted_large_pieces(k);
  } else {
    Formula vol = volume_bound(BundleKind::Twisted, 8);
    auto point = [&](const Rational& x) { return piece(QuadExt(x), true, QuadExt(x), true, vol); };
    for (long n = 0; n <= depth; ++n) {
      if (n > 0) {
        prof.pieces.push_back(piece(QuadExt(*s3(n - 1)), false, QuadExt(s1(n)), true, detail::u1_formula(n)));
        prof.pieces.push_back(piece(QuadExt(s1(n)), false, QuadExt(s2(n)), true, detail::u2_formula(n)));
      }
      prof.pieces.push_back(piece(QuadExt(s2(n)), false, QuadExt(*s3(n)), false, detail::u3_formula(n)));
      prof.pieces.push_back(point(*s3(n)));
    }
    prof.unlisted.push_back({QuadExt(*s3(depth)), q(1, 2)});
    prof.pieces.push_back(point(make_rational(1, 2)));
    prof.unlisted.push_back({q(1, 2), QuadExt(*s3(-(depth + 1)))});
    for (long m = depth; m >= 1; --m) {
      prof.pieces.push_back(point(*s3(-(m + 1))));
      prof.pieces.push_back(piece(QuadExt(*s3(-(m + 1))), false, QuadExt(s1(-m)), true, detail::u1_formula(-m)));
      prof.pieces.push_back(piece(QuadExt(s1(-m)), false, QuadExt(s2(-m)), true, detail::u2_formula(-m)));
      std::optional<QuadExt> top;
      if (auto t = s3(-m)) top = QuadExt(*t);
      prof.pieces.push_back(piece(QuadExt(s2(-m)), false, top, false, detail::u3_formula(-m)));
    }
  }
  return prof;
}

inline void require_domain(const BundleSpec& b, int k) {
  b.validate();
  if (k < 1) throw DomainError("k must be positive");
}

inline QuadExt width_at(const BundleSpec& b, int k) {
  require_domain(b, k);
  const Rational& mu = b.mu;
  if (b.kind == BundleKind::Trivial && k >= 8 && k % 2 == 0) {
    SequenceEngine eng(k / 2);
    std::optional<long> n = interval_index(eng, mu);
    if (!n) return c_vol(b, k);
    if (*n == 0) return QuadExt(1);
    return QuadExt(eng.w(*n, mu));
  }
  if (b.kind == BundleKind::Twisted && k == 8) {
    Twisted8Piece pc = twisted8_piece(mu);
    switch (pc.kind) {
      case Twisted8Piece::U1: return QuadExt(u1(mu, pc.n));
      case Twisted8Piece::U2: return QuadExt(u2(mu, pc.n));
      case Twisted8Piece::U3: return QuadExt(u3(mu, pc.n));
      case Twisted8Piece::Volume: return c_vol(b, k);
    }
  }
  WidthProfile prof = width(b, k, 2);
  QuadExt m(mu);
  for (const WidthPiece& p : prof.pieces)
    if (contains(p, m)) return evaluate(p.formula, m);
  throw std::logic_error("width profile does not cover mu = " + to_string(mu));
}

// p_k = k w^2 / (2 vol), vol = mu (trivial) or mu + 1/2 (twisted).
inline QuadExt packing_number(const BundleSpec& b, int k) {
  QuadExt w = width_at(b, k);
  Rational twiceVol = 2 * b.mu;
  if (b.kind == BundleKind::Twisted) twiceVol += 1;
  return QuadExt(Rational(k)) * w * w / QuadExt(twiceVol);
}

inline bool full_packing_set_contains(const BundleSpec& b, int k) { return width_at(b, k) == c_vol(b, k); }

}  // namespace rpack
