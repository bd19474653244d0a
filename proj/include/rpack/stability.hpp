// Stability numbers: the least N (of a parity class) beyond which every
// packing by equal balls is full.
#pragma once

#include "rpack/twisted8.hpp"
#include "rpack/widths.hpp"

namespace rpack {

enum class Parity { Odd, Even, All };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::Odd: return "odd";
    case Parity::Even: return "even";
    case Parity::All: return "all";
  }
  return "?";
}

namespace detail {

inline long as_long(const Integer& z) { return z.get_si(); }

// ceil((mu + 2 + sqrt((mu+2)^2 + 4 sqrt(2mu+1))) / 2): the least integer m with
// 2m - mu - 2 >= 0 and (2m - mu - 2)^2 - (mu+2)^2 >= 4 sqrt(2mu + 1).
inline long ceil_twisted_odd_root(const Rational& mu) {
  long m = as_long(ceil_of((mu + 2) / 2));
  for (;; ++m) {
    Rational t = 2 * m - mu - 2;
    QuadExt lhs(t * t - (mu + 2) * (mu + 2), Rational(-4), 2 * mu + 1);
    if (t >= 0 && lhs.sign() >= 0) return m;
  }
}

inline long trivial_odd(const Rational& mu) {
  if (mu == make_rational(8, 7)) return 7;
  if (mu <= 2) return 9;
  return 2 * as_long(QuadExt(mu, Rational(1), 2 * mu).ceil()) + 1;
}

inline long trivial_even(const Rational& mu) { return 2 * as_long(ceil_of(mu + 2 + 1 / mu)); }

inline long twisted_odd(const Rational& mu) {
  if (mu == make_rational(1, 7) || mu == make_rational(3, 8)) return 7;
  if (mu < 1) return 9;
  return 2 * ceil_twisted_odd_root(mu) + 1;
}

inline long twisted_even(const Rational& mu) {
  if (in_eight_ball_full_set(mu)) return 8;
  if (mu <= make_rational(3, 2)) return 10;
  return 2 * as_long(QuadExt(mu + 1, Rational(1), 2 * mu + 1).ceil());
}

}  // namespace detail

// For All, every j >= N must be full: N = max(N_odd, N_even) - 1, since the
// integer just below the larger threshold has the other parity.
inline long stability(const BundleSpec& b, Parity parity) {
  b.validate();
  bool trivial = b.kind == BundleKind::Trivial;
  long odd = trivial ? detail::trivial_odd(b.mu) : detail::twisted_odd(b.mu);
  long even = trivial ? detail::trivial_even(b.mu) : detail::twisted_even(b.mu);
  switch (parity) {
    case Parity::Odd: return odd;
    case Parity::Even: return even;
    case Parity::All: return std::max(odd, even) - 1;
  }
  return 0;
}

}  // namespace rpack
