// Eight balls in the twisted bundle: the u/s functions cutting the width into
// pieces, the three families of obstructing classes, and the E8 bijection
// that produces them.
#pragma once

#include <array>
#include <optional>

#include "rpack/exact.hpp"
#include "rpack/lattice.hpp"

namespace rpack {

// u1(mu,n) = (2n(4n+1)mu + 12n^2 - n) / (32n^2 - 1)
inline Rational u1(const Rational& mu, long n) {
  if (n == 0) throw DomainError("u1 is undefined at n = 0");
  Rational N(n);
  return (2 * N * (4 * N + 1) * mu + 12 * N * N - N) / (32 * N * N - 1);
}

// u2(mu,n) = ((8n^2+8n+1) mu + 12n^2 + 8n) / (8n(4n+3))
inline Rational u2(const Rational& mu, long n) {
  if (n == 0) throw DomainError("u2 is undefined at n = 0");
  Rational N(n);
  return ((8 * N * N + 8 * N + 1) * mu + 12 * N * N + 8 * N) / (8 * N * (4 * N + 3));
}

// u3(mu,n) = (2(4n^2+7n+3) mu + 12n^2 + 17n + 6) / (32n^2 + 48n + 17)
inline Rational u3(const Rational& mu, long n) {
  Rational N(n);
  return (2 * (4 * N * N + 7 * N + 3) * mu + 12 * N * N + 17 * N + 6) / (32 * N * N + 48 * N + 17);
}

struct UValues {
  std::optional<Rational> u1;
  std::optional<Rational> u2;
  Rational u3;
};

inline UValues u_functions(const Rational& mu, long n) {
  UValues v{std::nullopt, std::nullopt, u3(mu, n)};
  if (n != 0) {
    v.u1 = u1(mu, n);
    v.u2 = u2(mu, n);
  }
  return v;
}

inline Rational s1(long n) {
  Rational N(n);
  return 4 * N * (3 * N - 2) / (24 * N * N + 8 * N + 1);
}

inline Rational s2(long n) {
  Rational N(n);
  return 4 * N * (3 * N + 2) / (24 * N * N + 40 * N + 17);
}

// nullopt stands for +infinity (n = -1).
inline std::optional<Rational> s3(long n) {
  if (n == -1) return std::nullopt;
  Rational N(n);
  return (8 * N * N + 8 * N + 1) / (16 * (N + 1) * (N + 1));
}

struct SValues {
  Rational s1;
  Rational s2;
  std::optional<Rational> s3;
};

inline SValues s_functions(long n) { return SValues{s1(n), s2(n), s3(n)}; }

// Full packings by eight balls: (8n^2 - 8n + 1)/16n^2, 1/2, (8n^2 + 8n + 1)/16n^2 for n >= 1.
inline bool in_eight_ball_full_set(const Rational& mu) {
  if (mu == make_rational(1, 2)) return true;
  // Both families solve 16 n^2 mu = 8n^2 +- 8n + 1, i.e. (16mu - 8) n^2 -+ 8n - 1 = 0.
  Rational a = 16 * mu - 8;
  if (a == 0) return false;
  Rational disc = 64 + 4 * a;
  auto r = detail::rational_sqrt(disc);
  if (!r) return false;
  for (int s : {1, -1}) {
    for (int t : {1, -1}) {
      Rational n = (Rational(8 * s) + t * *r) / (2 * a);
      if (is_integer(n) && n >= 1) return true;
    }
  }
  return false;
}

enum class E8Family { I, II, III };

inline const char* to_string(E8Family f) {
  switch (f) {
    case E8Family::I: return "I";
    case E8Family::II: return "II";
    case E8Family::III: return "III";
  }
  return "?";
}

// I:   (n(12n-1); n(4n-3), 4n^2-1, (4n^2)^7)
// II:  (4n(3n+2); 4n^2-1, (n(4n+3))^8)
// III: ((3n+2)(4n+3); n(4n+3), 2(n+1)(2n+1)+1, (2(n+1)(2n+1))^7)
inline HClass e8_family(E8Family f, long n) {
  Integer N(n);
  std::vector<QuadExt> tail;
  QuadExt a0;
  auto rep = [&](const Integer& v, int times) {
    for (int i = 0; i < times; ++i) tail.emplace_back(Rational(v));
  };
  switch (f) {
    case E8Family::I:
      a0 = Rational(Integer(N * (12 * N - 1)));
      rep(N * (4 * N - 3), 1);
      rep(4 * N * N - 1, 1);
      rep(4 * N * N, 7);
      break;
    case E8Family::II:
      a0 = Rational(Integer(4 * N * (3 * N + 2)));
      rep(4 * N * N - 1, 1);
      rep(N * (4 * N + 3), 8);
      break;
    case E8Family::III:
      a0 = Rational(Integer((3 * N + 2) * (4 * N + 3)));
      rep(N * (4 * N + 3), 1);
      rep(2 * (N + 1) * (2 * N + 1) + 1, 1);
      rep(2 * (N + 1) * (2 * N + 1), 7);
      break;
  }
  return HClass(a0, std::move(tail));
}

using E8Coords = std::array<Integer, 8>;

// Root lattice element sum c_i alpha_i on X_9 with alpha_0 = L - E1 - E2 - E3
// and alpha_i = E_i - E_{i+1}, i = 1..7.
inline HClass e8_root_class(const E8Coords& c) {
  HClass a = HClass::zero(9);
  a.a0() = Rational(c[0]);
  for (std::size_t j = 1; j <= 8; ++j) {
    Integer t = (j <= 3 ? c[0] : Integer(0));
    if (j <= 7) t -= c[j];
    if (j >= 2) t += c[j - 1];
    a.tail()[j - 1] = Rational(t);
  }
  return a;
}

// T(alpha) = E9 - alpha - (alpha.alpha / 2) K
inline HClass e8_bijection(const E8Coords& c) {
  HClass alpha = e8_root_class(c);
  QuadExt half = self_intersection(alpha) / QuadExt(2);
  HClass k = HClass::canonical(9);
  HClass e9 = HClass::exceptional(9, 8);
  HClass r = HClass::zero(9);
  r.a0() = e9.a0() - alpha.a0() - half * k.a0();
  for (std::size_t i = 0; i < 9; ++i) r.tail()[i] = e9[i] - alpha[i] - half * k[i];
  return r;
}

// T^-1(E) = E9 - E + (1 + E.E9) K, read back in root coordinates; nullopt when
// the result is not in the span of the simple roots.
inline std::optional<E8Coords> e8_inverse(const HClass& e) {
  if (e.n() != 9) throw DomainError("E8 bijection lives on X_9");
  HClass k = HClass::canonical(9);
  HClass e9 = HClass::exceptional(9, 8);
  QuadExt f = QuadExt(1) + pairing(e, e9);
  HClass r = HClass::zero(9);
  r.a0() = e9.a0() - e.a0() + f * k.a0();
  for (std::size_t i = 0; i < 9; ++i) r.tail()[i] = e9[i] - e[i] + f * k[i];
  if (!r.is_rational()) return std::nullopt;
  auto to_int = [](const QuadExt& x) -> std::optional<Integer> {
    const Rational& q = x.rational_part();
    if (!is_integer(q)) return std::nullopt;
    return q.get_num();
  };
  E8Coords c;
  auto c0 = to_int(r.a0());
  if (!c0) return std::nullopt;
  c[0] = *c0;
  for (std::size_t j = 1; j <= 7; ++j) {
    auto t = to_int(r[j - 1]);
    if (!t) return std::nullopt;
    c[j] = (j <= 3 ? c[0] : Integer(0)) + (j >= 2 ? c[j - 1] : Integer(0)) - *t;
  }
  if (e8_root_class(c) != r) return std::nullopt;
  return c;
}

// Root coordinates whose images under T are the three families.
inline E8Coords e8_family_coords(E8Family f, long n) {
  Integer N(n);
  Integer second = f == E8Family::I ? Integer(2 - 2 * N) : f == E8Family::II ? Integer(1 - 2 * N) : Integer(-2 * N);
  return E8Coords{N + 3, second, Integer(3 - N), 5, 4, 3, 2, 1};
}

}  // namespace rpack
