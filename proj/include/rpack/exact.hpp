// Exact rationals (GMP) and real quadratic numbers a + b*sqrt(d).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rpack {

using Integer = mpz_class;
using Rational = mpq_class;

// Raised for inputs outside a function's mathematical domain. The CLI maps
// these to exit code 1; everything else escaping is treated as internal.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedRadicandMix : public DomainError {
 public:
  UnsupportedRadicandMix() : DomainError("unsupported radicand mix") {}
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& z) { return sgn(z); }

inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

// Decimal digits only; std::string constructors of mpz would read a leading 0 as octal.
inline Integer parse_integer(const std::string& s) {
  Integer z;
  if (s.empty() || z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw DomainError("cannot parse integer: '" + s + "'");
  return z;
}

// Accepts "n", "p/q" and plain decimals such as "-0.71"; the value is exact.
inline Rational parse_rational(std::string_view text) {
  static const std::regex frac(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
  static const std::regex dec(R"(\s*([+-]?)(\d*)\.(\d+)\s*)");
  std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, frac)) {
    Integer num = parse_integer(m[1].str());
    Integer den = m[2].matched ? parse_integer(m[2].str()) : Integer(1);
    return make_rational(num, den);
  }
  if (std::regex_match(s, m, dec)) {
    std::string digits = m[2].str() + m[3].str();
    Integer num = digits.empty() ? Integer(0) : parse_integer(digits);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, m[3].length());
    if (m[1].str() == "-") num = -num;
    return make_rational(num, den);
  }
  throw DomainError("cannot parse rational: '" + s + "'");
}

namespace detail {

inline bool is_square(const Integer& z) {
  return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& z) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  return r;
}

// sqrt(q) as a rational when q is the square of one.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0 || !is_square(q.get_num()) || !is_square(q.get_den())) return std::nullopt;
  return make_rational(isqrt(q.get_num()), isqrt(q.get_den()));
}

}  // namespace detail

// rational_part + surd * sqrt(radicand). Normal form: either surd == 0 and
// radicand == 0, or radicand is an integer > 1 that is not a perfect square
// and has no square factor below kSmallFactorBound.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rational& r) : a_(r) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long v) : a_(v) {}              // NOLINT(google-explicit-constructor)
  QuadExt(Rational a, Rational b, const Rational& d) : a_(std::move(a)), b_(std::move(b)) {
    if (d < 0) throw DomainError("negative radicand");
    normalize(d);
  }

  static QuadExt sqrt(const Rational& r) { return QuadExt(Rational(0), Rational(1), r); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd() const { return b_; }
  const Rational& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  const Rational& as_rational() const {
    if (!is_rational()) throw DomainError("value is irrational: " + str());
    return a_;
  }

  int sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * d_;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
  }

  QuadExt operator-() const {
    QuadExt r(*this);
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    auto [s, scale] = common_radicand(x, y);
    QuadExt r;
    r.a_ = x.a_ + y.a_;
    r.b_ = x.b_ * scale.first + y.b_ * scale.second;
    r.d_ = s;
    r.collapse();
    return r;
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }

  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    auto [s, scale] = common_radicand(x, y);
    Rational xb = x.b_ * scale.first, yb = y.b_ * scale.second;
    QuadExt r;
    r.a_ = x.a_ * y.a_ + xb * yb * s;
    r.b_ = x.a_ * yb + xb * y.a_;
    r.d_ = s;
    r.collapse();
    return r;
  }

  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    if (y.sign() == 0) throw DomainError("division by zero");
    if (y.is_rational()) {
      QuadExt r(x);
      r.a_ /= y.a_;
      r.b_ /= y.a_;
      return r;
    }
    QuadExt conj(y.a_, -y.b_, y.d_);
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * y.d_;
    return (x * conj) / QuadExt(norm);
  }

  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend int compare(const QuadExt& x, const QuadExt& y);

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return compare(x, y) == 0; }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return compare(x, y) != 0; }
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return compare(x, y) < 0; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) { return compare(x, y) <= 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return compare(x, y) > 0; }
  friend bool operator>=(const QuadExt& x, const QuadExt& y) { return compare(x, y) >= 0; }

  // Decimal rendering with `digits` digits after the point (display only).
  std::string approx(int digits) const {
    mp_bitcnt_t bits = static_cast<mp_bitcnt_t>(digits * 4 + 128);
    mpf_class v(a_, bits);
    if (!is_rational()) {
      mpf_class s(d_, bits);
      mpf_sqrt(s.get_mpf_t(), s.get_mpf_t());
      v += mpf_class(b_, bits) * s;
    }
    mp_exp_t exp = 0;
    std::string m = v.get_str(exp, 10, 0);
    bool neg = !m.empty() && m[0] == '-';
    if (neg) m.erase(0, 1);
    if (m.empty()) m = "0", exp = 1;
    std::string intpart, frac;
    if (exp <= 0) {
      intpart = "0";
      frac = std::string(static_cast<size_t>(-exp), '0') + m;
    } else if (static_cast<size_t>(exp) >= m.size()) {
      intpart = m + std::string(static_cast<size_t>(exp) - m.size(), '0');
    } else {
      intpart = m.substr(0, static_cast<size_t>(exp));
      frac = m.substr(static_cast<size_t>(exp));
    }
    if (frac.size() < static_cast<size_t>(digits)) frac.append(static_cast<size_t>(digits) - frac.size(), '0');
    frac.resize(static_cast<size_t>(digits));
    std::string out = (neg ? "-" : "") + intpart;
    if (digits > 0) out += "." + frac;
    return out;
  }

  double to_double() const { return std::stod(approx(20)); }

  Integer floor() const {
    if (is_rational()) return floor_of(a_);
    // |b|*sqrt(d) = sqrt(b^2 d); bracket it by integer square roots of a scaled value.
    Rational t = b_ * b_ * d_;
    Integer lo = detail::isqrt(floor_of(t));
    // lo <= sqrt(t) < lo + 1, so floor(a + sgn(b) sqrt(t)) lies within 2 of this guess.
    Integer guess = sgn(b_) > 0 ? floor_of(a_ + Rational(lo)) : floor_of(a_ - Rational(lo) - 1);
    Integer n = guess - 2;
    while (QuadExt(Rational(n + 1)) <= *this) ++n;
    return n;
  }

  Integer ceil() const { return -(-*this).floor(); }

  // "(A+B*sqrt(D))/Q" with integers A, B, D and Q > 0; plain "p/q" when rational.
  std::string str() const {
    if (is_rational()) return to_string(a_);
    Integer q;
    mpz_lcm(q.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
    Rational qa = a_ * q, qb = b_ * q;
    std::string out = "(" + to_string(qa.get_num());
    out += qb >= 0 ? "+" : "-";
    Rational absb = abs(qb);
    out += to_string(absb.get_num()) + "*sqrt(" + to_string(d_) + "))/" + to_string(q);
    return out;
  }

  static QuadExt parse(std::string_view text) {
    static const std::regex quad(
        R"(\s*\(\s*([+-]?[0-9./]+)\s*([+-])\s*([0-9./]+)\s*\*\s*sqrt\(\s*([0-9./]+)\s*\)\s*\)\s*(?:/\s*([0-9./]+))?\s*)");
    static const std::regex bare(R"(\s*([+-]?)(?:([0-9./]+)\s*\*\s*)?sqrt\(\s*([0-9./]+)\s*\)\s*)");
    std::string s(text);
    std::smatch m;
    if (std::regex_match(s, m, quad)) {
      Rational a = parse_rational(m[1].str());
      Rational b = parse_rational(m[3].str());
      if (m[2].str() == "-") b = -b;
      Rational q = m[5].matched ? parse_rational(m[5].str()) : Rational(1);
      if (q == 0) throw DomainError("zero denominator in '" + s + "'");
      return QuadExt(a / q, b / q, parse_rational(m[4].str()));
    }
    if (std::regex_match(s, m, bare)) {
      Rational b = m[2].matched ? parse_rational(m[2].str()) : Rational(1);
      if (m[1].str() == "-") b = -b;
      return QuadExt(Rational(0), b, parse_rational(m[3].str()));
    }
    return QuadExt(parse_rational(s));
  }

 private:
  static constexpr unsigned long kSmallFactorBound = 1000;

  void collapse() {
    if (b_ == 0) d_ = 0;
  }

  void normalize(const Rational& d) {
    if (b_ == 0 || d == 0) {
      b_ = 0;
      d_ = 0;
      return;
    }
    // sqrt(p/q) = sqrt(p*q)/q
    Integer n = d.get_num() * d.get_den();
    Rational coef = b_ / Rational(d.get_den());
    for (unsigned long f = 2; f <= kSmallFactorBound; ++f) {
      Integer f2 = f * f;
      if (f2 > n) break;
      while (mpz_divisible_p(n.get_mpz_t(), f2.get_mpz_t())) {
        n /= f2;
        coef *= f;
      }
    }
    if (detail::is_square(n)) {
      a_ += coef * Rational(detail::isqrt(n));
      b_ = 0;
      d_ = 0;
      return;
    }
    b_ = coef;
    d_ = n;
  }

  // Radicand shared by x and y plus factors rescaling each surd to it.
  static std::pair<Rational, std::pair<Rational, Rational>> common_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.is_rational()) return {y.d_, {Rational(0), Rational(1)}};
    if (y.is_rational()) return {x.d_, {Rational(1), Rational(0)}};
    if (x.d_ == y.d_) return {x.d_, {Rational(1), Rational(1)}};
    // sqrt(dy) = r * sqrt(dx) when dy/dx is a rational square.
    auto r = detail::rational_sqrt(y.d_ / x.d_);
    if (!r) throw UnsupportedRadicandMix();
    return {x.d_, {Rational(1), *r}};
  }

  Rational a_{0};
  Rational b_{0};
  Rational d_{0};
};

// Exact sign of a + b*sqrt(d) + e*sqrt(f), using at most two squarings.
inline int sign_two_surds(const Rational& a, const Rational& b, const Rational& d, const Rational& e,
                          const Rational& f) {
  int sb = sgn(b) * (d > 0 ? 1 : 0);
  int se = sgn(e) * (f > 0 ? 1 : 0);
  int st;
  if (sb == 0) {
    st = se;
  } else if (se == 0 || sb == se) {
    st = sb;
  } else {
    int c = cmp(b * b * d, e * e * f);
    st = c == 0 ? 0 : (c > 0 ? sb : se);
  }
  int sa = sgn(a);
  if (st == 0) return sa;
  if (sa == 0 || sa == st) return st;
  // |a| vs |T| with T = b sqrt(d) + e sqrt(f): compare a^2 with b^2 d + e^2 f + 2be sqrt(df).
  QuadExt diff(a * a - b * b * d - e * e * f, -2 * b * e, d * f);
  int s = diff.sign();
  if (s == 0) return 0;
  return s > 0 ? sa : st;
}

inline int compare(const QuadExt& x, const QuadExt& y) {
  if (x.is_rational() || y.is_rational() || x.d_ == y.d_) return (x - y).sign();
  if (detail::rational_sqrt(y.d_ / x.d_)) return (x - y).sign();
  return sign_two_surds(x.a_ - y.a_, x.b_, x.d_, -y.b_, y.d_);
}

inline int sign(const QuadExt& x) { return x.sign(); }
inline std::string to_string(const QuadExt& x) { return x.str(); }

inline QuadExt min(const QuadExt& x, const QuadExt& y) { return y < x ? y : x; }
inline QuadExt max(const QuadExt& x, const QuadExt& y) { return x < y ? y : x; }

}  // namespace rpack
