// ECH capacities of ellipsoids E(a,b) and polydisks P(s,t), dominance of
// capacity sequences and the ellipsoid-into-polydisk embedding test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rpack/widths.hpp"

namespace rpack {

enum class ShapeKind { Ellipsoid, Polydisk };

// Zero-indexed capacities with entry 0 equal to 0.
//   Ellipsoid(a,b): the values a m + b n (m, n >= 0) sorted with repetition.
//   Polydisk(s,t):  M_i = min { s m + t n : (m+1)(n+1) >= i+1 }.
// The prefix cache grows monotonically; do not share one object across threads.
class CapSequence {
 public:
  CapSequence(ShapeKind kind, Rational x, Rational y) : kind_(kind), x_(std::move(x)), y_(std::move(y)) {
    if (x_ <= 0 || y_ <= 0) throw DomainError("shape parameters must be positive");
  }

  static CapSequence ellipsoid(const Rational& a, const Rational& b) { return CapSequence(ShapeKind::Ellipsoid, a, b); }
  static CapSequence polydisk(const Rational& s, const Rational& t) { return CapSequence(ShapeKind::Polydisk, s, t); }

  ShapeKind kind() const { return kind_; }
  const Rational& first() const { return x_; }
  const Rational& second() const { return y_; }

  // Entries 0..count-1.
  const std::vector<Rational>& prefix(std::size_t count) {
    if (cache_.size() < count) grow(count);
    return cache_;
  }

  Rational at(std::uint64_t i) {
    if (i < cache_.size()) return cache_[i];
    return kind_ == ShapeKind::Ellipsoid ? ellipsoid_at(i) : polydisk_at(i);
  }

  CapSequence scaled(const Rational& lambda) const {
    if (lambda <= 0) throw DomainError("scale must be positive");
    return CapSequence(kind_, x_ * lambda, y_ * lambda);
  }

 private:
  void grow(std::size_t count) {
    if (kind_ == ShapeKind::Polydisk) {
      for (std::size_t i = cache_.size(); i < count; ++i) cache_.push_back(polydisk_at(i));
      return;
    }
    // Enumerate a m + b n <= cutoff and double the cutoff until it yields
    // `count` entries; everything at or below the cutoff is then certified.
    Rational cutoff = std::max(x_, y_) * 4;
    for (;;) {
      std::vector<Rational> vals;
      for (Integer n = 0; y_ * n <= cutoff; ++n) {
        Rational base = y_ * n;
        for (Integer m = 0; base + x_ * m <= cutoff; ++m) vals.push_back(base + x_ * m);
      }
      if (vals.size() >= count) {
        std::sort(vals.begin(), vals.end());
        vals.resize(count);
        cache_ = std::move(vals);
        return;
      }
      cutoff *= 2;
    }
  }

  // Number of pairs with A m + B n <= V, for integers A, B > 0 and V >= 0.
  static Integer count_below(const Integer& A, const Integer& B, const Integer& V) {
    Integer total = 0;
    for (Integer bn = 0; bn <= V; bn += B) total += (V - bn) / A + 1;
    return total;
  }

  Rational ellipsoid_at(std::uint64_t i) const {
    Integer den;
    mpz_lcm(den.get_mpz_t(), x_.get_den_mpz_t(), y_.get_den_mpz_t());
    Rational xs = x_ * den, ys = y_ * den;
    Integer A = xs.get_num(), B = ys.get_num();
    Integer target = parse_integer(std::to_string(i)) + 1;
    // Smallest V with count_below(V) >= i + 1 is itself a value a m + b n.
    Integer lo = 0, hi = std::min(A, B) * target;
    while (lo < hi) {
      Integer mid = (lo + hi) / 2;
      if (count_below(A, B, mid) >= target)
        hi = mid;
      else
        lo = mid + 1;
    }
    return make_rational(lo, den);
  }

  // For fixed m the best n is ceil(N/(m+1)) - 1 and vice versa; the optimum
  // has m or n at most ceil(sqrt(N)), so scanning both short ranges suffices.
  Rational polydisk_at(std::uint64_t i) const {
    Integer N = parse_integer(std::to_string(i)) + 1;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), N.get_mpz_t());
    if (r * r < N) ++r;
    std::optional<Rational> best;
    auto consider = [&](const Integer& m, const Integer& n) {
      Rational v = x_ * m + y_ * n;
      if (!best || v < *best) best = v;
    };
    for (Integer m = 0; m <= r; ++m) {
      Integer n;
      Integer m1 = m + 1;
      mpz_cdiv_q(n.get_mpz_t(), N.get_mpz_t(), m1.get_mpz_t());
      consider(m, n - 1);
      consider(n - 1, m);
    }
    return *best;
  }

  ShapeKind kind_;
  Rational x_;
  Rational y_;
  std::vector<Rational> cache_;
};

inline std::vector<Rational> ellipsoid_caps(const Rational& a, const Rational& b, std::size_t count) {
  CapSequence s = CapSequence::ellipsoid(a, b);
  return s.prefix(count);
}

inline std::vector<Rational> polydisk_caps(const Rational& s, const Rational& t, std::size_t count) {
  CapSequence c = CapSequence::polydisk(s, t);
  return c.prefix(count);
}

struct DominanceResult {
  bool dominated;
  std::optional<std::size_t> witnessIndex;  // first i with A_i > B_i
};

// A_i <= B_i for every i < prefixLen.
inline DominanceResult dominance(CapSequence& A, CapSequence& B, std::size_t prefixLen) {
  if (prefixLen < 1) throw DomainError("prefix length must be positive");
  const auto& a = A.prefix(prefixLen);
  const auto& b = B.prefix(prefixLen);
  for (std::size_t i = 0; i < prefixLen; ++i)
    if (a[i] > b[i]) return {false, i};
  return {true, std::nullopt};
}

inline bool dominates(CapSequence& A, CapSequence& B, std::size_t prefixLen) { return dominance(A, B, prefixLen).dominated; }

enum class EmbedMethod { WidthExact, Prefix };

inline const char* to_string(EmbedMethod m) { return m == EmbedMethod::WidthExact ? "width-exact" : "prefix"; }

struct EmbedResult {
  bool embeds;
  EmbedMethod method;
  std::optional<std::size_t> witnessIndex;
  std::size_t prefixUsed = 0;
  int k = 0;  // ratio used by the exact path
};

inline std::size_t default_prefix(const Rational& a, const Rational& b) {
  Rational ratio = std::max(a, b) / std::min(a, b);
  long k = ceil_of(ratio).get_si();
  return static_cast<std::size_t>(std::max<long>(200, 4 * k * k));
}

// E(a,b) into P(s,t). When the axis ratio is an integer k >= 8 the answer is
// a/s <= w_k of the trivial bundle with mu = t/s (after ordering the axes);
// otherwise capacities are compared on a prefix, which is conclusive only for
// a negative answer.
inline EmbedResult embeds_ellipsoid_in_polydisk(Rational a, Rational b, Rational s, Rational t,
                                                std::optional<std::size_t> prefixLen = std::nullopt) {
  if (a <= 0 || b <= 0 || s <= 0 || t <= 0) throw DomainError("shape parameters must be positive");
  if (a > b) std::swap(a, b);
  if (s > t) std::swap(s, t);
  Rational ratio = b / a;
  if (is_integer(ratio) && ratio >= 8) {
    int k = static_cast<int>(ratio.get_num().get_si());
    QuadExt w = width_at(BundleSpec{BundleKind::Trivial, t / s}, k);
    return EmbedResult{QuadExt(a / s) <= w, EmbedMethod::WidthExact, std::nullopt, 0, k};
  }
  std::size_t len = prefixLen.value_or(default_prefix(a, b));
  CapSequence E = CapSequence::ellipsoid(a, b);
  CapSequence P = CapSequence::polydisk(s, t);
  DominanceResult d = dominance(E, P, len);
  return EmbedResult{d.dominated, EmbedMethod::Prefix, d.witnessIndex, len, 0};
}

struct IndexWindow {
  Integer value;
  Integer printedLo, printedHi;
  std::optional<Integer> actualLo, actualHi;  // nullopt when the value does not occur
  bool lowerAgrees() const { return actualLo && *actualLo == printedLo; }
  bool agrees() const { return lowerAgrees() && actualHi && *actualHi == printedHi; }
};

struct IndexWindowReport {
  IndexWindow below;  // value kx - 1
  IndexWindow above;  // value kx + 1
};

// Where kx - 1 and kx + 1 occur in the capacities of E(1,k): the closed-form
// windows [kx(x+1)/2 - x, kx(x+1)/2 - 1] and [kx(x+1)/2 + x + 1, kx(x+1)/2 + 2x + 2]
// against direct enumeration.
inline IndexWindowReport index_window_check(long k, long x) {
  if (k < 2 || x < 1) throw DomainError("index_window_check needs k >= 2 and x >= 1");
  Integer K(k), X(x);
  Integer base = K * X * (X + 1) / 2;
  auto window = [&](const Integer& value, Integer lo, Integer hi) {
    IndexWindow w{value, std::move(lo), std::move(hi), std::nullopt, std::nullopt};
    // entries < value, then entries <= value, counted directly
    Integer below = 0, upto = 0;
    for (Integer n = 0; K * n <= value; ++n) {
      Integer rest = value - K * n;
      upto += rest + 1;
      below += rest;  // m < rest
    }
    if (upto > below) {
      w.actualLo = below;
      w.actualHi = upto - 1;
    }
    return w;
  };
  return IndexWindowReport{window(K * X - 1, base - X, base - 1), window(K * X + 1, base + X + 1, base + 2 * X + 2)};
}

}  // namespace rpack
