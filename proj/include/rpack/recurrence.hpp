// Integer sequences driven by u(n+3) = (p-1)u(n+2) - (p-1)u(n+1) + u(n), the
// widths w_n they produce, and the 2x2 orbit dynamics behind them.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rpack/exact.hpp"

namespace rpack {

enum class SeqKind { A, Beta, Gamma, X };

inline const char* to_string(SeqKind k) {
  switch (k) {
    case SeqKind::A: return "a";
    case SeqKind::Beta: return "beta";
    case SeqKind::Gamma: return "gamma";
    case SeqKind::X: return "x";
  }
  return "?";
}

// Memoized terms for a fixed p >= 4. Not thread-safe; use one per thread.
class SequenceEngine {
 public:
  explicit SequenceEngine(int p) : p_(p) {
    if (p < 4) throw DomainError("p must be at least 4");
    a_ = {Integer(0), Integer(1), Integer(p - 1)};
    // beta_0 = -1 extends beta_1, beta_2, beta_3 backwards through the recurrence.
    beta_ = {Integer(-1), Integer(1), Integer(2 * p - 1), Integer(2 * p * p - 4 * p + 1)};
    // gamma_[i] holds gamma_{i-1}
    gamma_ = {Integer(0), Integer(1), Integer(p)};
  }

  int p() const { return p_; }

  Integer a(long n) { return term(a_, n, 0); }
  Integer beta(long n) { return term(beta_, n, 0); }
  Integer gamma(long n) { return term(gamma_, n, -1); }

  // x_n = (2(a_n + a_{n-1}) - 1 + (-1)^n) / (2p)
  Rational x(long n) {
    if (n < 1) throw DomainError("x_n needs n >= 1");
    Integer num = 2 * (a(n) + a(n - 1)) - 1 + (n % 2 == 0 ? 1 : -1);
    return make_rational(num, Integer(2 * p_));
  }

  Rational seq(SeqKind kind, long n) {
    switch (kind) {
      case SeqKind::A: return Rational(a(n));
      case SeqKind::Beta: return Rational(beta(n));
      case SeqKind::Gamma: return Rational(gamma(n));
      case SeqKind::X: return x(n);
    }
    return Rational(0);
  }

  // w_n(mu) = (a_n + a_{n-1} mu) / (2(a_n + a_{n-1}) - 1)
  Rational w(long n, const Rational& mu) {
    if (n < 1) throw DomainError("w_n needs n >= 1");
    Integer s = a(n) + a(n - 1);
    return (Rational(a(n)) + Rational(a(n - 1)) * mu) / Rational(2 * s - 1);
  }

  // gamma_n / gamma_{n-1}
  Rational gamma_ratio(long n) { return make_rational(gamma(n), gamma(n - 1)); }

  // i_n = (a_n + 1)(a_{n-1} + 1) - 1
  Integer ech_index(long n) { return (a(n) + 1) * (a(n - 1) + 1) - 1; }

 private:
  const Integer& term(std::vector<Integer>& v, long n, long first) {
    if (n < first) throw DomainError("sequence index out of range");
    auto idx = static_cast<std::size_t>(n - first);
    while (v.size() <= idx) {
      std::size_t m = v.size();
      v.push_back((p_ - 1) * v[m - 1] - (p_ - 1) * v[m - 2] + v[m - 3]);
    }
    return v[idx];
  }

  int p_;
  std::vector<Integer> a_;
  std::vector<Integer> beta_;
  std::vector<Integer> gamma_;
};

inline Rational seq(int p, SeqKind kind, long n) { return SequenceEngine(p).seq(kind, n); }

inline Rational w_n(int p, long n, const Rational& mu) { return SequenceEngine(p).w(n, mu); }

// lambda = (p - 2 + sqrt(p^2 - 4p)) / 2, the limit of gamma_n / gamma_{n-1}.
inline QuadExt lambda_of(int p) {
  if (p < 4) throw DomainError("p must be at least 4");
  return QuadExt(make_rational(p - 2, 2), make_rational(1, 2), Rational(p * p - 4 * p));
}

// 0 for mu >= p, n >= 2 for mu in [gamma_n/gamma_{n-1}, gamma_{n-1}/gamma_{n-2}),
// nullopt for the accumulation piece mu <= lambda.
inline std::optional<long> interval_index(SequenceEngine& eng, const Rational& mu) {
  if (mu < 1) throw DomainError("interval_index needs mu >= 1");
  int p = eng.p();
  if (mu >= p) return 0;
  if (QuadExt(mu) <= lambda_of(p)) return std::nullopt;
  for (long n = 2;; ++n)
    if (eng.gamma_ratio(n) <= mu) return n;
}

inline std::optional<long> interval_index(int p, const Rational& mu) {
  SequenceEngine eng(p);
  return interval_index(eng, mu);
}

struct OrbitState {
  Rational R;
  Rational S;
  friend bool operator==(const OrbitState& x, const OrbitState& y) { return x.R == y.R && x.S == y.S; }
};

// M = ((p-3, -1), (-(p-4), 1)), determinant 1.
inline OrbitState orbit_step(int p, const OrbitState& s) {
  if (p < 4) throw DomainError("p must be at least 4");
  return OrbitState{Rational(p - 3) * s.R - s.S, Rational(4 - p) * s.R + s.S};
}

inline std::vector<OrbitState> orbit_trace(int p, OrbitState s, std::size_t steps) {
  std::vector<OrbitState> out{s};
  for (std::size_t i = 0; i < steps; ++i) out.push_back(s = orbit_step(p, s));
  return out;
}

// Initial state of the orbit for ball capacity c: R = B - C, S = C - D for the
// reordered class (mu+1-c; mu-c, c, ..., 1-c) after its first Cremona move.
inline OrbitState orbit_start(int p, const Rational& mu, const Rational& c) {
  Rational t = 2 * c - 1;
  return OrbitState{1 - mu + Rational(p - 1) * t, mu - 1 - Rational(p - 2) * t};
}

// det[v, Mv]; M has determinant one, so this is constant along orbits.
inline Rational orbit_invariant(int p, const OrbitState& s) {
  return Rational(4 - p) * s.R * s.R + Rational(4 - p) * s.R * s.S + s.S * s.S;
}

struct IdentityReport {
  bool ok = true;
  std::string failedIdentity;
  long failedAt = -1;
  std::size_t checks = 0;
};

// Crossed sequence phi_n = x_n y_n - x_{n+n0} y_{n-n0} satisfies the main recurrence.
namespace detail {
inline bool satisfies_recurrence(int p, const std::vector<Integer>& u) {
  for (std::size_t n = 0; n + 3 < u.size(); ++n)
    if (u[n + 3] != (p - 1) * u[n + 2] - (p - 1) * u[n + 1] + u[n]) return false;
  return true;
}
}  // namespace detail

inline IdentityReport verify_identities(int p, long N) {
  SequenceEngine eng(p);
  IdentityReport rep;
  auto fail = [&](const char* what, long n) {
    if (rep.ok) {
      rep.ok = false;
      rep.failedIdentity = what;
      rep.failedAt = n;
    }
  };
  for (long n = 1; n <= N; ++n) {
    Integer an = eng.a(n);
    Integer am = eng.a(n - 1);
    Integer bn = eng.beta(n);
    ++rep.checks;
    if (bn * bn != 4 * p * an * am + 1) fail("beta^2 = 4p a_n a_{n-1} + 1", n);
    Integer s = an + am;
    ++rep.checks;
    if (make_rational(s * s, Integer(p)) - make_rational(s, Integer(p)) != Rational(an * am)) fail("(a_n+a_{n-1})^2/p - (a_n+a_{n-1})/p = a_n a_{n-1}", n);
    ++rep.checks;
    if (bn != 2 * s - 1) fail("beta_n = 2(a_n + a_{n-1}) - 1", n);
    ++rep.checks;
    if (eng.gamma(n) != eng.a(n) * eng.beta(n + 1) - eng.a(n + 1) * eng.beta(n))
      fail("gamma_n = a_n beta_{n+1} - a_{n+1} beta_n", n);
    ++rep.checks;
    if (!is_integer(eng.x(n))) fail("x_n is an integer", n);
    ++rep.checks;
    Rational xr = Rational(p - 1) * (eng.x(n + 2) - eng.x(n + 1)) + eng.x(n) + (n % 2 == 0 ? -1 : 1);
    if (eng.x(n + 3) != xr) fail("x_{n+3} = (p-1)(x_{n+2} - x_{n+1}) + x_n + (-1)^{n+1}", n);
  }
  // phi over n in [n0+1, N]; the recurrence spans four consecutive terms.
  for (int which = 0; which < 2; ++which) {
    for (long n0 : {1L, 2L}) {
      std::vector<Integer> phi;
      for (long n = n0; n <= N; ++n) {
        Integer xn = eng.a(n);
        Integer xs = eng.a(n + n0);
        Integer yn = which == 0 ? eng.beta(n) : eng.gamma(n);
        Integer ys = which == 0 ? eng.beta(n - n0) : eng.gamma(n - n0);
        phi.push_back(xn * yn - xs * ys);
      }
      ++rep.checks;
      if (!detail::satisfies_recurrence(p, phi)) fail(which == 0 ? "crossed sequence (a, beta)" : "crossed sequence (a, gamma)", n0);
    }
  }
  return rep;
}

}  // namespace rpack
