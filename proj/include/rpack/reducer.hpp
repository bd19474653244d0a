// Cremona reduction: decides whether a rational class lies in the closure of
// the symplectic cone of a blow-up of CP^2, records the moves used, extracts
// obstructing exceptional classes and brackets ball widths by bisection.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpack/exact.hpp"
#include "rpack/lattice.hpp"

namespace rpack {

inline constexpr std::size_t kDefaultMaxIter = 1'000'000;

class IterationBudgetExhausted : public std::runtime_error {
 public:
  explicit IterationBudgetExhausted(std::size_t n)
      : std::runtime_error("iteration budget exhausted after " + std::to_string(n) + " Cremona moves") {}
};

enum class Verdict { Interior, Boundary, Exterior };

enum class ExteriorReason { None, NegativeSquare, NegativeA0, NegativeEntry };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Interior: return "interior";
    case Verdict::Boundary: return "boundary";
    case Verdict::Exterior: return "exterior";
  }
  return "?";
}

inline const char* to_string(ExteriorReason r) {
  switch (r) {
    case ExteriorReason::None: return "none";
    case ExteriorReason::NegativeSquare: return "negative-square";
    case ExteriorReason::NegativeA0: return "negative-a0";
    case ExteriorReason::NegativeEntry: return "negative-entry";
  }
  return "?";
}

struct ReductionOutcome {
  Verdict verdict;
  ExteriorReason reason;
  HClass input;
  HClass finalClass;
  MoveWord word;
  std::size_t iterations;  // number of Cremona moves
};

enum class BundleKind { Trivial, Twisted };

inline const char* to_string(BundleKind b) { return b == BundleKind::Trivial ? "trivial" : "twisted"; }

struct BundleSpec {
  BundleKind kind;
  Rational mu;

  void validate() const {
    if (kind == BundleKind::Trivial && mu < 1) throw DomainError("trivial bundle requires mu >= 1");
    if (kind == BundleKind::Twisted && mu <= 0) throw DomainError("twisted bundle requires mu > 0");
  }
};

// k balls of capacity c: (mu+1-c; mu-c, c^(k-1), 1-c) for the trivial bundle and
// (mu+1; mu, c^k) for the twisted one. Tails shorter than three are padded with
// zeros (a zero-size blow-up does not change whether the class is exterior).
inline HClass ball_vector(const BundleSpec& b, int k, const QuadExt& c) {
  b.validate();
  if (k < 1) throw DomainError("k must be positive");
  if (c.sign() <= 0) throw DomainError("capacity must be positive");
  QuadExt mu(b.mu);
  std::vector<QuadExt> tail;
  QuadExt a0;
  if (b.kind == BundleKind::Trivial) {
    a0 = mu + QuadExt(1) - c;
    tail.push_back(mu - c);
    for (int i = 1; i < k; ++i) tail.push_back(c);
    tail.push_back(QuadExt(1) - c);
  } else {
    a0 = mu + QuadExt(1);
    tail.push_back(mu);
    for (int i = 0; i < k; ++i) tail.push_back(c);
  }
  while (tail.size() < 3) tail.emplace_back(0);
  return HClass(std::move(a0), std::move(tail));
}

namespace detail {

// Runs the reduction loop on integer coordinates a[0] = a0, a[1..n] = tail.
// The caller has already checked a.a >= 0 and a0 >= 0, which keeps every
// iterate inside the forward cone: |ai| <= a0 and a0 never increases.
template <class Int>
Verdict run_lane(std::vector<Int>& a, std::size_t maxIter, MoveWord* word, std::size_t& iters) {
  const std::size_t n = a.size() - 1;
  Permutation sigma(n);
  std::vector<Int> scratch(n);
  iters = 0;
  for (;;) {
    if (word) {
      std::iota(sigma.begin(), sigma.end(), 0);
      std::stable_sort(sigma.begin(), sigma.end(), [&](std::size_t i, std::size_t j) { return a[i + 1] > a[j + 1]; });
      if (!is_identity(sigma)) {
        for (std::size_t j = 0; j < n; ++j) scratch[j] = a[sigma[j] + 1];
        std::copy(scratch.begin(), scratch.end(), a.begin() + 1);
        word->push_back(PermuteMove{sigma});
      }
    } else {
      std::sort(a.begin() + 1, a.end(), [](const Int& x, const Int& y) { return x > y; });
    }
    if (a[n] < 0) return Verdict::Exterior;
    Int d = a[1] + a[2] + a[3] - a[0];
    if (d <= 0) return a[n] == 0 ? Verdict::Boundary : Verdict::Interior;
    if (iters == maxIter) throw IterationBudgetExhausted(iters);
    for (std::size_t i = 0; i < 4; ++i) a[i] -= d;
    ++iters;
    if (word) word->push_back(CremonaMove{});
  }
}

struct ScaledClass {
  std::vector<Integer> coords;
  Integer denom;
};

inline ScaledClass scale_to_integers(const HClass& v) {
  if (!v.is_rational()) throw DomainError("reduction needs rational coordinates");
  ScaledClass s;
  s.denom = 1;
  auto absorb = [&](const QuadExt& x) {
    mpz_lcm(s.denom.get_mpz_t(), s.denom.get_mpz_t(), x.rational_part().get_den_mpz_t());
  };
  absorb(v.a0());
  for (const QuadExt& x : v.tail()) absorb(x);
  auto lift = [&](const QuadExt& x) {
    const Rational& r = x.rational_part();
    return Integer(r.get_num() * (s.denom / r.get_den()));
  };
  s.coords.push_back(lift(v.a0()));
  for (const QuadExt& x : v.tail()) s.coords.push_back(lift(x));
  return s;
}

struct LaneResult {
  Verdict verdict;
  ExteriorReason reason;
  std::vector<Integer> coords;
  std::size_t iterations = 0;
};

inline LaneResult reduce_scaled(std::vector<Integer> a, std::size_t maxIter, MoveWord* word) {
  LaneResult res{Verdict::Exterior, ExteriorReason::None, {}, 0};
  Integer sq = a[0] * a[0];
  for (std::size_t i = 1; i < a.size(); ++i) sq -= a[i] * a[i];
  if (sq < 0) {
    res.reason = ExteriorReason::NegativeSquare;
    res.coords = std::move(a);
    return res;
  }
  if (a[0] < 0) {
    res.reason = ExteriorReason::NegativeA0;
    res.coords = std::move(a);
    return res;
  }
  // Intermediate sums stay below 4*a0 in absolute value.
  static const Integer kLimit = Integer(1) << 60;
  if (a[0] < kLimit) {
    std::vector<std::int64_t> small(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) small[i] = a[i].get_si();
    res.verdict = run_lane(small, maxIter, word, res.iterations);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<long>(small[i]);
  } else {
    res.verdict = run_lane(a, maxIter, word, res.iterations);
  }
  if (res.verdict == Verdict::Exterior) res.reason = ExteriorReason::NegativeEntry;
  res.coords = std::move(a);
  return res;
}

inline HClass unscale(const std::vector<Integer>& coords, const Integer& denom) {
  std::vector<QuadExt> tail;
  for (std::size_t i = 1; i < coords.size(); ++i) tail.emplace_back(make_rational(coords[i], denom));
  return HClass(QuadExt(make_rational(coords[0], denom)), std::move(tail));
}

}  // namespace detail

// Default budget, overridable through RPACK_MAX_ITER.
inline std::size_t default_max_iter() {
  if (const char* env = std::getenv("RPACK_MAX_ITER")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxIter;
}

// Reduction with full trace. Reorderings that leave the tail unchanged are
// not recorded; `iterations` counts Cremona moves.
inline ReductionOutcome reduce(const HClass& v, std::size_t maxIter = kDefaultMaxIter) {
  detail::ScaledClass s = detail::scale_to_integers(v);
  MoveWord word;
  detail::LaneResult r = detail::reduce_scaled(std::move(s.coords), maxIter, &word);
  return ReductionOutcome{r.verdict, r.reason, v, detail::unscale(r.coords, s.denom), std::move(word), r.iterations};
}

// Verdict only; skips trace bookkeeping.
inline Verdict classify(const HClass& v, std::size_t maxIter = kDefaultMaxIter) {
  detail::ScaledClass s = detail::scale_to_integers(v);
  return detail::reduce_scaled(std::move(s.coords), maxIter, nullptr).verdict;
}

// Pulls E_zeroIndex back along the reduction word. The result pairs to zero
// with the input and is exceptional.
inline HClass obstruction_from_outcome(const ReductionOutcome& o, std::size_t zeroIndex) {
  if (o.verdict != Verdict::Boundary) throw DomainError("obstruction extraction needs a boundary outcome");
  if (zeroIndex >= o.finalClass.n()) throw DomainError("zero index out of range");
  if (o.finalClass[zeroIndex].sign() != 0) throw DomainError("final class entry at zero index is nonzero");
  HClass e = adjoint_apply(o.word, HClass::exceptional(o.finalClass.n(), zeroIndex));
  if (pairing(o.input, e).sign() != 0 || self_intersection(e) != QuadExt(-1) || canonical_pairing(e) != QuadExt(1))
    throw std::logic_error("extracted class is not an obstructing exceptional class: " + e.str());
  return e;
}

// One class per zero entry of the final class, duplicates removed.
inline std::vector<HClass> obstructions_from_outcome(const ReductionOutcome& o) {
  std::vector<HClass> out;
  for (std::size_t z = 0; z < o.finalClass.n(); ++z) {
    if (o.finalClass[z].sign() != 0) continue;
    HClass e = obstruction_from_outcome(o, z);
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(std::move(e));
  }
  return out;
}

struct Bracket {
  Rational lo;
  Rational hi;
};

// Largest feasible capacity on the grid (1/denom)Z, with hi = lo + 1/denom
// infeasible, or [1, 1] when capacity 1 is feasible (no ball of capacity
// above 1 fits in either bundle).
inline Bracket width_by_bisection(const BundleSpec& b, int k, const Integer& denom,
                                  std::size_t maxIter = kDefaultMaxIter) {
  b.validate();
  if (k < 1) throw DomainError("k must be positive");
  if (denom < 2) throw DomainError("precision denominator must be at least 2");
  auto feasible = [&](const Integer& j) {
    return classify(ball_vector(b, k, QuadExt(make_rational(j, denom))), maxIter) != Verdict::Exterior;
  };
  if (feasible(denom)) return Bracket{Rational(1), Rational(1)};
  Integer lo = 0, hi = denom;  // lo feasible (c -> 0), hi infeasible
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (feasible(mid))
      lo = mid;
    else
      hi = mid;
  }
  return Bracket{make_rational(lo, denom), make_rational(hi, denom)};
}

inline bool bracket_contains(const Bracket& br, const QuadExt& x) {
  return QuadExt(br.lo) <= x && x <= QuadExt(br.hi);
}

}  // namespace rpack
