// Cross-checks between independent routes: closed forms against the reduction
// oracle, brute force over exceptional classes, direct enumeration of capacity
// sequences and direct search for stability numbers.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "rpack/ech.hpp"
#include "rpack/exceptional.hpp"
#include "rpack/obstructions.hpp"
#include "rpack/recurrence.hpp"
#include "rpack/reducer.hpp"
#include "rpack/stability.hpp"
#include "rpack/twisted8.hpp"
#include "rpack/widths.hpp"

namespace rpack::verify {

struct Report {
  explicit Report(std::string name) : suite(std::move(name)) {}

  std::string suite;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;  // discrepancies that are reported but not failures
  double seconds = 0;
  // oracle suite only
  std::size_t points = 0;
  std::size_t fastPoints = 0;  // finished under pointBudgetMs
  double pointBudgetMs = 10;

  bool ok() const { return failures.empty(); }
  void check(bool cond, const std::function<std::string()>& what) {
    ++checks;
    if (!cond && failures.size() < 50) failures.push_back(what());
  }
  void merge(const Report& o) {
    checks += o.checks;
    for (const auto& f : o.failures)
      if (failures.size() < 50) failures.push_back(f);
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers; results are written by index.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

inline std::string point_name(const BundleSpec& b, int k) {
  return std::string(to_string(b.kind)) + " k=" + std::to_string(k) + " mu=" + to_string(b.mu);
}

// mu = lo, lo + step, ..., hi; lo itself skipped when openLo.
inline std::vector<Rational> grid(const Rational& lo, const Rational& hi, const Rational& step, bool openLo = false) {
  std::vector<Rational> out;
  for (Rational m = openLo ? lo + step : lo; m <= hi; m += step) out.push_back(m);
  return out;
}

inline std::vector<BundleSpec> standard_grid(BundleKind kind, int k, const Rational& step) {
  std::vector<BundleSpec> out;
  auto mus = kind == BundleKind::Trivial ? grid(Rational(1), Rational(k), step) : grid(Rational(0), Rational(k), step, true);
  for (auto& m : mus) out.push_back(BundleSpec{kind, m});
  return out;
}

// ---------------------------------------------------------------- identities

inline Report identities(int pFrom, int pTo, long nMax) {
  Stopwatch sw;
  Report r("identities");
  for (int p = pFrom; p <= pTo; ++p) {
    IdentityReport rep = verify_identities(p, nMax);
    r.checks += rep.checks;
    if (!rep.ok) r.failures.push_back("p=" + std::to_string(p) + " n=" + std::to_string(rep.failedAt) + ": " + rep.failedIdentity);
  }
  r.seconds = sw.seconds();
  return r;
}

// -------------------------------------------------------------------- oracle

inline Report oracle(int kFrom, int kTo, const Rational& step, const Integer& denom, unsigned threads) {
  Stopwatch sw;
  Report r("oracle");
  struct Point {
    BundleSpec b;
    int k;
  };
  std::vector<Point> pts;
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted})
    for (int k = kFrom; k <= kTo; ++k)
      for (const BundleSpec& b : standard_grid(kind, k, step)) pts.push_back({b, k});
  std::vector<char> good(pts.size());
  std::vector<double> ms(pts.size());
  std::vector<std::string> err(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    Stopwatch t;
    try {
      Bracket br = width_by_bisection(pts[i].b, pts[i].k, denom);
      QuadExt w = width_at(pts[i].b, pts[i].k);
      good[i] = bracket_contains(br, w);
      if (!good[i]) err[i] = "bracket [" + to_string(br.lo) + ", " + to_string(br.hi) + "] misses " + w.str();
    } catch (const std::exception& e) {
      err[i] = e.what();
    }
    ms[i] = t.seconds() * 1e3;
  });
  r.points = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    r.check(good[i], [&] { return point_name(pts[i].b, pts[i].k) + ": " + err[i]; });
    if (ms[i] < r.pointBudgetMs) ++r.fastPoints;
  }
  r.seconds = sw.seconds();
  return r;
}

// -------------------------------------------------------------- obstructions

inline bool is_exceptional(const HClass& e) {
  return self_intersection(e) == QuadExt(-1) && canonical_pairing(e) == QuadExt(1);
}

inline Report obstructions(int kFrom, int kTo, const Rational& step, long familyRange) {
  Stopwatch sw;
  Report r("obstructions");
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted})
    for (int k = kFrom; k <= kTo; ++k)
      for (const BundleSpec& b : standard_grid(kind, k, step)) {
        std::string where = point_name(b, k);
        ObstructionList list;
        try {
          list = rpack::obstructions(b, k);
        } catch (const std::exception& e) {
          r.check(false, [&] { return where + ": " + e.what(); });
          continue;
        }
        QuadExt w = width_at(b, k);
        HClass v = ball_vector(b, k, w);
        for (const auto& e : list.entries) {
          r.check(is_exceptional(e.cls), [&] { return where + ": not exceptional " + e.cls.str(); });
          r.check(pairing(v, e.cls).sign() == 0, [&] { return where + ": nonzero pairing " + e.cls.str(); });
        }
        if (!w.is_rational()) continue;
        ReductionOutcome o = reduce(v);
        r.check(o.verdict != Verdict::Exterior, [&] { return where + ": width is exterior"; });
        if (o.verdict != Verdict::Boundary) continue;
        for (const HClass& e : obstructions_from_outcome(o)) {
          r.check(is_exceptional(e), [&] { return where + ": extracted class not exceptional " + e.str(); });
          r.check(pairing(v, e).sign() == 0, [&] { return where + ": extracted class pairs nonzero " + e.str(); });
        }
      }
  for (E8Family f : {E8Family::I, E8Family::II, E8Family::III})
    for (long n = -familyRange; n <= familyRange; ++n) {
      HClass e = e8_family(f, n);
      r.check(is_exceptional(e), [&] { return std::string("family ") + to_string(f) + "(" + std::to_string(n) + ") = " + e.str(); });
    }
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted})
    for (int k = 1; k <= 7; ++k)
      for (const HClass& e : exceptional_placements(kind, k))
        r.check(is_exceptional(e), [&] { return "placement " + e.str(); });
  r.seconds = sw.seconds();
  return r;
}

// ----------------------------------------------------------------------- ech

inline Report ech(int pFrom, int pTo, long nMax) {
  Stopwatch sw;
  Report r("ech");
  for (int p = pFrom; p <= pTo; ++p) {
    SequenceEngine eng(p);
    CapSequence N = CapSequence::ellipsoid(Rational(1), Rational(2 * p));
    for (long n = 1; n <= nMax; ++n) {
      Integer an = eng.a(n), am = eng.a(n - 1);
      std::uint64_t idx = eng.ech_index(n).get_ui();
      Rational Ni = N.at(idx);
      std::string where = "p=" + std::to_string(p) + " n=" + std::to_string(n);
      r.check(Ni == Rational(2 * (an + am) - 1), [&] { return where + ": N_i = " + to_string(Ni); });
      // I_1 = [p, inf) is sampled on [p, p + 2]; I_n = [g_n/g_{n-1}, g_{n-1}/g_{n-2}).
      Rational lo = n == 1 ? Rational(p) : eng.gamma_ratio(n);
      Rational hi = n == 1 ? Rational(p + 2) : eng.gamma_ratio(n - 1);
      for (int j = 0; j < 8; ++j) {
        Rational mu = lo + (hi - lo) * make_rational(j, 8);
        if (mu < 1) continue;
        CapSequence M = CapSequence::polydisk(Rational(1), mu);
        Rational Mi = M.at(idx);
        r.check(Mi == Rational(an) + Rational(am) * mu, [&] { return where + " mu=" + to_string(mu) + ": M_i = " + to_string(Mi); });
        r.check(Mi / Ni == eng.w(n, mu), [&] { return where + " mu=" + to_string(mu) + ": ratio differs from w_n"; });
      }
    }
    for (const Rational& mu : grid(Rational(1), Rational(p + 1), make_rational(1, 8))) {
      CapSequence M = CapSequence::polydisk(Rational(1), mu);
      Rational got = M.at(2 * p + 1);
      r.check(got == mu + p, [&] {
        return "p=" + std::to_string(p) + " mu=" + to_string(mu) + ": M_{2p+1} = " + to_string(got) + ", expected mu + p = " + to_string(Rational(mu + p));
      });
    }
  }
  r.seconds = sw.seconds();
  return r;
}

// --------------------------------------------------------- small k brute force

// min(c_vol, min over listed exceptional classes of the capacity where the
// pairing with the ball vector vanishes); the pairing is affine in c.
inline QuadExt brute_force_width(const BundleSpec& b, int k) {
  QuadExt best = c_vol(b, k);
  HClass v1 = ball_vector(b, k, QuadExt(1));
  HClass vh = ball_vector(b, k, QuadExt(make_rational(1, 2)));
  for (const HClass& e : exceptional_placements(b.kind, k)) {
    QuadExt f1 = pairing(v1, e), fh = pairing(vh, e);
    QuadExt slope = (f1 - fh) * QuadExt(2);
    if (slope.sign() >= 0) continue;
    QuadExt root = QuadExt(1) - f1 / slope;
    if (root < best) best = root;
  }
  return best;
}

inline std::vector<std::pair<Rational, int>> printed_full_packings(BundleKind kind) {
  if (kind == BundleKind::Trivial)
    return {{Rational(1), 2}, {Rational(2), 4}, {make_rational(4, 3), 6}, {Rational(3), 6}, {make_rational(8, 7), 7}};
  return {{Rational(1), 3}, {make_rational(1, 4), 6}, {make_rational(1, 7), 7}, {make_rational(3, 8), 7}, {Rational(3), 7}};
}

// Rational just inside an endpoint, stepping by 1/1024 from the nearest integer.
inline Rational rational_above(const QuadExt& x) {
  if (x.is_rational()) return x.as_rational();
  Rational r(x.floor());
  while (QuadExt(r) <= x) r += make_rational(1, 1024);
  return r;
}

inline Rational rational_below(const QuadExt& x) {
  if (x.is_rational()) return x.as_rational();
  Rational r(x.ceil());
  while (QuadExt(r) >= x) r -= make_rational(1, 1024);
  return r;
}

// Sample points of a piece: closed endpoints and interior points.
inline std::vector<Rational> piece_samples(const WidthPiece& p, const Rational& domainLo) {
  Rational lo = std::max(rational_above(p.lo), domainLo);
  Rational hi = p.hi ? rational_below(*p.hi) : lo + 4;
  std::vector<Rational> out{lo, hi};
  if (lo < hi)
    for (int j = 1; j < 8; ++j) out.push_back(lo + (hi - lo) * make_rational(j, 8));
  std::vector<Rational> inside;
  for (auto& m : out)
    if (m > 0 && m >= domainLo && contains(p, QuadExt(m))) inside.push_back(m);
  return inside;
}

inline Report small_k(const Rational& gridStep, const Rational& gridTop) {
  Stopwatch sw;
  Report r("small-k");
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted}) {
    Rational domainLo = kind == BundleKind::Trivial ? Rational(1) : Rational(0);
    for (int k = 1; k <= 7; ++k) {
      WidthProfile prof = width(BundleSpec{kind, Rational(1)}, k);
      for (const WidthPiece& p : prof.pieces)
        for (const Rational& mu : piece_samples(p, domainLo)) {
          BundleSpec b{kind, mu};
          QuadExt bf = brute_force_width(b, k);
          QuadExt piecewise = mu == 0 ? QuadExt(0) : evaluate(p.formula, QuadExt(mu));
          r.check(bf == piecewise, [&] { return point_name(b, k) + ": brute force " + bf.str() + " vs formula " + piecewise.str(); });
          Rational twiceVol = 2 * mu;
          if (kind == BundleKind::Twisted) twiceVol += 1;
          QuadExt pk = QuadExt(Rational(k)) * bf * bf / QuadExt(twiceVol);
          r.check(pk == packing_number(b, k), [&] { return point_name(b, k) + ": packing number mismatch"; });
        }
    }
    // Full packings found by brute force on a grid are exactly the printed ones.
    auto printed = printed_full_packings(kind);
    for (auto [mu, k] : printed) {
      BundleSpec b{kind, mu};
      r.check(brute_force_width(b, k) == c_vol(b, k), [&] { return point_name(b, k) + ": printed full packing not full"; });
      r.check(full_packing_set_contains(b, k), [&] { return point_name(b, k) + ": full_packing_set_contains is false"; });
    }
    auto mus = kind == BundleKind::Trivial ? grid(Rational(1), gridTop, gridStep) : grid(Rational(0), gridTop, gridStep, true);
    for (const auto& [mu, k] : printed) mus.push_back(mu);
    for (const Rational& mu : mus)
      for (int k = 1; k <= 7; ++k) {
        BundleSpec b{kind, mu};
        bool full = brute_force_width(b, k) == c_vol(b, k);
        bool listed = std::find(printed.begin(), printed.end(), std::pair<Rational, int>{mu, k}) != printed.end();
        r.check(!listed || full, [&] { return point_name(b, k) + ": listed full packing not found"; });
        if (full && !listed) r.notes.push_back(point_name(b, k) + ": full packing not in the printed list");
        r.check(full == full_packing_set_contains(b, k), [&] { return point_name(b, k) + ": full_packing_set_contains disagrees"; });
      }
  }
  r.seconds = sw.seconds();
  return r;
}

// ----------------------------------------------------------------- piecewise

inline bool same_value_at(const Formula& f, const Formula& g, const QuadExt& mu) {
  // Both sides are positive there, so squares decide equality.
  return evaluate_squared(f, mu) == evaluate_squared(g, mu);
}

inline std::vector<Rational> eight_ball_set(long nMax) {
  std::vector<Rational> out{make_rational(1, 2)};
  for (long n = 1; n <= nMax; ++n) {
    out.push_back(make_rational(8 * n * n - 8 * n + 1, 16 * n * n));
    out.push_back(make_rational(8 * n * n + 8 * n + 1, 16 * n * n));
  }
  return out;
}

inline Report piecewise(int kMax, const Rational& step, long setN) {
  Stopwatch sw;
  Report r("piecewise");
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted})
    for (int k = 1; k <= kMax; ++k) {
      WidthProfile prof = width(BundleSpec{kind, Rational(1)}, k);
      std::string tag = std::string(to_string(kind)) + " k=" + std::to_string(k);
      for (std::size_t i = 0; i + 1 < prof.pieces.size(); ++i) {
        const WidthPiece& a = prof.pieces[i];
        const WidthPiece& c = prof.pieces[i + 1];
        if (!a.hi || *a.hi != c.lo) continue;  // an unlisted range sits between them
        r.check(same_value_at(a.formula, c.formula, c.lo), [&] { return tag + ": discontinuous at " + c.lo.str(); });
      }
      Rational top(k + 2);
      auto mus = kind == BundleKind::Trivial ? grid(Rational(1), top, step) : grid(Rational(0), top, step, true);
      std::optional<QuadExt> prev;
      for (const Rational& mu : mus) {
        BundleSpec b{kind, mu};
        QuadExt w = width_at(b, k);
        r.check(w.sign() > 0 && w <= QuadExt(1) && w <= c_vol(b, k), [&] { return point_name(b, k) + ": " + w.str() + " out of bounds"; });
        if (prev) r.check(*prev <= w, [&] { return point_name(b, k) + ": decreases"; });
        prev = w;
      }
    }
  auto S = eight_ball_set(setN);
  for (const Rational& mu : S)
    r.check(full_packing_set_contains(BundleSpec{BundleKind::Twisted, mu}, 8), [&] { return "twisted k=8 mu=" + to_string(mu) + ": in S but not full"; });
  for (const Rational& mu : grid(Rational(0), Rational(4), make_rational(1, 64), true)) {
    bool inS = std::find(S.begin(), S.end(), mu) != S.end();
    r.check(full_packing_set_contains(BundleSpec{BundleKind::Twisted, mu}, 8) == inS, [&] { return "twisted k=8 mu=" + to_string(mu) + ": full-packing set mismatch"; });
    r.check(in_eight_ball_full_set(mu) == inS, [&] { return "mu=" + to_string(mu) + ": set membership test mismatch"; });
  }
  r.seconds = sw.seconds();
  return r;
}

// ----------------------------------------------------------------- stability

// Smallest N of the parity class such that every j >= N of that class up to
// jMax is a full packing.
inline long stability_by_search(const BundleSpec& b, Parity parity, long jMax) {
  auto inClass = [&](long j) { return parity == Parity::All || (j % 2 == 1) == (parity == Parity::Odd); };
  long N = jMax + 1;
  for (long j = jMax; j >= 1; --j) {
    if (!inClass(j)) continue;
    if (!full_packing_set_contains(b, static_cast<int>(j))) break;
    N = j;
  }
  return N;
}

inline std::vector<Rational> stability_mus() {
  return {Rational(1), make_rational(9, 8), make_rational(8, 7), make_rational(3, 2), Rational(2),
          Rational(3), Rational(5), make_rational(17, 16), make_rational(1, 2), make_rational(1, 4)};
}

inline Report stability_search(const std::vector<Rational>& mus) {
  Stopwatch sw;
  Report r("stability");
  for (BundleKind kind : {BundleKind::Trivial, BundleKind::Twisted})
    for (const Rational& mu : mus) {
      BundleSpec b{kind, mu};
      if (kind == BundleKind::Trivial && mu < 1) continue;
      for (Parity par : {Parity::Odd, Parity::Even, Parity::All}) {
        long closed = stability(b, par);
        long direct = stability_by_search(b, par, closed + 10);
        r.check(closed == direct, [&] {
          return std::string(to_string(kind)) + " mu=" + to_string(mu) + " " + to_string(par) + ": closed " + std::to_string(closed) + " vs search " + std::to_string(direct);
        });
      }
    }
  r.seconds = sw.seconds();
  return r;
}

}  // namespace rpack::verify
