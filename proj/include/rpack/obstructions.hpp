// Exceptional classes whose positivity condition is binding on each width piece.
#pragma once

#include <string>
#include <vector>

#include "rpack/exceptional.hpp"
#include "rpack/widths.hpp"

namespace rpack {

struct ObstructionEntry {
  HClass cls;
  std::string source;
};

struct ObstructionList {
  std::vector<ObstructionEntry> entries;
  std::string reason;  // "volume" when the piece is the volume bound, else "catalog"
};

namespace detail {

// (a0; runs...) with each run a (value, multiplicity) pair.
inline HClass runs_class(const Integer& a0, std::initializer_list<std::pair<Integer, long>> runs) {
  std::vector<QuadExt> tail;
  for (const auto& [v, m] : runs)
    for (long i = 0; i < m; ++i) tail.emplace_back(Rational(v));
  return HClass(QuadExt(Rational(a0)), std::move(tail));
}

// d/dc of ball_vector(b, k, c).
inline HClass ball_vector_slope(BundleKind kind, int k) {
  std::vector<QuadExt> tail;
  QuadExt a0;
  if (kind == BundleKind::Trivial) {
    a0 = QuadExt(-1);
    tail.emplace_back(-1);
    for (int i = 1; i < k; ++i) tail.emplace_back(1);
    tail.emplace_back(-1);
  } else {
    a0 = QuadExt(0);
    tail.emplace_back(0);
    for (int i = 0; i < k; ++i) tail.emplace_back(1);
  }
  while (tail.size() < 3) tail.emplace_back(0);
  return HClass(a0, std::move(tail));
}

inline void check_obstruction(const HClass& e, const HClass& v) {
  if (self_intersection(e) != QuadExt(-1) || canonical_pairing(e) != QuadExt(1) || pairing(v, e).sign() != 0)
    throw std::logic_error("catalog class fails verification: " + e.str());
}

}  // namespace detail

inline ObstructionList obstructions(const BundleSpec& b, int k) {
  require_domain(b, k);
  const Rational& mu = b.mu;
  QuadExt w = width_at(b, k);
  HClass v = ball_vector(b, k, w);
  ObstructionList out;
  auto add = [&](HClass e, std::string source) {
    detail::check_obstruction(e, v);
    out.entries.push_back({std::move(e), std::move(source)});
  };
  auto finish = [&]() {
    out.reason = out.entries.empty() ? "volume" : "catalog";
    return out;
  };

  if (k <= 7) {
    HClass slope = detail::ball_vector_slope(b.kind, k);
    for (const HClass& e : exceptional_placements(b.kind, k))
      if (pairing(v, e).sign() == 0 && pairing(slope, e).sign() < 0) add(e, "exceptional-list");
    return finish();
  }
  if (w == c_vol(b, k)) return finish();

  const int p = k / 2;
  const QuadExt m(mu);
  if (b.kind == BundleKind::Trivial) {
    if (k % 2 == 1) {
      if (mu >= p + 1)
        add(detail::runs_class(1, {{1, 2}, {0, 2 * p}}), "trivial-odd-upper");
      else
        add(detail::runs_class(p, {{p - 1, 1}, {1, 2 * p}, {0, 1}}), "trivial-odd-middle");
      return finish();
    }
    SequenceEngine eng(p);
    std::optional<long> n = interval_index(eng, mu);
    if (*n == 0) {
      add(detail::runs_class(1, {{1, 2}, {0, 2 * p - 1}}), "trivial-even-I0");
    } else {
      Integer x = eng.x(*n).get_num();
      Integer an = eng.a(*n), am = eng.a(*n - 1);
      Integer y = *n % 2 == 0 ? Integer(x - 1) : Integer(x + 1);
      add(detail::runs_class(an + am - x, {{an - x, 1}, {y, 1}, {x, 2 * p - 2}, {am - x, 1}}),
          "trivial-even-I" + std::to_string(*n));
    }
    return finish();
  }
  if (k == 8) {
    Twisted8Piece pc = twisted8_piece(mu);
    E8Family f = pc.kind == Twisted8Piece::U1 ? E8Family::I : pc.kind == Twisted8Piece::U2 ? E8Family::II : E8Family::III;
    add(e8_family(f, pc.n), std::string("twisted8-") + to_string(f) + "(" + std::to_string(pc.n) + ")");
    return finish();
  }
  if (mu >= p) {
    add(detail::runs_class(1, {{1, 2}, {0, k - 1}}), k % 2 ? "twisted-odd-upper" : "twisted-even-upper");
  } else if (k % 2 == 0) {
    add(detail::runs_class(p, {{p - 1, 1}, {1, 2 * p}}), "twisted-even-middle");
  } else if (m >= QuadExt(make_rational(p * (p - 1), p + 1))) {
    add(detail::runs_class(p, {{p - 1, 1}, {1, 2 * p}, {0, 1}}), "twisted-odd-middle");
  } else {
    add(detail::runs_class(p * (p - 1), {{p * (p - 2), 1}, {p - 1, 2 * p + 1}}), "twisted-odd-lower");
  }
  return finish();
}

}  // namespace rpack
