// Classes a0*L - sum ai*Ei in H2 of the n-fold blow-up of CP^2, with the
// (1,n) intersection form, Cremona moves and reflection words.
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rpack/exact.hpp"

namespace rpack {

class HClass {
 public:
  HClass(QuadExt a0, std::vector<QuadExt> tail) : a0_(std::move(a0)), tail_(std::move(tail)) {
    if (tail_.size() < 3) throw DomainError("a class needs at least three exceptional coordinates");
  }

  // The zero class on an n-fold blow-up.
  static HClass zero(std::size_t n) { return HClass(QuadExt(0), std::vector<QuadExt>(n, QuadExt(0))); }

  // The canonical class K = (3; 1, ..., 1).
  static HClass canonical(std::size_t n) { return HClass(QuadExt(3), std::vector<QuadExt>(n, QuadExt(1))); }

  // The exceptional class E_i (0-based index), written (0; 0, .., -1, .., 0).
  static HClass exceptional(std::size_t n, std::size_t i) {
    HClass e = zero(n);
    e.tail_.at(i) = QuadExt(-1);
    return e;
  }

  const QuadExt& a0() const { return a0_; }
  QuadExt& a0() { return a0_; }
  const std::vector<QuadExt>& tail() const { return tail_; }
  std::vector<QuadExt>& tail() { return tail_; }
  std::size_t n() const { return tail_.size(); }
  const QuadExt& operator[](std::size_t i) const { return tail_[i]; }

  bool is_rational() const {
    if (!a0_.is_rational()) return false;
    return std::all_of(tail_.begin(), tail_.end(), [](const QuadExt& x) { return x.is_rational(); });
  }

  friend bool operator==(const HClass& x, const HClass& y) {
    return x.n() == y.n() && x.a0_ == y.a0_ && std::equal(x.tail_.begin(), x.tail_.end(), y.tail_.begin());
  }
  friend bool operator!=(const HClass& x, const HClass& y) { return !(x == y); }

  // Literal syntax "a0; a1, a2, ...".
  std::string str() const {
    std::string out = a0_.str() + ";";
    for (std::size_t i = 0; i < tail_.size(); ++i) out += (i ? ", " : " ") + tail_[i].str();
    return out;
  }

  static HClass parse(std::string_view text) {
    std::string s(text);
    auto semi = s.find(';');
    if (semi == std::string::npos) throw DomainError("class literal needs ';': '" + s + "'");
    QuadExt a0 = QuadExt::parse(s.substr(0, semi));
    std::vector<QuadExt> tail;
    std::stringstream rest(s.substr(semi + 1));
    std::string item;
    while (std::getline(rest, item, ',')) tail.push_back(QuadExt::parse(item));
    return HClass(std::move(a0), std::move(tail));
  }

 private:
  QuadExt a0_;
  std::vector<QuadExt> tail_;
};

inline void require_same_dimension(const HClass& a, const HClass& b) {
  if (a.n() != b.n()) throw DomainError("dimension mismatch");
}

inline QuadExt pairing(const HClass& a, const HClass& b) {
  require_same_dimension(a, b);
  QuadExt s = a.a0() * b.a0();
  for (std::size_t i = 0; i < a.n(); ++i) s -= a[i] * b[i];
  return s;
}

inline QuadExt self_intersection(const HClass& a) { return pairing(a, a); }

inline QuadExt canonical_pairing(const HClass& a) { return pairing(HClass::canonical(a.n()), a); }

inline QuadExt defect(const HClass& a) { return a[0] + a[1] + a[2] - a.a0(); }

inline HClass cremona(const HClass& a) {
  QuadExt d = defect(a);
  HClass r = a;
  r.a0() -= d;
  for (std::size_t i = 0; i < 3; ++i) r.tail()[i] -= d;
  return r;
}

using Permutation = std::vector<std::size_t>;

// new[j] = old[sigma[j]]
inline HClass permute(const HClass& a, const Permutation& sigma) {
  if (sigma.size() != a.n()) throw DomainError("permutation length mismatch");
  std::vector<QuadExt> t;
  t.reserve(a.n());
  for (std::size_t j : sigma) t.push_back(a[j]);
  return HClass(a.a0(), std::move(t));
}

inline Permutation inverse(const Permutation& sigma) {
  Permutation inv(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) inv[sigma[j]] = j;
  return inv;
}

inline bool is_identity(const Permutation& sigma) {
  for (std::size_t j = 0; j < sigma.size(); ++j)
    if (sigma[j] != j) return false;
  return true;
}

// Stable nonincreasing sort of the tail.
inline std::pair<HClass, Permutation> reorder(const HClass& a) {
  Permutation sigma(a.n());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::stable_sort(sigma.begin(), sigma.end(), [&](std::size_t i, std::size_t j) { return a[i] > a[j]; });
  return {permute(a, sigma), sigma};
}

// r_root(a) = a - 2 (root.a / root.root) root
inline HClass reflect(const HClass& a, const HClass& root) {
  QuadExt rr = self_intersection(root);
  if (rr.sign() == 0) throw DomainError("reflection root has zero self-intersection");
  QuadExt f = QuadExt(2) * pairing(root, a) / rr;
  HClass r = a;
  r.a0() -= f * root.a0();
  for (std::size_t i = 0; i < a.n(); ++i) r.tail()[i] -= f * root[i];
  return r;
}

// alpha_0 = L - E1 - E2 - E3, reflection about which is the Cremona move.
inline HClass cremona_root(std::size_t n) {
  HClass r = HClass::zero(n);
  r.a0() = QuadExt(1);
  for (std::size_t i = 0; i < 3; ++i) r.tail()[i] = QuadExt(1);
  return r;
}

inline bool is_reduced(const HClass& a) {
  for (std::size_t i = 0; i + 1 < a.n(); ++i)
    if (a[i] < a[i + 1]) return false;
  if (a[a.n() - 1].sign() < 0) return false;
  return defect(a).sign() <= 0;
}

struct CremonaMove {
  friend bool operator==(const CremonaMove&, const CremonaMove&) { return true; }
};

struct PermuteMove {
  Permutation sigma;
  friend bool operator==(const PermuteMove& x, const PermuteMove& y) { return x.sigma == y.sigma; }
};

using Move = std::variant<CremonaMove, PermuteMove>;
using MoveWord = std::vector<Move>;

inline HClass apply_move(const Move& m, const HClass& a) {
  if (std::holds_alternative<CremonaMove>(m)) return cremona(a);
  return permute(a, std::get<PermuteMove>(m).sigma);
}

inline Move inverse(const Move& m) {
  if (std::holds_alternative<CremonaMove>(m)) return m;
  return PermuteMove{inverse(std::get<PermuteMove>(m).sigma)};
}

inline HClass apply_word(const MoveWord& w, HClass a) {
  for (const Move& m : w) a = apply_move(m, a);
  return a;
}

// Applies the inverse word, so pairing(apply_word(w, A), B) == pairing(A, adjoint_apply(w, B)).
inline HClass adjoint_apply(const MoveWord& w, HClass b) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) b = apply_move(inverse(*it), b);
  return b;
}

}  // namespace rpack
