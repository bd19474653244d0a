// The finite list of exceptional classes on blow-ups of CP^2 at up to eight
// points, and their placements against the ball vectors of k <= 7 balls.
#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "rpack/lattice.hpp"
#include "rpack/reducer.hpp"

namespace rpack {

struct ExceptionalType {
  int a0;
  std::vector<int> tail;  // nonincreasing, zeros omitted
};

inline const std::vector<ExceptionalType>& small_exceptional_types() {
  static const std::vector<ExceptionalType> types = {
      {0, {-1}},
      {1, {1, 1}},
      {2, {1, 1, 1, 1, 1}},
      {3, {2, 1, 1, 1, 1, 1, 1}},
      {4, {2, 2, 2, 1, 1, 1, 1, 1}},
      {5, {2, 2, 2, 2, 2, 2, 1, 1}},
      {6, {3, 2, 2, 2, 2, 2, 2, 2}},
  };
  return types;
}

// Groups of tail slots on which ball_vector(b, k, c) is constant for every c:
// trivial {mu-c} {c..} {1-c}, twisted {mu} {c..}; padding slots come last.
inline std::vector<std::vector<std::size_t>> ball_vector_blocks(BundleKind kind, int k) {
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t used;
  if (kind == BundleKind::Trivial) {
    blocks.push_back({0});
    std::vector<std::size_t> mid;
    for (int i = 1; i < k; ++i) mid.push_back(static_cast<std::size_t>(i));
    blocks.push_back(mid);
    blocks.push_back({static_cast<std::size_t>(k)});
    used = static_cast<std::size_t>(k) + 1;
  } else {
    blocks.push_back({0});
    std::vector<std::size_t> mid;
    for (int i = 1; i <= k; ++i) mid.push_back(static_cast<std::size_t>(i));
    blocks.push_back(mid);
    used = static_cast<std::size_t>(k) + 1;
  }
  std::vector<std::size_t> pad;
  for (std::size_t i = used; i < 3; ++i) pad.push_back(i);
  blocks.push_back(pad);
  return blocks;
}

namespace detail {

inline void place_blocks(const std::vector<std::vector<std::size_t>>& blocks, std::size_t b,
                         std::map<int, int, std::greater<>>& remaining, std::vector<int>& slots,
                         std::vector<std::vector<int>>& out) {
  if (b == blocks.size()) {
    out.push_back(slots);
    return;
  }
  const auto& block = blocks[b];
  // Fill this block with a nonincreasing run drawn from `remaining`.
  std::vector<int> chosen;
  auto rec = [&](auto&& self, std::size_t filled, int maxValue) -> void {
    if (filled == block.size()) {
      for (std::size_t i = 0; i < block.size(); ++i) slots[block[i]] = chosen[i];
      place_blocks(blocks, b + 1, remaining, slots, out);
      return;
    }
    for (auto& [value, count] : remaining) {
      if (count == 0 || value > maxValue) continue;
      --count;
      chosen.push_back(value);
      self(self, filled + 1, value);
      chosen.pop_back();
      ++count;
    }
  };
  rec(rec, 0, std::numeric_limits<int>::max());
}

}  // namespace detail

// Every placement of a listed type into the k+1 slots of the ball vector,
// one representative per block-permutation class. Padding slots stay zero.
inline std::vector<HClass> exceptional_placements(BundleKind kind, int k) {
  if (k < 1 || k > 7) throw DomainError("the finite exceptional list covers k <= 7");
  auto blocks = ball_vector_blocks(kind, k);
  std::size_t slotsUsed = static_cast<std::size_t>(k) + 1;
  std::size_t n = std::max<std::size_t>(slotsUsed, 3);
  std::vector<HClass> out;
  for (const ExceptionalType& t : small_exceptional_types()) {
    if (t.tail.size() > slotsUsed) continue;
    std::map<int, int, std::greater<>> remaining;
    for (int v : t.tail) ++remaining[v];
    remaining[0] += static_cast<int>(slotsUsed - t.tail.size());
    std::vector<std::vector<std::size_t>> live(blocks.begin(), blocks.end() - 1);
    std::vector<int> slots(n, 0);
    std::vector<std::vector<int>> placed;
    detail::place_blocks(live, 0, remaining, slots, placed);
    for (const auto& s : placed) {
      std::vector<QuadExt> tail;
      for (int v : s) tail.emplace_back(v);
      out.emplace_back(QuadExt(t.a0), std::move(tail));
    }
  }
  return out;
}

// Sorts each block of the tail nonincreasingly, giving a representative that
// is independent of how equal ball-vector slots were permuted.
inline HClass canonical_in_blocks(const HClass& e, BundleKind kind, int k) {
  HClass r = e;
  for (const auto& block : ball_vector_blocks(kind, k)) {
    std::vector<QuadExt> vals;
    for (std::size_t i : block)
      if (i < r.n()) vals.push_back(r[i]);
    std::stable_sort(vals.begin(), vals.end(), [](const QuadExt& x, const QuadExt& y) { return x > y; });
    std::size_t j = 0;
    for (std::size_t i : block)
      if (i < r.n()) r.tail()[i] = vals[j++];
  }
  // slots beyond the listed blocks (larger padded classes) are left as is
  return r;
}

}  // namespace rpack
