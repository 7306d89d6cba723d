#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "triweb/core.hpp"

namespace triweb {

// ---------------------------------------------------------------------------
// 3SUM

namespace detail {

template <class T>
using SumAccumulator = std::conditional_t<std::is_integral_v<T>, __int128, T>;

template <class T>
std::vector<std::size_t> sorted_order(std::span<const T> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

}  // namespace detail

/// Solutions that use a value occurring at two or more positions:
/// x + x + y = 0 with y = -2x at a third position (x = 0 needs three zeros).
/// O(n log n).
template <class T>
std::optional<Witness3> find_repeated_value_3sum(std::span<const T> values) {
  using Acc = detail::SumAccumulator<T>;
  const auto order = detail::sorted_order(values);
  auto find_value = [&](const Acc& target, std::size_t skip_a, std::size_t skip_b)
      -> std::optional<std::size_t> {
    auto it = std::lower_bound(order.begin(), order.end(), target,
                               [&](std::size_t i, const Acc& t) { return Acc(values[i]) < t; });
    for (; it != order.end() && Acc(values[*it]) == target; ++it) {
      if (*it != skip_a && *it != skip_b) return *it;
    }
    return std::nullopt;
  };
  for (std::size_t p = 0; p + 1 < order.size(); ++p) {
    if (!(values[order[p]] == values[order[p + 1]])) continue;
    const Acc twice = Acc(values[order[p]]) + Acc(values[order[p]]);
    if (auto k = find_value(-twice, order[p], order[p + 1])) {
      return Witness3{{order[p], order[p + 1], *k}};
    }
  }
  return std::nullopt;
}

/// Sort-then-two-pointer 3SUM over an indexed multiset; the witness has three
/// distinct positions. O(n^2 + n log n).
template <class T>
std::optional<Witness3> solve_3sum_quadratic(std::span<const T> values) {
  using Acc = detail::SumAccumulator<T>;
  if (values.size() < 3) return std::nullopt;
  if (auto w = find_repeated_value_3sum(values)) return w;
  const auto order = detail::sorted_order(values);
  std::vector<T> sorted;
  sorted.reserve(order.size());
  for (auto i : order) sorted.push_back(values[i]);
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const Acc target = -Acc(sorted[i]);
    std::size_t lo = i + 1, hi = n - 1;
    while (lo < hi) {
      const Acc pair = Acc(sorted[lo]) + Acc(sorted[hi]);
      if (pair == target) return Witness3{{order[i], order[lo], order[hi]}};
      if (pair < target) {
        ++lo;
      } else {
        --hi;
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness3> solve_3sum_quadratic(const IntegerSet& s);

/// Pair scan against an index of the values modulo 2^61 - 1; every candidate
/// is confirmed with exact arithmetic, so the answer is exact. O(n^2 log n),
/// but each step is word arithmetic even for big integers.
std::optional<Witness3> solve_3sum_hashed(std::span<const BigInt> values);
std::optional<Witness3> solve_3sum_hashed(std::span<const std::int64_t> values);

// ---------------------------------------------------------------------------
// 3XOR

/// x ⊕ x ⊕ 0 = 0 with the repeated x and the zero at three distinct positions.
std::optional<Witness3> find_repeated_value_3xor(std::span<const BitVec> vectors);

/// Pair scan with a hash index of the values; works on indexed multisets and
/// returns three distinct positions. O(n^2) expected.
std::optional<Witness3> solve_3xor_quadratic(std::span<const BitVec> vectors);
std::optional<Witness3> solve_3xor_quadratic(const BitVectorSet& s);

inline constexpr std::size_t kDefaultWhtWidthCap = 24;

/// Ordered triples (x, y, z) of pairwise distinct elements with x ⊕ y ⊕ z = 0,
/// computed from the Walsh-Hadamard transform of the indicator of s.
std::int64_t count_3xor_triples_wht(const BitVectorSet& s, std::size_t width_cap = kDefaultWhtWidthCap);

/// Decides 3XOR by the transform count; a witness is recovered by a pair scan
/// only when the count is positive.
std::optional<Witness3> solve_3xor_wht(const BitVectorSet& s, std::size_t width_cap = kDefaultWhtWidthCap);

/// In-place unnormalized Walsh-Hadamard transform; size must be a power of two.
void walsh_hadamard(std::span<std::int64_t> data);

// ---------------------------------------------------------------------------
// Triangles and cliques

/// Any triangle, by intersecting forward adjacency lists under the
/// (degree, id) ordering. O(m^1.5).
std::optional<Triangle> detect_triangle(const Graph& g);

inline constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

/// min{cap, z} distinct triangles, each reported once. O(m^1.5).
std::vector<Triangle> list_all_triangles(const Graph& g, std::size_t cap = kNoCap);

/// Some 4-clique as sorted node ids, or nothing.
std::optional<std::array<NodeId, 4>> detect_4clique_bruteforce(const Graph& g);

// ---------------------------------------------------------------------------
// C3XOR and 6SUM

/// Scans ordered pairs (i, j), i = j included, skipping ABSENT cells. Index
/// arithmetic is xor. O(n^2).
std::optional<WitnessC3xor> solve_c3xor_bruteforce(const C3xorArray& a);

bool is_c3xor_witness(const C3xorArray& a, const WitnessC3xor& w);

inline constexpr std::size_t kDefaultMaxTriples = std::size_t{10'000'000};

/// Meet in the middle: every sorted index triple is keyed by its sum; each
/// triple looks up the negation of its sum and merges with a disjoint triple.
/// O(n^3) time and space.
std::optional<Witness6> solve_6sum_z3(std::span<const Z3Vec> elements,
                                      std::size_t max_triples = kDefaultMaxTriples);
std::optional<Witness6> solve_6sum_z3(const Z3VectorSet& s, std::size_t max_triples = kDefaultMaxTriples);

// ---------------------------------------------------------------------------
// Witness checks

bool is_3sum_witness(std::span<const std::int64_t> values, const Witness3& w);
bool is_3sum_witness(std::span<const BigInt> values, const Witness3& w);
bool is_3xor_witness(std::span<const BitVec> vectors, const Witness3& w);
bool is_6sum_witness(std::span<const Z3Vec> elements, const Witness6& w);

}  // namespace triweb
