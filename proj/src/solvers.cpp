#include "triweb/solvers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace triweb {

std::optional<Witness3> solve_3sum_quadratic(const IntegerSet& s) {
  return solve_3sum_quadratic<std::int64_t>(s.values());
}

bool is_3sum_witness(std::span<const std::int64_t> values, const Witness3& w) {
  const auto [i, j, k] = w.idx;
  if (i == j || j == k || i == k) return false;
  if (i >= values.size() || j >= values.size() || k >= values.size()) return false;
  return __int128{values[i]} + values[j] + values[k] == 0;
}

bool is_3sum_witness(std::span<const BigInt> values, const Witness3& w) {
  const auto [i, j, k] = w.idx;
  if (i == j || j == k || i == k) return false;
  if (i >= values.size() || j >= values.size() || k >= values.size()) return false;
  return values[i] + values[j] + values[k] == 0;
}

namespace {

constexpr std::uint64_t kResidueModulus = (std::uint64_t{1} << 61) - 1;

std::uint64_t residue(std::int64_t v) {
  const std::int64_t r = v % static_cast<std::int64_t>(kResidueModulus);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(kResidueModulus) : r);
}

std::uint64_t residue(const BigInt& v) {
  BigInt r = v % kResidueModulus;
  if (r < 0) r += kResidueModulus;
  return static_cast<std::uint64_t>(r);
}

bool sums_to_zero(std::int64_t a, std::int64_t b, std::int64_t c) { return __int128{a} + b + c == 0; }
bool sums_to_zero(const BigInt& a, const BigInt& b, const BigInt& c) { return a + b + c == 0; }

template <class T>
std::optional<Witness3> solve_3sum_hashed_impl(std::span<const T> values) {
  const std::size_t n = values.size();
  if (n < 3) return std::nullopt;
  std::vector<std::pair<std::uint64_t, std::size_t>> index(n);
  std::vector<std::uint64_t> res(n);
  for (std::size_t i = 0; i < n; ++i) {
    res[i] = residue(values[i]);
    index[i] = {res[i], i};
  }
  std::sort(index.begin(), index.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint64_t pair = (res[i] + res[j]) % kResidueModulus;
      const std::uint64_t target = pair == 0 ? 0 : kResidueModulus - pair;
      auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(target, std::size_t{0}));
      for (; it != index.end() && it->first == target; ++it) {
        const std::size_t k = it->second;
        if (k == i || k == j) continue;
        if (sums_to_zero(values[i], values[j], values[k])) return Witness3{{i, j, k}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness3> solve_3sum_hashed(std::span<const BigInt> values) {
  return solve_3sum_hashed_impl(values);
}

std::optional<Witness3> solve_3sum_hashed(std::span<const std::int64_t> values) {
  return solve_3sum_hashed_impl(values);
}

bool is_3xor_witness(std::span<const BitVec> vectors, const Witness3& w) {
  const auto [i, j, k] = w.idx;
  if (i == j || j == k || i == k) return false;
  if (i >= vectors.size() || j >= vectors.size() || k >= vectors.size()) return false;
  return (vectors[i] ^ vectors[j]) == vectors[k];
}

// ---------------------------------------------------------------------------
// 3XOR

std::optional<Witness3> find_repeated_value_3xor(std::span<const BitVec> vectors) {
  std::vector<std::size_t> order(vectors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return vectors[a] < vectors[b]; });
  std::vector<std::size_t> zeros;
  for (auto i : order) {
    if (vectors[i].is_zero()) zeros.push_back(i);
  }
  if (zeros.empty()) return std::nullopt;
  for (std::size_t p = 0; p + 1 < order.size(); ++p) {
    if (vectors[order[p]] != vectors[order[p + 1]]) continue;
    for (auto z : zeros) {
      if (z != order[p] && z != order[p + 1]) return Witness3{{order[p], order[p + 1], z}};
    }
  }
  return std::nullopt;
}

namespace {

// Up to three positions per value are enough to pick one outside any pair.
struct Positions {
  std::array<std::size_t, 3> at{};
  std::size_t count = 0;
  void add(std::size_t i) {
    if (count < at.size()) at[count++] = i;
  }
  std::optional<std::size_t> other_than(std::size_t a, std::size_t b) const {
    for (std::size_t p = 0; p < count; ++p)
      if (at[p] != a && at[p] != b) return at[p];
    return std::nullopt;
  }
};

template <class Key, class Hash, class KeyOf>
std::optional<Witness3> pair_scan(std::size_t n, KeyOf key_of) {
  std::unordered_map<Key, Positions, Hash> index;
  index.reserve(n * 2);
  std::vector<Key> keys;
  keys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys.push_back(key_of(i));
    index[keys.back()].add(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto it = index.find(keys[i] ^ keys[j]);
      if (it == index.end()) continue;
      if (auto k = it->second.other_than(i, j)) return Witness3{{i, j, *k}};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness3> solve_3xor_quadratic(std::span<const BitVec> vectors) {
  if (vectors.size() < 3) return std::nullopt;
  const std::size_t width = vectors.front().width();
  for (const auto& v : vectors) {
    if (v.width() != width) throw std::invalid_argument("3XOR input with mixed widths");
  }
  if (auto w = find_repeated_value_3xor(vectors)) return w;
  if (width <= 64) {
    return pair_scan<std::uint64_t, std::hash<std::uint64_t>>(
        vectors.size(), [&](std::size_t i) { return vectors[i].to_uint(); });
  }
  return pair_scan<BitVec, BitVecHash>(vectors.size(), [&](std::size_t i) { return vectors[i]; });
}

std::optional<Witness3> solve_3xor_quadratic(const BitVectorSet& s) {
  return solve_3xor_quadratic(s.vectors());
}

void walsh_hadamard(std::span<std::int64_t> data) {
  if (!is_power_of_two(data.size())) throw std::invalid_argument("transform size must be a power of two");
  for (std::size_t len = 1; len < data.size(); len <<= 1) {
    for (std::size_t block = 0; block < data.size(); block += len << 1) {
      for (std::size_t i = block; i < block + len; ++i) {
        const std::int64_t a = data[i], b = data[i + len];
        data[i] = a + b;
        data[i + len] = a - b;
      }
    }
  }
}

std::int64_t count_3xor_triples_wht(const BitVectorSet& s, std::size_t width_cap) {
  const std::size_t width = s.width();
  if (width > width_cap) {
    throw std::invalid_argument("width " + std::to_string(width) + " exceeds transform cap " +
                                std::to_string(width_cap));
  }
  std::vector<std::int64_t> f(std::size_t{1} << width, 0);
  bool has_zero = false;
  for (const auto& v : s.vectors()) {
    f[v.to_uint()] = 1;
    has_zero = has_zero || v.is_zero();
  }
  walsh_hadamard(f);
  __int128 cubes = 0;
  for (auto c : f) cubes += __int128{c} * c * c;
  // Ordered triples over S^3, distinct or not.
  const auto all = static_cast<std::int64_t>(cubes >> width);
  if (!has_zero) return all;
  // With 0 in S the non-distinct triples are (x,x,0), (x,0,x), (0,x,x): 3n of
  // them, where (0,0,0) was counted three times instead of once.
  const auto n = static_cast<std::int64_t>(s.size());
  return all - (3 * n - 2);
}

std::optional<Witness3> solve_3xor_wht(const BitVectorSet& s, std::size_t width_cap) {
  if (count_3xor_triples_wht(s, width_cap) <= 0) return std::nullopt;
  return solve_3xor_quadratic(s);
}

// ---------------------------------------------------------------------------
// Triangles

namespace {

// Forward adjacency under the order (degree, id): out(u) holds neighbours of
// higher rank, sorted by id. Nodes of degree <= sqrt(m) have out-degree
// <= sqrt(m); there are at most 2 sqrt(m) nodes above that, so every out list
// is O(sqrt m) and the pairwise intersections cost O(m^1.5) overall.
// Neighbours of higher (degree, id) rank, in compressed rows.
struct ForwardAdjacency {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;

  std::span<const NodeId> row(NodeId u) const {
    return std::span<const NodeId>(targets).subspan(offsets[u], offsets[u + 1] - offsets[u]);
  }
};

ForwardAdjacency forward_adjacency(const Graph& g) {
  auto ranks_before = [&g](NodeId a, NodeId b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da != db ? da < db : a < b;
  };
  ForwardAdjacency out;
  out.offsets.assign(g.node_count() + 1, 0);
  out.targets.reserve(g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u))
      if (ranks_before(u, v)) out.targets.push_back(v);
    out.offsets[u + 1] = out.targets.size();
  }
  return out;
}

template <class Visit>
void for_each_triangle(const Graph& g, Visit visit) {
  const auto out = forward_adjacency(g);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto ou = out.row(u);
    for (NodeId v : ou) {
      const auto ov = out.row(v);
      auto a = ou.begin();
      auto b = ov.begin();
      while (a != ou.end() && b != ov.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          if (!visit(make_triangle(u, v, *a))) return;
          ++a;
          ++b;
        }
      }
    }
  }
}

}  // namespace

std::optional<Triangle> detect_triangle(const Graph& g) {
  std::optional<Triangle> found;
  for_each_triangle(g, [&](const Triangle& t) {
    found = t;
    return false;
  });
  return found;
}

std::vector<Triangle> list_all_triangles(const Graph& g, std::size_t cap) {
  std::vector<Triangle> out;
  if (cap == 0) return out;
  for_each_triangle(g, [&](const Triangle& t) {
    out.push_back(t);
    return out.size() < cap;
  });
  return out;
}

std::optional<std::array<NodeId, 4>> detect_4clique_bruteforce(const Graph& g) {
  std::optional<std::array<NodeId, 4>> found;
  for_each_triangle(g, [&](const Triangle& t) {
    const auto na = g.neighbors(t.nodes[0]);
    const auto nb = g.neighbors(t.nodes[1]);
    const auto nc = g.neighbors(t.nodes[2]);
    std::vector<NodeId> ab;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(ab));
    for (NodeId w : ab) {
      if (std::binary_search(nc.begin(), nc.end(), w)) {
        std::array<NodeId, 4> q{t.nodes[0], t.nodes[1], t.nodes[2], w};
        std::sort(q.begin(), q.end());
        found = q;
        return false;
      }
    }
    return true;
  });
  return found;
}

// ---------------------------------------------------------------------------
// C3XOR

bool is_c3xor_witness(const C3xorArray& a, const WitnessC3xor& w) {
  if (w.i >= a.size() || w.j >= a.size()) return false;
  const auto& x = a[w.i];
  const auto& y = a[w.j];
  const auto& z = a[w.i ^ w.j];
  return x && y && z && (*x ^ *y) == *z;
}

std::optional<WitnessC3xor> solve_c3xor_bruteforce(const C3xorArray& a) {
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) present.push_back(i);
  for (auto i : present) {
    for (auto j : present) {
      const auto& z = a[i ^ j];
      if (z && (*a[i] ^ *a[j]) == *z) return WitnessC3xor{i, j};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// 6SUM over Z₃ᵗ

namespace {

std::uint64_t plane_fingerprint(std::span<const std::uint64_t> lo, std::span<const std::uint64_t> hi) {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  auto step = [&h](std::uint64_t w) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
  };
  for (std::size_t w = 0; w < lo.size(); ++w) {
    step(lo[w]);
    step(hi[w]);
  }
  return h;
}

struct TripleEntry {
  std::uint64_t sum_fp;
  std::uint64_t neg_fp;
  std::uint32_t i, j, k;
};

}  // namespace

bool is_6sum_witness(std::span<const Z3Vec> elements, const Witness6& w) {
  auto idx = w.idx;
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return false;
  if (idx.back() >= elements.size()) return false;
  Z3Vec total(elements[idx[0]].length());
  for (auto i : idx) total += elements[i];
  return total.is_zero();
}

std::optional<Witness6> solve_6sum_z3(std::span<const Z3Vec> elements, std::size_t max_triples) {
  const std::size_t n = elements.size();
  if (n < 6) return std::nullopt;
  const std::size_t length = elements.front().length();
  for (const auto& e : elements) {
    if (e.length() != length) throw std::invalid_argument("6SUM input with mixed lengths");
  }
  const std::size_t triples = n * (n - 1) * (n - 2) / 6;
  if (triples > max_triples) {
    throw std::length_error("6SUM meet-in-the-middle needs " + std::to_string(triples) +
                            " triples, above the limit " + std::to_string(max_triples));
  }
  const std::size_t words = elements.front().lo().size();
  std::vector<std::uint64_t> pair_lo(words), pair_hi(words), sum_lo(words), sum_hi(words);

  std::vector<TripleEntry> table;
  table.reserve(triples);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      z3_add_words(elements[i].lo(), elements[i].hi(), elements[j].lo(), elements[j].hi(), pair_lo,
                   pair_hi);
      for (std::uint32_t k = j + 1; k < n; ++k) {
        z3_add_words(pair_lo, pair_hi, elements[k].lo(), elements[k].hi(), sum_lo, sum_hi);
        table.push_back({plane_fingerprint(sum_lo, sum_hi), plane_fingerprint(sum_hi, sum_lo), i, j, k});
      }
    }
  }
  std::vector<std::uint32_t> by_sum(table.size());
  std::iota(by_sum.begin(), by_sum.end(), 0U);
  std::stable_sort(by_sum.begin(), by_sum.end(), [&](std::uint32_t a, std::uint32_t b) {
    return table[a].sum_fp < table[b].sum_fp;
  });

  auto exact_zero = [&](const TripleEntry& a, const TripleEntry& b) {
    Z3Vec total(length);
    for (auto idx : {a.i, a.j, a.k, b.i, b.j, b.k}) total += elements[idx];
    return total.is_zero();
  };
  for (const auto& t : table) {
    auto lo = std::lower_bound(by_sum.begin(), by_sum.end(), t.neg_fp,
                               [&](std::uint32_t e, std::uint64_t fp) { return table[e].sum_fp < fp; });
    for (auto it = lo; it != by_sum.end() && table[*it].sum_fp == t.neg_fp; ++it) {
      const auto& u = table[*it];
      const bool disjoint = u.i != t.i && u.i != t.j && u.i != t.k && u.j != t.i && u.j != t.j &&
                            u.j != t.k && u.k != t.i && u.k != t.j && u.k != t.k;
      if (!disjoint || !exact_zero(t, u)) continue;
      Witness6 w{{t.i, t.j, t.k, u.i, u.j, u.k}};
      std::sort(w.idx.begin(), w.idx.end());
      return w;
    }
  }
  return std::nullopt;
}

std::optional<Witness6> solve_6sum_z3(const Z3VectorSet& s, std::size_t max_triples) {
  return solve_6sum_z3(s.elements(), max_triples);
}

}  // namespace triweb
