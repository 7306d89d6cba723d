#include "triweb/xor_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "triweb/rng.hpp"
#include "triweb/solvers.hpp"

namespace triweb {

C3xorSolver bruteforce_c3xor_solver() {
  return [](const C3xorArray& a) { return solve_c3xor_bruteforce(a); };
}

TriangleLister baseline_lister() {
  return [](const Graph& g, std::size_t cap) { return list_all_triangles(g, cap); };
}

// ---------------------------------------------------------------------------

std::size_t reduced_length(std::size_t n) { return 3 * ceil_log2(n); }

LengthReduction reduce_length(const BitVectorSet& s, std::uint64_t seed) {
  LengthReduction out;
  const std::size_t target = reduced_length(s.size());
  if (s.width() <= target) {
    out.identity = true;
    out.hashed.assign(s.vectors().begin(), s.vectors().end());
    return out;
  }
  out.keys = sample_hash(s.width(), target, seed);
  out.hashed.reserve(s.size());
  for (const auto& v : s.vectors()) out.hashed.push_back(out.keys.apply(v));
  return out;
}

LengthReducedSolve solve_3xor_length_reduced(const BitVectorSet& s, const Xor3Solver& solver, std::uint64_t seed,
                                             std::size_t max_rounds) {
  LengthReducedSolve out;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const auto reduced = reduce_length(s, derive_seed(seed, round));
    ++out.rounds;
    const auto w = solver(reduced.hashed);
    if (!w) return out;
    if (is_3xor_witness(s.vectors(), *w)) {
      out.witness = w;
      return out;
    }
    ++out.spurious;
    if (reduced.identity) throw std::logic_error("3XOR solver returned an invalid witness");
  }
  out.witness = solver(s.vectors());
  if (out.witness && !is_3xor_witness(s.vectors(), *out.witness)) {
    throw std::logic_error("3XOR solver returned an invalid witness");
  }
  return out;
}

// ---------------------------------------------------------------------------

Xor3ViaC3xorResult solve_3xor_via_c3xor(const BitVectorSet& s, const C3xorSolver& solver,
                                        const Xor3ViaC3xorOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (options.amplification == 0) throw std::invalid_argument("amplification must be positive");
  Xor3ViaC3xorResult out;
  const std::size_t n = s.size();
  const auto vectors = s.vectors();
  // The zero vector is in no solution with three distinct vectors.
  std::vector<std::size_t> elems;
  for (std::size_t i = 0; i < n; ++i)
    if (!vectors[i].is_zero()) elems.push_back(i);
  if (elems.size() < 3) return out;

  const auto r = static_cast<std::size_t>(
      std::max(1.0, std::floor((1.0 - options.alpha) * std::log2(static_cast<double>(n)))));
  const std::size_t buckets = std::size_t{1} << r;
  out.bucket_bits = r;
  out.overload_threshold = 3.0 * static_cast<double>(n) / static_cast<double>(buckets);
  const auto keys = sample_hash(s.width(), r, options.seed);

  std::vector<std::vector<std::size_t>> bucket(buckets);
  for (auto i : elems) bucket[keys.apply_uint(vectors[i])].push_back(i);

  std::unordered_map<BitVec, std::size_t, BitVecHash> position;
  for (auto i : elems) position.emplace(vectors[i], i);

  for (const auto& b : bucket) {
    if (static_cast<double>(b.size()) <= out.overload_threshold) continue;
    out.overloaded_elements += b.size();
    for (auto x : b) {
      for (auto y : elems) {
        if (y == x) continue;
        auto it = position.find(vectors[x] ^ vectors[y]);
        if (it != position.end() && it->second != x && it->second != y) {
          out.witness = Witness3{{x, y, it->second}};
          out.found_in_direct_check = true;
          return out;
        }
      }
    }
  }

  std::size_t max_load = 0;
  for (const auto& b : bucket)
    if (static_cast<double>(b.size()) <= out.overload_threshold) max_load = std::max(max_load, b.size());
  // by_slot[p] = buckets holding a p-th element (overloaded buckets excluded).
  std::vector<std::vector<std::size_t>> by_slot(max_load);
  for (std::size_t h = 0; h < buckets; ++h) {
    if (static_cast<double>(bucket[h].size()) > out.overload_threshold) continue;
    for (std::size_t p = 0; p < bucket[h].size(); ++p) by_slot[p].push_back(h);
  }

  std::vector<std::size_t> cell_element(4 * buckets);
  for (std::size_t p1 = 0; p1 < max_load; ++p1) {
    for (std::size_t p2 = 0; p2 < max_load; ++p2) {
      for (std::size_t p3 = 0; p3 < max_load; ++p3) {
        std::vector<std::optional<BitVec>> cells(4 * buckets);
        const std::array<std::size_t, 3> slot{p1, p2, p3};
        for (std::size_t tag = 1; tag <= 3; ++tag) {
          for (auto h : by_slot[slot[tag - 1]]) {
            const std::size_t e = bucket[h][slot[tag - 1]];
            cells[(h << 2) | tag] = vectors[e];
            cell_element[(h << 2) | tag] = e;
          }
        }
        const C3xorArray array(std::move(cells), s.width());
        ++out.arrays_built;
        for (std::size_t call = 0; call < options.amplification; ++call) {
          ++out.solver_calls;
          const auto w = solver(array);
          if (!w) continue;
          if (!is_c3xor_witness(array, *w)) continue;
          const std::size_t x = cell_element[w->i], y = cell_element[w->j], z = cell_element[w->i ^ w->j];
          const Witness3 candidate{{x, y, z}};
          if (is_3xor_witness(vectors, candidate)) {
            out.witness = candidate;
            out.error_budget = 0.0;
            return out;
          }
        }
      }
    }
  }
  out.error_budget = std::min(
      1.0, static_cast<double>(out.arrays_built) *
               std::pow(options.inner_error, static_cast<double>(options.amplification)));
  return out;
}

// ---------------------------------------------------------------------------

std::optional<WitnessC3xor> solve_c3xor_via_3xor(const C3xorArray& a, const Xor3Solver& solver) {
  if (a.size() == 0) return std::nullopt;
  if (a[0] && a[0]->is_zero()) return WitnessC3xor{0, 0};
  const std::size_t s = a.index_bits();
  std::vector<BitVec> set;
  std::vector<std::size_t> cell;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    set.push_back(a[i]->concat(BitVec::from_uint(i, s)));
    cell.push_back(i);
  }
  const auto w = solver(set);
  if (!w) return std::nullopt;
  if (!is_3xor_witness(set, *w)) throw std::logic_error("3XOR solver returned an invalid witness");
  const WitnessC3xor out{cell[w->idx[0]], cell[w->idx[1]]};
  if (!is_c3xor_witness(a, out)) throw std::logic_error("3XOR witness does not decode to a C3XOR pair");
  return out;
}

bool is_c3sum_witness(std::span<const std::int64_t> a, std::size_t i, std::size_t j) {
  if (i >= a.size() || j >= a.size() || i + j >= a.size()) return false;
  return __int128{a[i]} + a[j] == a[i + j];
}

std::optional<std::pair<std::size_t, std::size_t>> solve_c3sum_bruteforce(std::span<const std::int64_t> a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j)
      if (is_c3sum_witness(a, i, j)) return std::make_pair(i, j);
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> solve_c3sum_via_3sum(std::span<const std::int64_t> a,
                                                                        const Sum3Solver& solver) {
  const std::size_t n = a.size();
  for (auto v : a)
    if (v < 0) throw std::invalid_argument("C3SUM entries must be nonnegative");
  for (std::size_t i = 0; 2 * i < n; ++i)
    if (is_c3sum_witness(a, i, i)) return std::make_pair(i, i);
  const std::size_t s = ceil_log2(n);
  std::vector<BigInt> set;
  set.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) set.push_back((BigInt(a[i]) << (s + 1)) + i);
  for (std::size_t i = 0; i < n; ++i) set.push_back(-set[i]);
  const auto w = solver(set);
  if (!w) return std::nullopt;
  std::vector<std::size_t> pos, neg;
  for (auto idx : w->idx) {
    if (idx >= 2 * n) throw std::logic_error("3SUM witness out of range");
    (idx < n ? pos : neg).push_back(idx % n);
  }
  if (pos.size() == 1) std::swap(pos, neg);
  if (pos.size() != 2 || neg.size() != 1) throw std::logic_error("3SUM witness has no valid sign pattern");
  const std::size_t i = pos[0], j = pos[1], k = neg[0];
  if (i + j != k || !is_c3sum_witness(a, i, j)) throw std::logic_error("3SUM witness does not decode to a C3SUM pair");
  return std::make_pair(i, j);
}

// ---------------------------------------------------------------------------

C3xorArray pad_to_square(const C3xorArray& a) {
  std::size_t bits = a.index_bits();
  if (bits % 2 == 0) return a;
  std::vector<std::optional<BitVec>> cells(a.entries().begin(), a.entries().end());
  cells.resize(std::size_t{1} << (bits + 1));
  return C3xorArray(std::move(cells), a.value_width());
}

CxorNode CxorGraph::annotate(Label label) const {
  const auto n = static_cast<Label>(size);
  if (label < 0 || label >= 3 * n) throw std::out_of_range("label outside the C3XOR graph");
  CxorNode node;
  node.part = static_cast<int>(label / n);
  const auto rest = static_cast<std::size_t>(label % n);
  if (node.part == 0) {
    node.block = rest;
  } else {
    node.block = rest >> half_bits;
    node.hash = rest & (buckets() - 1);
  }
  return node;
}

std::pair<std::size_t, std::size_t> CxorGraph::decode(const Triangle& t) const {
  std::array<std::size_t, 3> block{};
  std::array<bool, 3> seen{};
  for (auto v : t.nodes) {
    const auto node = annotate(graph.graph.label(v));
    block[node.part] = node.block;
    seen[node.part] = true;
  }
  if (!(seen[0] && seen[1] && seen[2])) throw std::invalid_argument("not a triangle across the three parts");
  return {block[0] ^ (block[1] << half_bits), block[0] ^ block[2]};
}

XorHashKeys sample_cxor_keys(const C3xorArray& a, std::uint64_t seed) {
  const std::size_t bits = a.index_bits();
  return sample_hash(a.value_width(), (bits + 1) / 2, seed);
}

namespace {

std::vector<std::uint64_t> cell_hashes(const C3xorArray& a, const XorHashKeys& keys) {
  if (keys.input_width() != a.value_width()) throw std::invalid_argument("hash keys do not match the value width");
  std::vector<std::uint64_t> h(a.size(), 0);
  for (std::size_t c = 0; c < a.size(); ++c)
    if (a[c]) h[c] = keys.apply_uint(*a[c]);
  return h;
}

std::size_t require_square(const C3xorArray& a, const XorHashKeys& keys) {
  const std::size_t bits = a.index_bits();
  if (bits % 2 != 0) throw std::invalid_argument("C3XOR graph needs n = 4^s; pad the array first");
  if (keys.output_width() != bits / 2) throw std::invalid_argument("hash keys must map to lg sqrt(n) bits");
  return bits / 2;
}

}  // namespace

CxorGraph build_cxor_graph(const C3xorArray& a, const XorHashKeys& keys) {
  CxorGraph out;
  out.half_bits = require_square(a, keys);
  out.size = a.size();
  out.keys = keys;
  const std::size_t n = a.size(), s = out.half_bits, r = std::size_t{1} << s;
  const auto h = cell_hashes(a, keys);
  const auto ln = static_cast<Label>(n);
  std::vector<std::pair<Label, Label>> edges;
  edges.reserve(3 * n * r);
  for (std::size_t a_node = 0; a_node < n; ++a_node) {
    for (std::size_t bh = 0; bh < r; ++bh) {
      const std::size_t c = a_node ^ (bh << s);
      if (a[c]) edges.emplace_back(static_cast<Label>(a_node), ln + static_cast<Label>(bh * r + h[c]));
    }
    for (std::size_t bl = 0; bl < r; ++bl) {
      const std::size_t c = a_node ^ bl;
      if (a[c]) edges.emplace_back(static_cast<Label>(a_node), 2 * ln + static_cast<Label>(bl * r + h[c]));
    }
  }
  for (std::size_t bh = 0; bh < r; ++bh) {
    for (std::size_t bl = 0; bl < r; ++bl) {
      const std::size_t b = (bh << s) | bl;
      if (!a[b]) continue;
      for (std::size_t x = 0; x < r; ++x) {
        edges.emplace_back(ln + static_cast<Label>(bh * r + x), 2 * ln + static_cast<Label>(bl * r + (x ^ h[b])));
      }
    }
  }
  out.graph.graph = normalize_graph(edges);
  out.graph.parts = {NodeRange{0, ln}, NodeRange{ln, 2 * ln}, NodeRange{2 * ln, 3 * ln}};
  return out;
}

void write_cxor_annotations(std::ostream& out, const CxorGraph& g) {
  for (auto label : g.graph.graph.labels()) {
    const auto node = g.annotate(label);
    out << label << ' ' << node.part << ' ' << node.block << ' ' << node.hash << '\n';
  }
}

StarPairCount count_star_pairs(const C3xorArray& padded, const XorHashKeys& keys) {
  const std::size_t s = require_square(padded, keys);
  const auto h = cell_hashes(padded, keys);
  const std::size_t n = padded.size(), mask = (std::size_t{1} << s) - 1;
  StarPairCount out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t i = a ^ ((b >> s) << s), j = a ^ (b & mask);
      if (!padded[i] || !padded[j] || !padded[b]) continue;
      if ((h[i] ^ h[j]) != h[b]) continue;
      ++out.star_pairs;
      if ((*padded[i] ^ *padded[j]) == *padded[b]) ++out.genuine;
    }
  }
  return out;
}

C3xorViaListingResult solve_c3xor_via_listing(const C3xorArray& a, const TriangleLister& lister, std::size_t retries,
                                              std::uint64_t seed) {
  if (retries == 0) throw std::invalid_argument("retries must be positive");
  C3xorViaListingResult out;
  const C3xorArray padded = pad_to_square(a);
  for (std::size_t round = 0; round < retries; ++round) {
    ++out.rounds;
    const auto keys = sample_cxor_keys(padded, derive_seed(seed, round));
    const auto g = build_cxor_graph(padded, keys);
    const std::size_t m = g.graph.graph.edge_count();
    const auto triangles = lister(g.graph.graph, m);
    for (const auto& t : triangles) {
      ++out.triangles_examined;
      const auto [i, j] = g.decode(t);
      const WitnessC3xor w{i, j};
      if (is_c3xor_witness(padded, w)) {
        out.witness = w;
        return out;
      }
    }
    if (triangles.size() < m || m == 0) return out;
  }
  out.exhausted = true;
  return out;
}

}  // namespace triweb
