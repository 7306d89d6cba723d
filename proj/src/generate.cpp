#include "triweb/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "triweb/rng.hpp"
#include "triweb/solvers.hpp"

namespace triweb {

namespace {

constexpr std::size_t kMaxRejections = 1000;

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

/// Positions of the first k values after applying a random permutation to all n.
template <class T>
std::vector<std::size_t> shuffle_tracking(Rng& rng, std::vector<T>& values, std::size_t k) {
  std::vector<std::size_t> perm(values.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<T> out(values.size());
  std::vector<std::size_t> where(k);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[perm[i]] = std::move(values[i]);
    if (i < k) where[i] = perm[i];
  }
  values = std::move(out);
  return where;
}

}  // namespace

BitVec random_bitvec(Rng& rng, std::size_t width) {
  BitVec v(width);
  for (std::size_t b = 0; b < width; b += 64) {
    const std::uint64_t word = rng();
    for (std::size_t t = 0; t < 64 && b + t < width; ++t)
      if ((word >> t) & 1U) v.set(b + t);
  }
  return v;
}

Z3Vec random_z3(Rng& rng, std::size_t length) {
  Z3Vec v(length);
  for (std::size_t i = 0; i < length; ++i) v.set(i, static_cast<unsigned>(uniform_int<int>(rng, 0, 2)));
  return v;
}

Graph gen_graph(std::size_t n, std::size_t m, std::size_t planted, std::uint64_t seed) {
  const std::uint64_t total = choose2(n);
  if (m > total) {
    throw std::invalid_argument("m = " + std::to_string(m) + " exceeds n(n-1)/2 = " + std::to_string(total));
  }
  if (planted > choose3(n)) throw std::invalid_argument("more planted triangles than node triples");
  auto rng = make_rng(seed, 0x67);
  std::unordered_set<std::uint64_t> present;
  std::vector<std::pair<Label, Label>> edges;
  edges.reserve(m);
  auto add = [&](std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    if (present.insert(static_cast<std::uint64_t>(u) * n + v).second) edges.emplace_back(u + 1, v + 1);
  };

  if (planted > 0 && 3 * planted <= m && 2 * planted <= choose3(n)) {
    std::unordered_set<std::uint64_t> triples;
    while (triples.size() < planted) {
      std::array<std::size_t, 3> t{};
      t[0] = uniform_int<std::size_t>(rng, 0, n - 1);
      do t[1] = uniform_int<std::size_t>(rng, 0, n - 1);
      while (t[1] == t[0]);
      do t[2] = uniform_int<std::size_t>(rng, 0, n - 1);
      while (t[2] == t[0] || t[2] == t[1]);
      std::sort(t.begin(), t.end());
      if (!triples.insert((static_cast<std::uint64_t>(t[0]) * n + t[1]) * n + t[2]).second) continue;
      add(t[0], t[1]);
      add(t[1], t[2]);
      add(t[0], t[2]);
    }
  } else if (planted > 0) {
    std::size_t k = 3;
    while (choose3(k) < planted) ++k;
    if (k > n || choose2(k) > m) {
      throw std::invalid_argument("cannot plant " + std::to_string(planted) + " triangles with " +
                                  std::to_string(m) + " edges");
    }
    std::vector<std::size_t> nodes(n);
    std::iota(nodes.begin(), nodes.end(), std::size_t{0});
    std::shuffle(nodes.begin(), nodes.end(), rng);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) add(nodes[a], nodes[b]);
  }

  if (m - edges.size() <= (total - edges.size()) / 2) {
    while (edges.size() < m) {
      const auto u = uniform_int<std::size_t>(rng, 0, n - 1);
      const auto v = uniform_int<std::size_t>(rng, 0, n - 1);
      if (u != v) add(u, v);
    }
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> missing;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (!present.count(static_cast<std::uint64_t>(u) * n + v)) missing.emplace_back(u, v);
    std::shuffle(missing.begin(), missing.end(), rng);
    for (std::size_t i = 0; edges.size() < m; ++i) add(missing[i].first, missing[i].second);
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return normalize_graph(edges);
}

Planted<IntegerSet, Witness3> gen_3sum(std::size_t n, bool plant, std::uint64_t seed, unsigned exponent) {
  if (n < 3) throw std::invalid_argument("3SUM instances need n >= 3");
  const std::int64_t bound = IntegerSet::default_bound(n, exponent);
  if (static_cast<std::uint64_t>(bound) < n) throw std::invalid_argument("magnitude bound too small for n values");
  auto rng = make_rng(seed, 0x3503);
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<std::int64_t> values;
    std::unordered_set<std::int64_t> seen;
    auto push = [&](std::int64_t v) {
      if (!seen.insert(v).second) return false;
      values.push_back(v);
      return true;
    };
    if (plant) {
      const std::int64_t half = std::max<std::int64_t>(bound / 2, 1);
      std::int64_t a = 0, b = 0, c = 0;
      do {
        a = uniform_int<std::int64_t>(rng, -half, half);
        b = uniform_int<std::int64_t>(rng, -half, half);
        c = -a - b;
      } while (a == b || a == c || b == c);
      push(a);
      push(b);
      push(c);
    }
    while (values.size() < n) push(uniform_int<std::int64_t>(rng, -bound, bound));
    auto where = shuffle_tracking(rng, values, plant ? 3 : 0);
    IntegerSet set(std::move(values), bound);
    if (plant) return {std::move(set), Witness3{{where[0], where[1], where[2]}}};
    if (!solve_3sum_quadratic(set)) return {std::move(set), std::nullopt};
  }
  throw std::runtime_error("could not sample a solution-free 3SUM instance");
}

Planted<BitVectorSet, Witness3> gen_3xor(std::size_t n, bool plant, std::uint64_t seed, std::size_t width) {
  if (n < 3) throw std::invalid_argument("3XOR instances need n >= 3");
  if (width == 0) width = std::max<std::size_t>(3, 3 * ceil_log2(n));
  if (width < 64 && (std::uint64_t{1} << width) < n) throw std::invalid_argument("width too small for n vectors");
  auto rng = make_rng(seed, 0x3c0f);
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<BitVec> vectors;
    std::unordered_set<BitVec, BitVecHash> seen;
    auto push = [&](BitVec v) {
      if (!seen.insert(v).second) return;
      vectors.push_back(std::move(v));
    };
    if (plant) {
      BitVec x, y;
      do {
        x = random_bitvec(rng, width);
        y = random_bitvec(rng, width);
      } while (x.is_zero() || y.is_zero() || x == y);
      BitVec z = x ^ y;
      push(std::move(x));
      push(std::move(y));
      push(std::move(z));
    }
    while (vectors.size() < n) push(random_bitvec(rng, width));
    auto where = shuffle_tracking(rng, vectors, plant ? 3 : 0);
    BitVectorSet set(std::move(vectors), width);
    if (plant) return {std::move(set), Witness3{{where[0], where[1], where[2]}}};
    if (!solve_3xor_quadratic(set)) return {std::move(set), std::nullopt};
  }
  throw std::runtime_error("could not sample a solution-free 3XOR instance");
}

Planted<C3xorArray, WitnessC3xor> gen_c3xor(std::size_t n, bool plant, std::uint64_t seed, std::size_t width,
                                            double absent_fraction) {
  if (n < 4 || !is_power_of_two(n)) throw std::invalid_argument("C3XOR arrays need a power-of-two n >= 4");
  if (width == 0) width = std::max<std::size_t>(3, 3 * ceil_log2(n));
  auto rng = make_rng(seed, 0xc3);
  std::bernoulli_distribution absent(absent_fraction);
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<std::optional<BitVec>> entries(n);
    for (auto& e : entries)
      if (!absent(rng)) e = random_bitvec(rng, width);
    if (plant) {
      std::size_t i = 0, j = 0;
      do {
        i = uniform_int<std::size_t>(rng, 1, n - 1);
        j = uniform_int<std::size_t>(rng, 1, n - 1);
      } while (i == j);
      entries[i] = random_bitvec(rng, width);
      entries[j] = random_bitvec(rng, width);
      entries[i ^ j] = *entries[i] ^ *entries[j];
      return {C3xorArray(std::move(entries), width), WitnessC3xor{i, j}};
    }
    C3xorArray array(std::move(entries), width);
    if (!solve_c3xor_bruteforce(array)) return {std::move(array), std::nullopt};
  }
  throw std::runtime_error("could not sample a solution-free C3XOR instance");
}

Planted<Z3VectorSet, Witness6> gen_6sum(std::size_t n, bool plant, std::uint64_t seed, std::size_t length) {
  if (n < 6) throw std::invalid_argument("6SUM instances need n >= 6");
  if (length == 0) {
    length = static_cast<std::size_t>(std::ceil(6.0 * std::log(static_cast<double>(n)) / std::log(3.0))) + 2;
  }
  auto rng = make_rng(seed, 0x6503);
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<Z3Vec> elements;
    elements.reserve(n);
    if (plant) {
      Z3Vec sum(length);
      for (int k = 0; k < 5; ++k) {
        elements.push_back(random_z3(rng, length));
        sum += elements.back();
      }
      elements.push_back(sum.negated());
    }
    while (elements.size() < n) elements.push_back(random_z3(rng, length));
    auto where = shuffle_tracking(rng, elements, plant ? 6 : 0);
    Z3VectorSet set(std::move(elements), length);
    if (plant) {
      Witness6 w;
      std::copy(where.begin(), where.end(), w.idx.begin());
      return {std::move(set), w};
    }
    if (!solve_6sum_z3(set)) return {std::move(set), std::nullopt};
  }
  throw std::runtime_error("could not sample a solution-free 6SUM instance");
}

InstanceKind parse_instance_kind(std::string_view name) {
  if (name == "3sum") return InstanceKind::Sum3;
  if (name == "3xor") return InstanceKind::Xor3;
  if (name == "c3xor") return InstanceKind::C3xor;
  if (name == "6sum" || name == "6sum_z3") return InstanceKind::Sum6;
  throw std::invalid_argument("unknown instance kind '" + std::string(name) + "'");
}

GeneratedInstance gen_planted_instance(InstanceKind kind, std::size_t n, bool plant, std::uint64_t seed) {
  auto wrap = [](auto planted) {
    GeneratedInstance g{std::move(planted.instance), std::nullopt};
    if (planted.witness) g.witness = AnyWitness(*planted.witness);
    return g;
  };
  switch (kind) {
    case InstanceKind::Sum3:
      return wrap(gen_3sum(n, plant, seed));
    case InstanceKind::Xor3:
      return wrap(gen_3xor(n, plant, seed));
    case InstanceKind::C3xor:
      return wrap(gen_c3xor(n, plant, seed));
    case InstanceKind::Sum6:
      return wrap(gen_6sum(n, plant, seed));
  }
  throw std::invalid_argument("unknown instance kind");
}

}  // namespace triweb
