#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "triweb/generate.hpp"
#include "triweb/rng.hpp"
#include "triweb/solvers.hpp"
#include "triweb/xor_reduce.hpp"

using namespace triweb;

namespace {

C3xorArray zeros(std::size_t n, std::size_t width) {
  return C3xorArray(std::vector<std::optional<BitVec>>(n, BitVec(width)), width);
}

BitVectorSet full_space_without_zero(std::size_t width) {
  std::vector<BitVec> v;
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << width); ++x) v.push_back(BitVec::from_uint(x, width));
  return BitVectorSet(std::move(v), width);
}

std::vector<std::int64_t> random_c3sum(Rng& rng, std::size_t n, std::int64_t bound) {
  std::vector<std::int64_t> a(n);
  for (auto& x : a) x = uniform_int<std::int64_t>(rng, 0, bound);
  return a;
}

}  // namespace

TEST_CASE("length reduction") {
  CHECK(reduced_length(64) == 18);
  const auto narrow = gen_3xor(64, true, 1, 12);
  CHECK(reduce_length(narrow.instance, 1).identity);

  const auto wide = gen_3xor(64, false, 2, 60);
  const auto r = reduce_length(wide.instance, 3);
  CHECK_FALSE(r.identity);
  REQUIRE(r.hashed.size() == 64);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(r.hashed[i].width() == 18);
    CHECK(r.hashed[i] == r.keys.apply(wide.instance.vectors()[i]));
  }
}

TEST_CASE("length-reduced solving is exact") {
  std::size_t spurious = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = gen_3xor(32, seed % 2 == 0, seed, 48);
    const auto r = solve_3xor_length_reduced(p.instance, default_xor3_solver(), seed);
    CHECK(r.witness.has_value() == p.witness.has_value());
    if (r.witness) CHECK(is_3xor_witness(p.instance.vectors(), *r.witness));
    spurious += r.spurious;
  }
  // Hashed solutions that are not real ones: expected well under one per instance.
  CHECK(spurious < 40);
}

TEST_CASE("3XOR via C3XOR finds planted solutions and no others") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const bool plant = seed % 2 == 0;
    const auto p = gen_3xor(16 + seed % 100, plant, seed);
    Xor3ViaC3xorOptions o;
    o.seed = seed;
    const auto r = solve_3xor_via_c3xor(p.instance, bruteforce_c3xor_solver(), o);
    if (r.witness) CHECK(is_3xor_witness(p.instance.vectors(), *r.witness));
    if (!plant) CHECK_FALSE(r.witness.has_value());
    CHECK(r.overload_threshold > 0);
    CHECK(r.error_budget == 0.0);
  }
}

TEST_CASE("3XOR via C3XOR parameters and overloaded buckets") {
  // 63 vectors: r = floor(0.75 lg 63) = 4, threshold 3·63/16. A hash of rank
  // at most 2 on the space puts 16 vectors in a bucket.
  const auto s = full_space_without_zero(6);
  bool saw_overload = false;
  for (std::uint64_t seed = 0; seed < 3000 && !saw_overload; ++seed) {
    Xor3ViaC3xorOptions o;
    o.seed = seed;
    const auto r = solve_3xor_via_c3xor(s, bruteforce_c3xor_solver(), o);
    CHECK(r.bucket_bits == 4);
    CHECK(r.overload_threshold == doctest::Approx(3.0 * 63 / 16));
    REQUIRE(r.witness.has_value());
    CHECK(is_3xor_witness(s.vectors(), *r.witness));
    saw_overload = r.overloaded_elements > 0;
  }
  CHECK(saw_overload);

  Xor3ViaC3xorOptions noisy;
  noisy.inner_error = 0.1;
  noisy.amplification = 2;
  const auto r = solve_3xor_via_c3xor(gen_3xor(64, false, 9).instance, bruteforce_c3xor_solver(), noisy);
  CHECK(r.arrays_built > 0);
  CHECK(r.error_budget == doctest::Approx(std::min(1.0, static_cast<double>(r.arrays_built) * 0.01)));
}

TEST_CASE("C3XOR via 3XOR") {
  auto zero_first = zeros(4, 3);
  const auto w = solve_c3xor_via_3xor(zero_first, default_xor3_solver());
  REQUIRE(w.has_value());
  CHECK(*w == WitnessC3xor{0, 0});

  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = std::size_t{4} << (seed % 5);
    const auto p = gen_c3xor(n, seed % 3 == 0, seed, 0, 0.2);
    const auto r = solve_c3xor_via_3xor(p.instance, default_xor3_solver());
    CHECK(r.has_value() == oracle::naive_c3xor(p.instance));
    if (r) CHECK(is_c3xor_witness(p.instance, *r));
  }
}

TEST_CASE("C3SUM via 3SUM") {
  const std::vector<std::int64_t> small{0, 1, 1, 2};
  CHECK(is_c3sum_witness(small, 1, 2));
  CHECK_FALSE(is_c3sum_witness(small, 1, 1));
  CHECK(is_c3sum_witness(small, 0, 3));
  CHECK_FALSE(is_c3sum_witness(small, 2, 3));
  const auto w = solve_c3sum_via_3sum(small, default_sum3_solver());
  REQUIRE(w.has_value());
  CHECK(is_c3sum_witness(small, w->first, w->second));

  CHECK_THROWS_AS(solve_c3sum_via_3sum(std::vector<std::int64_t>{1, -2, 3}, default_sum3_solver()),
                  std::invalid_argument);

  auto rng = make_rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_c3sum(rng, 4 + trial % 20, 40);
    const auto r = solve_c3sum_via_3sum(a, default_sum3_solver());
    CHECK(r.has_value() == oracle::naive_c3sum(a));
    CHECK(r.has_value() == solve_c3sum_bruteforce(a).has_value());
    if (r) CHECK(is_c3sum_witness(a, r->first, r->second));
  }
}

TEST_CASE("padding to a square size") {
  const auto p8 = gen_c3xor(8, false, 1).instance;
  const auto sq = pad_to_square(p8);
  REQUIRE(sq.size() == 16);
  for (std::size_t i = 0; i < 8; ++i) CHECK(sq[i] == p8[i]);
  for (std::size_t i = 8; i < 16; ++i) CHECK_FALSE(sq[i].has_value());
  const auto p16 = gen_c3xor(16, false, 1).instance;
  CHECK(pad_to_square(p16) == p16);
}

TEST_CASE("all-zero array: every pair is a triangle") {
  const auto a = zeros(4, 3);
  const auto keys = sample_cxor_keys(a, 0);
  const auto g = build_cxor_graph(a, keys);
  CHECK(g.size == 4);
  CHECK(g.half_bits == 1);
  CHECK(g.graph.graph.edge_count() == 3 * 2 * 4);
  CHECK(list_all_triangles(g.graph.graph).size() == 16);
  CHECK(count_star_pairs(a, keys).star_pairs == 16);
}

TEST_CASE("triangles are exactly the hashed star pairs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = std::size_t{4} << (2 * (seed % 4));
    const auto a = gen_c3xor(n, seed % 2 == 0, seed, 0, 0.1).instance;
    const auto keys = sample_cxor_keys(a, seed);
    const auto g = build_cxor_graph(a, keys);
    CHECK_NOTHROW(g.graph.validate());
    CHECK(g.graph.graph.edge_count() == 3 * g.buckets() * a.present_count());
    const auto tris = list_all_triangles(g.graph.graph);
    const auto stars = count_star_pairs(a, keys);
    CHECK(tris.size() == stars.star_pairs);
    std::size_t genuine = 0;
    for (const auto& t : tris) {
      const auto [i, j] = g.decode(t);
      REQUIRE(i < a.size());
      REQUIRE(j < a.size());
      REQUIRE(a[i].has_value());
      REQUIRE(a[j].has_value());
      REQUIRE(a[i ^ j].has_value());
      CHECK((keys.apply(*a[i]) ^ keys.apply(*a[j])) == keys.apply(*a[i ^ j]));
      genuine += is_c3xor_witness(a, {i, j});
    }
    CHECK(genuine == stars.genuine);
  }
}

TEST_CASE("C3XOR via listing") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = std::size_t{4} << (seed % 6);
    const auto p = gen_c3xor(n, seed % 2 == 0, seed);
    const auto r = solve_c3xor_via_listing(p.instance, baseline_lister(), 7, seed);
    if (r.witness) CHECK(is_c3xor_witness(p.instance, *r.witness));
    if (p.witness) CHECK(r.witness.has_value());
    if (!oracle::naive_c3xor(p.instance)) CHECK_FALSE(r.witness.has_value());
  }
}

TEST_CASE("node annotations") {
  const auto a = gen_c3xor(16, true, 4).instance;
  const auto g = build_cxor_graph(a, sample_cxor_keys(a, 4));
  std::ostringstream out;
  write_cxor_annotations(out, g);
  std::istringstream in(out.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    std::istringstream f(line);
    Label label = 0;
    int part = 0;
    std::size_t block = 0, hash = 0;
    REQUIRE(static_cast<bool>(f >> label >> part >> block >> hash));
    const auto node = g.annotate(label);
    CHECK(node.part == part);
    CHECK(node.block == block);
    CHECK(node.hash == hash);
    ++lines;
  }
  CHECK(lines == g.graph.graph.node_count());
}
