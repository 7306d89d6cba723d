#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "triweb/generate.hpp"
#include "triweb/solvers.hpp"

using namespace triweb;

namespace {

BitVectorSet bits(std::initializer_list<const char*> v) {
  std::vector<BitVec> out;
  for (auto s : v) out.push_back(BitVec::from_binary(s));
  return BitVectorSet(out, out.front().width());
}

std::vector<BitVec> random_vectors(Rng& rng, std::size_t n, std::size_t width) {
  std::set<BitVec> seen;
  while (seen.size() < n) seen.insert(random_bitvec(rng, width));
  return {seen.begin(), seen.end()};
}

}  // namespace

TEST_CASE("3sum examples") {
  const IntegerSet s({-5, 2, 3}, 27);
  const auto w = solve_3sum_quadratic(s);
  REQUIRE(w);
  CHECK(is_3sum_witness(s.values(), *w));
  CHECK_FALSE(solve_3sum_quadratic(IntegerSet({1, 2, 4}, 27)));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = gen_3sum(200, true, seed);
    const auto found = solve_3sum_quadratic(p.instance);
    REQUIRE(found);
    CHECK(is_3sum_witness(p.instance.values(), *found));
  }
}

TEST_CASE("3sum solvers agree with the triple loop") {
  auto rng = make_rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = uniform_int<std::size_t>(rng, 3, 64);
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(uniform_int<std::int64_t>(rng, -300, 300));
    const bool want = oracle::naive_3sum(v);
    const auto a = solve_3sum_quadratic(std::span<const std::int64_t>(v));
    const auto b = solve_3sum_hashed(std::span<const std::int64_t>(v));
    CHECK(a.has_value() == want);
    CHECK(b.has_value() == want);
    if (a) CHECK(is_3sum_witness(v, *a));
    if (b) CHECK(is_3sum_witness(v, *b));
  }
}

TEST_CASE("3sum on repeated values uses distinct positions") {
  const std::vector<std::int64_t> twice{3, 3, -6};
  const auto w = solve_3sum_quadratic(std::span<const std::int64_t>(twice));
  REQUIRE(w);
  CHECK(is_3sum_witness(twice, *w));
  const std::vector<std::int64_t> zeros{0, 0};
  CHECK_FALSE(solve_3sum_quadratic(std::span<const std::int64_t>(zeros)));
  const std::vector<BigInt> big{BigInt("100000000000000000000000"), BigInt("-99999999999999999999999"), BigInt(-1)};
  const auto bw = solve_3sum_hashed(big);
  REQUIRE(bw);
  CHECK(is_3sum_witness(big, *bw));
}

TEST_CASE("3xor examples") {
  CHECK(solve_3xor_quadratic(bits({"001", "010", "011"})));
  CHECK_FALSE(solve_3xor_quadratic(bits({"001", "010", "100"})));
  CHECK(count_3xor_triples_wht(bits({"001", "010", "011"})) == 6);
  CHECK(count_3xor_triples_wht(bits({"001", "010", "100"})) == 0);
  CHECK(solve_3xor_wht(bits({"001", "010", "011"})));
  CHECK_FALSE(solve_3xor_wht(bits({"001", "010", "100"})));
}

TEST_CASE("3xor solvers agree with the triple loop") {
  auto rng = make_rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto width = uniform_int<std::size_t>(rng, 3, 10);
    const auto n = uniform_int<std::size_t>(rng, 3, std::min<std::size_t>(64, std::size_t{1} << width));
    const BitVectorSet s(random_vectors(rng, n, width), width);
    const bool want = oracle::naive_3xor(s.vectors());
    const auto q = solve_3xor_quadratic(s);
    const auto w = solve_3xor_wht(s);
    CHECK(q.has_value() == want);
    CHECK(w.has_value() == want);
    if (q) CHECK(is_3xor_witness(s.vectors(), *q));
    if (w) CHECK(is_3xor_witness(s.vectors(), *w));
    if (width <= 8 && n <= 32) CHECK(count_3xor_triples_wht(s) == oracle::naive_xor_triples(s.vectors()));
  }
  auto big = make_rng(13);
  const BitVectorSet s(random_vectors(big, 200, 24), 24);
  CHECK(solve_3xor_quadratic(s).has_value() == oracle::naive_3xor(s.vectors()));
}

TEST_CASE("3xor with the zero vector and repeats") {
  const std::vector<BitVec> repeated{BitVec::from_binary("101"), BitVec::from_binary("101"),
                                     BitVec::from_binary("000")};
  const auto w = solve_3xor_quadratic(repeated);
  REQUIRE(w);
  CHECK(is_3xor_witness(repeated, *w));
  CHECK_FALSE(solve_3xor_quadratic(bits({"000", "001", "010"})));
  CHECK(count_3xor_triples_wht(bits({"000", "001", "010"})) == 0);
  CHECK_THROWS(solve_3xor_wht(BitVectorSet({BitVec(30)}, 30), 24));
}

TEST_CASE("walsh-hadamard is an involution up to scale") {
  std::vector<std::int64_t> v{1, 0, 3, -2, 5, 0, 0, 7};
  auto w = v;
  walsh_hadamard(w);
  walsh_hadamard(w);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(w[i] == 8 * v[i]);
}

TEST_CASE("triangle detection and listing examples") {
  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  const auto t = detect_triangle(k3);
  REQUIRE(t);
  CHECK(oracle::labels_of(k3, *t) == std::array<Label, 3>{1, 2, 3});
  CHECK_FALSE(detect_triangle(oracle::graph_of({{1, 2}, {2, 3}})));
  const auto k4 = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(list_all_triangles(k4).size() == 4);
  CHECK(list_all_triangles(k3, 0).empty());
  CHECK(list_all_triangles(k4, 2).size() == 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = gen_graph(100, 300, 5, seed);
    const auto d = detect_triangle(g);
    REQUIRE(d);
    CHECK(is_triangle(g, *d));
  }
}

TEST_CASE("listing equals node-triple enumeration") {
  auto rng = make_rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = uniform_int<std::size_t>(rng, 3, 80);
    const auto m = uniform_int<std::size_t>(rng, 0, std::min<std::size_t>(n * (n - 1) / 2, 240));
    const auto g = gen_graph(n, m, 0, trial);
    const auto listed = list_all_triangles(g);
    std::set<std::array<Label, 3>> got;
    for (const auto& t : listed) {
      CHECK(is_triangle(g, t));
      got.insert(oracle::labels_of(g, t));
    }
    CHECK(got.size() == listed.size());
    const auto want = oracle::naive_triangles(g);
    CHECK(got == want);
    CHECK(detect_triangle(g).has_value() == !want.empty());
  }
}

TEST_CASE("c3xor examples") {
  std::vector<std::optional<BitVec>> cells{BitVec::from_binary("111"), BitVec::from_binary("001"),
                                           BitVec::from_binary("010"), BitVec::from_binary("011")};
  const C3xorArray a(cells, 3);
  const auto w = solve_c3xor_bruteforce(a);
  REQUIRE(w);
  CHECK(*w == WitnessC3xor{1, 2});

  cells[0] = BitVec::from_binary("000");
  CHECK(*solve_c3xor_bruteforce(C3xorArray(cells, 3)) == WitnessC3xor{0, 0});
  CHECK_FALSE(solve_c3xor_bruteforce(C3xorArray(std::vector<std::optional<BitVec>>(8), 3)));
}

TEST_CASE("c3xor brute force agrees with the pair loop") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = std::size_t{4} << (seed % 4);
    const auto a = gen_c3xor(n, seed % 3 == 0, seed, 4, 0.3).instance;
    const auto w = solve_c3xor_bruteforce(a);
    CHECK(w.has_value() == oracle::naive_c3xor(a));
    if (w) CHECK(is_c3xor_witness(a, *w));
  }
}

TEST_CASE("4-clique examples and agreement") {
  const auto k4 = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const auto c = detect_4clique_bruteforce(k4);
  REQUIRE(c);
  CHECK(*c == std::array<NodeId, 4>{0, 1, 2, 3});
  CHECK_FALSE(detect_4clique_bruteforce(oracle::graph_of({{1, 2}, {2, 3}, {1, 3}})));
  auto rng = make_rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = uniform_int<std::size_t>(rng, 0, 400);
    const auto g = gen_graph(40, m, 0, trial);
    CHECK(detect_4clique_bruteforce(g).has_value() == oracle::naive_4clique(g));
  }
}

TEST_CASE("6sum examples and agreement") {
  std::vector<Z3Vec> s;
  for (auto d : {"1", "1", "1", "2", "2", "2"}) s.push_back(Z3Vec::from_digits(d));
  const auto w = solve_6sum_z3(s);
  REQUIRE(w);
  CHECK(w->idx == std::array<std::size_t, 6>{0, 1, 2, 3, 4, 5});
  s.clear();
  for (auto d : {"1", "1", "1", "1", "1", "2"}) s.push_back(Z3Vec::from_digits(d));
  CHECK_FALSE(solve_6sum_z3(s));

  auto rng = make_rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    const bool large = trial < 3;
    const std::size_t n = large ? 30 : uniform_int<std::size_t>(rng, 6, 14);
    std::vector<Z3Vec> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_z3(rng, large ? 8 : 4));
    const auto got = solve_6sum_z3(v);
    if (got) CHECK(is_6sum_witness(v, *got));
    CHECK(got.has_value() == oracle::naive_6sum(v));
  }
  CHECK_THROWS_AS(solve_6sum_z3(std::vector<Z3Vec>(50, Z3Vec(3)), 100), std::length_error);
}
