#include <doctest.h>

#include "oracles.hpp"
#include "triweb/detect_reduce.hpp"
#include "triweb/errors.hpp"
#include "triweb/generate.hpp"
#include "triweb/solvers.hpp"

using namespace triweb;

namespace {

DetectOptions randomized(std::uint64_t seed, std::size_t rounds = 20) {
  DetectOptions o;
  o.mode = LabelMode::Randomized;
  o.seed = seed;
  o.confidence_rounds = rounds;
  return o;
}

void check_triangle(const Graph& g, const DetectResult& r) {
  REQUIRE(r.has_triangle);
  REQUIRE(r.triangle.has_value());
  CHECK(is_triangle(g, *r.triangle));
}

}  // namespace

TEST_CASE("small examples in both label modes") {
  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  const auto star = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}});
  const auto c4 = oracle::graph_of({{1, 2}, {2, 3}, {3, 4}, {4, 1}});

  for (auto opts : {DetectOptions{}, randomized(5)}) {
    const auto x = detect_via_3xor(k3, default_xor3_solver(), opts);
    check_triangle(k3, x);
    CHECK(oracle::labels_of(k3, *x.triangle) == std::array<Label, 3>{1, 2, 3});
    check_triangle(k3, detect_via_3sum(k3, default_sum3_solver(), opts));
    CHECK_FALSE(detect_via_3xor(star, default_xor3_solver(), opts).has_triangle);
    CHECK_FALSE(detect_via_3sum(star, default_sum3_solver(), opts).has_triangle);
    CHECK_FALSE(detect_via_3xor(c4, default_xor3_solver(), opts).has_triangle);
    CHECK_FALSE(detect_via_3sum(c4, default_sum3_solver(), opts).has_triangle);
  }
  CHECK_FALSE(detect_via_3xor(Graph{}, default_xor3_solver()).has_triangle);
}

TEST_CASE("labelings have the promised shape") {
  const auto g = gen_graph(12, 30, 2, 4);
  std::vector<BitVec> xs;
  std::vector<BigInt> ns;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    xs.push_back(BitVec::from_uint(v * 37 + 5, 12));
    ns.push_back(BigInt(v * v + 3));
  }
  const auto xl = xor_labeling(g, xs);
  REQUIRE(xl.edge_values.size() == g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto e = xl.back_map[i];
    CHECK(g.has_edge(e.u, e.v));
    CHECK(xl.edge_values[i] == (xs[e.u] ^ xs[e.v]));
  }
  const auto sl = sum_labeling(g, ns);
  REQUIRE(sl.edge_values.size() == 2 * g.edge_count());
  for (std::size_t i = 0; i < sl.edge_values.size(); ++i) {
    const auto e = sl.back_map[i];
    CHECK(g.has_edge(e.u, e.v));
    CHECK(sl.edge_values[i] == ns[e.u] - ns[e.v]);
  }
  CHECK_THROWS_AS(xor_labeling(g, {}), std::invalid_argument);
}

TEST_CASE("deterministic labels agree with direct detection") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 4 + seed % 15;
    const std::size_t m = std::min<std::size_t>(n * (n - 1) / 2, n + seed % 13);
    const auto g = gen_graph(n, m, 0, seed);
    const bool expect = !oracle::naive_triangles(g).empty();
    const auto x = detect_via_3xor(g, default_xor3_solver());
    const auto s = detect_via_3sum(g, default_sum3_solver());
    CHECK(x.has_triangle == expect);
    CHECK(s.has_triangle == expect);
    if (expect) {
      check_triangle(g, x);
      check_triangle(g, s);
    }
    CHECK(x.certified);
    CHECK(s.certified);
  }
}

TEST_CASE("randomized labels never miss a triangle") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto g = gen_graph(10 + seed % 20, 20 + seed % 25, seed % 2, seed);
    const bool expect = !oracle::naive_triangles(g).empty();
    const auto x = detect_via_3xor(g, default_xor3_solver(), randomized(seed));
    const auto s = detect_via_3sum(g, default_sum3_solver(), randomized(seed));
    if (expect) {
      check_triangle(g, x);
      check_triangle(g, s);
    } else {
      CHECK_FALSE((x.has_triangle && x.certified));
      CHECK_FALSE((s.has_triangle && s.certified));
    }
  }
}

TEST_CASE("randomized label width") {
  CHECK(randomized_label_bits(1) == 3);
  CHECK(randomized_label_bits(1000) == 30);
}

TEST_CASE("a 64-bit solver rejects wide labels") {
  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  const auto narrow = narrow_to_int64([](std::span<const std::int64_t> v) { return solve_3sum_quadratic(v); });
  CHECK_THROWS_AS(detect_via_3sum(k3, narrow), LabelOverflow);
  check_triangle(k3, detect_via_3sum(k3, narrow, randomized(1)));
}

TEST_CASE("decision-only rounds must all say yes") {
  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  std::size_t calls = 0;
  const Xor3Decider always = [&](std::span<const BitVec>) {
    ++calls;
    return true;
  };
  const auto yes = detect_via_3xor_decision(k3, always, randomized(3, 6));
  CHECK(yes.has_triangle);
  CHECK_FALSE(yes.certified);
  CHECK(yes.rounds == 6);
  CHECK(calls == 6);

  std::size_t seen = 0;
  const Sum3Decider second_no = [&](std::span<const BigInt>) { return ++seen < 2; };
  const auto no = detect_via_3sum_decision(k3, second_no, randomized(3, 6));
  CHECK_FALSE(no.has_triangle);
  CHECK(no.rounds == 2);

  const auto c4 = oracle::graph_of({{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  const Xor3Decider honest = [](std::span<const BitVec> v) { return solve_3xor_quadratic(v).has_value(); };
  CHECK_FALSE(detect_via_3xor_decision(c4, honest, randomized(9, 10)).has_triangle);
  CHECK(detect_via_3xor_decision(k3, honest, randomized(9, 10)).has_triangle);
  CHECK_THROWS_AS(detect_via_3xor_decision(k3, honest, DetectOptions{}), std::invalid_argument);
}
