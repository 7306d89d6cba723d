#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "triweb/errors.hpp"
#include "triweb/generate.hpp"
#include "triweb/io.hpp"
#include "triweb/solvers.hpp"

using namespace triweb;

TEST_CASE("bitvec hex is big-endian and bit 0 is the lsb") {
  const auto v = BitVec::from_hex("0b", 8);
  CHECK(v.get(0));
  CHECK(v.get(1));
  CHECK_FALSE(v.get(2));
  CHECK(v.get(3));
  CHECK(v.to_hex() == "0b");
  CHECK(BitVec::from_binary("101").to_uint() == 5);
  CHECK(BitVec::from_uint(5, 3).to_binary() == "101");
}

TEST_CASE("bitvec concat, slice and dot") {
  const auto hi = BitVec::from_binary("11"), lo = BitVec::from_binary("001");
  const auto c = hi.concat(lo);
  CHECK(c.width() == 5);
  CHECK(c.to_binary() == "11001");
  CHECK(c.slice(3, 2) == hi);
  CHECK(c.slice(0, 3) == lo);
  CHECK(BitVec::from_binary("11").dot(BitVec::from_binary("01")));
  CHECK_FALSE(BitVec::from_binary("11").dot(BitVec::from_binary("11")));
}

TEST_CASE("bitvec wide values survive a hex round trip") {
  auto rng = make_rng(3);
  for (std::size_t width : {1, 63, 64, 65, 130}) {
    const auto v = random_bitvec(rng, width);
    CHECK(BitVec::from_hex(v.to_hex(), width) == v);
  }
  CHECK_THROWS(BitVec::from_hex("1f", 4));
}

TEST_CASE("z3 vectors add digit-wise mod 3") {
  const auto a = Z3Vec::from_digits("0122"), b = Z3Vec::from_digits("2112");
  CHECK((a + b).to_digits() == "2201");
  CHECK((a + a.negated()).is_zero());
  auto rng = make_rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_z3(rng, 70), y = random_z3(rng, 70);
    const auto s = x + y;
    for (std::size_t k = 0; k < 70; ++k) CHECK(s.get(k) == (x.get(k) + y.get(k)) % 3);
  }
}

TEST_CASE("normalize_graph drops loops and duplicates") {
  const auto g = oracle::graph_of({{1, 2}, {2, 1}, {3, 3}});
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  const auto report = normalize_graph_report(std::vector<std::pair<Label, Label>>{{1, 2}, {2, 1}, {3, 3}});
  CHECK(report.duplicates_removed == 1);
  CHECK(report.self_loops_removed == 1);

  const auto empty = normalize_graph(std::vector<std::pair<Label, Label>>{});
  CHECK(empty.node_count() == 0);
  CHECK(empty.edge_count() == 0);

  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  CHECK(k3.edge_count() == 3);
  CHECK(detect_triangle(k3).has_value());
}

TEST_CASE("normalize_graph is idempotent and symmetric") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_graph(40, 120, 2, seed);
    CHECK(normalize_graph(labelled_edges(g)) == g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      CHECK(g.degree(v) > 0);
      for (auto u : g.neighbors(v)) {
        CHECK(u != v);
        CHECK(g.has_edge(u, v));
      }
    }
  }
}

TEST_CASE("gen_graph examples") {
  const auto k3 = gen_graph(3, 3, 1, 9);
  CHECK(k3.edge_count() == 3);
  CHECK(list_all_triangles(k3).size() == 1);

  const auto two = gen_graph(4, 2, 0, 9);
  CHECK(two.edge_count() == 2);
  CHECK(list_all_triangles(two).empty());

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_graph(100, 300, 5, seed);
    CHECK(g.edge_count() == 300);
    CHECK(list_all_triangles(g).size() >= 5);
    CHECK(gen_graph(100, 300, 5, seed) == g);
  }
  CHECK_THROWS_AS(gen_graph(3, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_graph(3, 3, 2, 1), std::invalid_argument);
}

TEST_CASE("planted instances carry verified witnesses") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = gen_3sum(3, true, seed);
    REQUIRE(s.witness);
    CHECK(is_3sum_witness(s.instance.values(), *s.witness));

    const auto x = gen_3xor(3, true, seed);
    REQUIRE(x.witness);
    CHECK(is_3xor_witness(x.instance.vectors(), *x.witness));

    const auto c = gen_c3xor(16, true, seed, 0, 0.3);
    REQUIRE(c.witness);
    CHECK(is_c3xor_witness(c.instance, *c.witness));

    const auto z = gen_6sum(12, true, seed);
    REQUIRE(z.witness);
    CHECK(is_6sum_witness(z.instance.elements(), *z.witness));
  }
}

TEST_CASE("unplanted instances have no solution") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = gen_3sum(50, false, seed);
    CHECK_FALSE(s.witness);
    CHECK_FALSE(oracle::naive_3sum(s.instance.values()));
    const auto x = gen_3xor(40, false, seed);
    CHECK_FALSE(oracle::naive_3xor(x.instance.vectors()));
    CHECK_FALSE(oracle::naive_c3xor(gen_c3xor(32, false, seed).instance));
  }
}

TEST_CASE("generators are deterministic given the seed") {
  for (auto kind : {InstanceKind::Sum3, InstanceKind::Xor3, InstanceKind::C3xor, InstanceKind::Sum6}) {
    const auto a = gen_planted_instance(kind, 16, true, 42);
    const auto b = gen_planted_instance(kind, 16, true, 42);
    std::ostringstream x, y;
    write_instance(x, a.instance);
    write_instance(y, b.instance);
    CHECK(x.str() == y.str());
    CHECK(a.witness == b.witness);
  }
  CHECK_THROWS(gen_planted_instance(InstanceKind::Sum3, 2, true, 1));
  CHECK_THROWS(gen_planted_instance(InstanceKind::Sum6, 5, true, 1));
}

TEST_CASE("instance invariants are enforced") {
  CHECK_THROWS_AS(IntegerSet({1, 1}, 10), InvariantViolation);
  CHECK_THROWS_AS(IntegerSet({11}, 10), InvariantViolation);
  CHECK_THROWS_AS(BitVectorSet({BitVec::from_binary("01"), BitVec::from_binary("01")}, 2), InvariantViolation);
  CHECK_THROWS_AS(BitVectorSet({BitVec::from_binary("011")}, 2), InvariantViolation);
  CHECK_THROWS_AS(C3xorArray(std::vector<std::optional<BitVec>>(3), 4), InvariantViolation);
  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  TripartiteGraph bad{k3, {NodeRange{1, 3}, NodeRange{3, 4}, NodeRange{4, 5}}};
  CHECK_THROWS_AS(bad.validate(), InvariantViolation);
}

TEST_CASE("text formats round trip exactly") {
  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  std::ostringstream out;
  write_graph(out, k3);
  CHECK(out.str() == "3 3\n1 2\n2 3\n1 3\n");
  std::istringstream in(out.str());
  CHECK(read_graph(in) == k3);

  const IntegerSet ints({-1, 0, 2}, 27);
  std::ostringstream io;
  write_integer_set(io, ints);
  CHECK(io.str() == "-1\n0\n2\n");
  std::istringstream ii(io.str());
  const auto back = read_integer_set(ii);
  CHECK(std::ranges::equal(back.values(), ints.values()));

  std::vector<std::optional<BitVec>> cells{BitVec::from_binary("111"), BitVec::from_binary("001"), std::nullopt,
                                           BitVec::from_binary("011")};
  const C3xorArray arr(cells, 3);
  std::ostringstream co;
  write_c3xor(co, arr);
  CHECK(co.str().find("\n2 -\n") != std::string::npos);
  std::istringstream ci(co.str());
  CHECK(read_c3xor(ci) == arr);

  for (auto kind : {InstanceKind::Sum3, InstanceKind::Xor3, InstanceKind::C3xor, InstanceKind::Sum6}) {
    const auto g = gen_planted_instance(kind, 16, true, 7);
    std::ostringstream w;
    write_instance(w, g.instance);
    std::istringstream r(w.str());
    const auto back = read_instance(r, format_of(g.instance));
    std::ostringstream w2;
    write_instance(w2, back);
    CHECK(w2.str() == w.str());
  }
}

TEST_CASE("malformed input reports the line number") {
  std::istringstream in("3 2\n1 2\nx y\n");
  try {
    (void)read_graph(in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream dup("1\n1\n");
  CHECK_THROWS_AS(read_integer_set(dup), InvariantViolation);
  CHECK_THROWS_AS(parse_format("csv"), std::invalid_argument);
}
