#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "triweb/clique_reduce.hpp"
#include "triweb/generate.hpp"
#include "triweb/prand.hpp"
#include "triweb/solvers.hpp"

using namespace triweb;

namespace {

Graph from_mask(std::size_t nodes, std::uint64_t mask) {
  std::vector<std::pair<Label, Label>> edges;
  std::size_t bit = 0;
  for (Label u = 1; u <= nodes; ++u)
    for (Label v = u + 1; v <= nodes; ++v, ++bit)
      if ((mask >> bit) & 1U) edges.emplace_back(u, v);
  return normalize_graph(edges);
}

void check_clique(const Graph& g, const CliqueResult& r) {
  REQUIRE(r.has_clique);
  REQUIRE(r.clique.has_value());
  const auto& c = *r.clique;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) CHECK(g.has_edge(c[a], c[b]));
}

/// Visits every multiset of `size` values from [0, labels), as counts.
template <class F>
void for_each_multiset(std::size_t labels, std::size_t size, std::vector<std::size_t>& counts, std::size_t at, F&& f) {
  if (at + 1 == labels) {
    counts[at] = size;
    f(counts);
    return;
  }
  for (std::size_t k = 0; k <= size; ++k) {
    counts[at] = k;
    for_each_multiset(labels, size - k, counts, at + 1, f);
  }
}

}  // namespace

TEST_CASE("small examples") {
  const auto k4 = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const auto r = detect_4clique_via_6sum(k4);
  check_clique(k4, r);
  CHECK(r.elements == 6);
  CHECK(*r.clique == std::array<NodeId, 4>{0, 1, 2, 3});

  const auto k3_pendants = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}, {1, 4}, {2, 5}, {3, 6}});
  CHECK_FALSE(detect_4clique_via_6sum(k3_pendants).has_clique);
  CHECK_FALSE(detect_4clique_via_6sum(oracle::graph_of({{1, 2}, {2, 3}})).has_clique);
  CHECK_FALSE(detect_4clique_via_6sum(Graph{}).has_clique);
}

TEST_CASE("edge sums use the ternary design labels") {
  const auto g = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  const auto d = build_design(3, kCliqueDesignC, DesignStrategy::Polynomial, 0);
  const auto sums = clique_edge_sums(g, d);
  REQUIRE(sums.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto e = g.edges()[i];
    CHECK(sums[i] == design_label_ternary(d, e.u) + design_label_ternary(d, e.v));
  }
  const auto tiny = build_design(2, kCliqueDesignC, DesignStrategy::Polynomial, 0);
  CHECK_THROWS(clique_edge_sums(g, tiny));
}

TEST_CASE("a design with too large an intersection ratio is rejected") {
  const auto k4 = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const auto loose = build_design(4, 11.0, DesignStrategy::Polynomial, 0);
  REQUIRE(loose.intersection_ratio() >= 1.0 / 11);
  CHECK_THROWS_AS(detect_4clique_via_6sum(k4, loose, default_sum6_solver()), std::invalid_argument);
}

TEST_CASE("six labels sum to zero only when each count is a multiple of three") {
  const auto d = build_design(7, kCliqueDesignC, DesignStrategy::Polynomial, 0);
  std::vector<Z3Vec> labels;
  for (std::size_t i = 0; i < 7; ++i) labels.push_back(design_label_ternary(d, i));
  std::vector<std::size_t> counts(7);
  std::size_t visited = 0;
  for_each_multiset(7, 6, counts, 0, [&](const std::vector<std::size_t>& c) {
    Z3Vec sum(d.universe);
    bool all_triples = true;
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t k = 0; k < c[i]; ++k) sum += labels[i];
      all_triples &= c[i] % 3 == 0;
    }
    CHECK(sum.is_zero() == all_triples);
    ++visited;
  });
  CHECK(visited == 924);
}

TEST_CASE("every graph on at most five nodes") {
  for (std::size_t nodes = 1; nodes <= 5; ++nodes) {
    const std::size_t pairs = nodes * (nodes - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const auto g = from_mask(nodes, mask);
      const auto r = detect_4clique_via_6sum(g);
      CHECK(r.has_clique == oracle::naive_4clique(g));
      if (r.has_clique) check_clique(g, r);
    }
  }
}

TEST_CASE("random graphs agree with brute force") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 8 + seed % 30;
    const std::size_t m = std::min<std::size_t>(n * (n - 1) / 2, 2 * n + seed % 40);
    const auto g = gen_graph(n, m, seed % 3, seed);
    const auto r = detect_4clique_via_6sum(g);
    CHECK(r.has_clique == detect_4clique_bruteforce(g).has_value());
    CHECK(r.has_clique == oracle::naive_4clique(g));
    if (r.has_clique) check_clique(g, r);
  }
}

TEST_CASE("a lying solver is caught") {
  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}});
  const Sum6Solver liar = [](std::span<const Z3Vec>) { return Witness6{{0, 1, 2, 3, 4, 5}}; };
  CHECK_THROWS_AS(detect_4clique_via_6sum(k3, liar), std::logic_error);
}
