#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "triweb/detect_reduce.hpp"
#include "triweb/generate.hpp"
#include "triweb/list_reduce.hpp"
#include "triweb/solvers.hpp"

using namespace triweb;

namespace {

std::set<Triangle> as_set(const std::vector<Triangle>& ts) { return {ts.begin(), ts.end()}; }

std::set<Triangle> all_triangles(const Graph& g) { return as_set(list_all_triangles(g)); }

void check_listing(const Graph& g, const std::vector<Triangle>& got, std::size_t t) {
  const auto expected = all_triangles(g);
  const auto set = as_set(got);
  CHECK(set.size() == got.size());
  CHECK(got.size() == std::min(t, expected.size()));
  for (const auto& tri : got) CHECK(expected.count(tri) == 1);
}

TriangleDetector counting(std::size_t& calls) {
  return [&calls, inner = baseline_detector()](const Graph& g) {
    ++calls;
    return inner(g);
  };
}

TriangleDetector via_3sum() {
  return [](const Graph& g) {
    const auto r = detect_via_3sum(g, default_sum3_solver());
    return DetectorAnswer{r.has_triangle, r.triangle};
  };
}

std::set<Triangle> triangles_of_edges(const Graph& h, std::span<const Edge> edges) {
  std::set<Triangle> out;
  const auto sub = edge_subgraph(h, edges);
  for (const auto& t : list_all_triangles(sub))
    out.insert(make_triangle(static_cast<NodeId>(sub.label(t.nodes[0])), static_cast<NodeId>(sub.label(t.nodes[1])),
                             static_cast<NodeId>(sub.label(t.nodes[2]))));
  return out;
}

}  // namespace

TEST_CASE("parameter validation") {
  ListingParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma = 0.3;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.base_case_edges = 2;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.delta = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("stage one peels high-degree corners") {
  const auto k4 = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const auto all = stage1_high_degree(k4, 0.4, 10);
  CHECK(all.high_degree_nodes == 4);
  CHECK(all.triangles.size() == 4);
  CHECK(all.residual.edge_count() == 0);
  CHECK(stage1_high_degree(k4, 0.4, 2).triangles.size() == 2);

  // Hub 1 joined to a path 2-3-4-5: degree 4 > 0.5·7.
  const auto fan = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {3, 4}, {4, 5}});
  const auto r = stage1_high_degree(fan, 0.5, 10);
  CHECK(r.high_degree_nodes == 1);
  CHECK(r.triangles.size() == 3);
  CHECK(r.residual.edge_count() == 3);
  for (const auto& t : r.triangles) CHECK(is_triangle(fan, t));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = gen_graph(30, 120, 3, seed);
    const auto s = stage1_high_degree(g, 0.1, 1000);
    const double threshold = 0.1 * static_cast<double>(g.edge_count());
    std::set<Triangle> expected;
    for (const auto& t : list_all_triangles(g)) {
      bool high = false;
      for (auto v : t.nodes) high |= static_cast<double>(g.degree(v)) > threshold;
      if (high) expected.insert(t);
    }
    CHECK(as_set(s.triangles) == expected);
    CHECK(s.triangles.size() == expected.size());
    for (std::size_t v = 0; v < s.residual.node_count(); ++v)
      CHECK(static_cast<double>(g.degree(static_cast<NodeId>(s.residual.label(static_cast<NodeId>(v))))) <= threshold);
  }
}

TEST_CASE("stage two triples edges and triangles") {
  const auto k3 = oracle::graph_of({{1, 2}, {2, 3}, {1, 3}});
  const auto h3 = stage2_tripartite(k3);
  CHECK(h3.graph.edge_count() == 18);
  CHECK(list_all_triangles(h3.graph).size() == 6);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = gen_graph(15, 40, 2, seed);
    const auto h = stage2_tripartite(g);
    CHECK_NOTHROW(h.validate());
    CHECK(h.graph.edge_count() == 6 * g.edge_count());
    const auto th = list_all_triangles(h.graph);
    CHECK(th.size() == 6 * list_all_triangles(g).size());
    for (const auto& t : th) {
      std::set<int> parts;
      std::set<NodeId> base;
      for (auto v : t.nodes) {
        parts.insert(h.part_of(v));
        base.insert(project_copy(h, g.node_count(), v));
      }
      CHECK(parts.size() == 3);
      REQUIRE(base.size() == 3);
      const std::vector<NodeId> b(base.begin(), base.end());
      CHECK(is_triangle(g, make_triangle(b[0], b[1], b[2])));
    }
  }
}

TEST_CASE("partitions cover every edge twice and every triangle once") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_graph(20, 60, 4, seed);
    const auto h = stage2_tripartite(g);
    const auto root = root_subproblem(h);
    CHECK(root.edges.size() == h.graph.edge_count());
    const auto spec = partition_spec(h, ListingParams{});
    const SmallBiasGenerator gen(spec);
    const auto out = partition_with_seed(h, root, gen, seed);
    std::map<std::pair<NodeId, NodeId>, int> seen;
    std::size_t largest = 0;
    for (const auto& child : out.children) {
      CHECK(child.depth == 1);
      largest = std::max(largest, child.edges.size());
      for (const auto& e : child.edges) ++seen[{std::min(e.u, e.v), std::max(e.u, e.v)}];
    }
    CHECK(out.max_child_edges == largest);
    CHECK(seen.size() == root.edges.size());
    for (const auto& [e, count] : seen) CHECK(count == 2);

    std::map<Triangle, int> hits;
    for (const auto& child : out.children)
      for (const auto& t : triangles_of_edges(h.graph, child.edges)) ++hits[t];
    const auto expected = all_triangles(h.graph);
    CHECK(hits.size() == expected.size());
    for (const auto& [t, c] : hits) CHECK(c == 1);
  }
}

TEST_CASE("balanced partitions respect the edge bound") {
  ListingParams p;
  p.delta = 0.005;
  const auto g = gen_graph(300, 2000, 10, 77);
  const auto h = stage2_tripartite(g);
  const auto out = balanced_partition(h, root_subproblem(h), p);
  CHECK(static_cast<double>(out.max_child_edges) <= (0.25 + p.gamma) * static_cast<double>(h.graph.edge_count()));
  CHECK(out.seeds_tried >= 1);
}

TEST_CASE("triangle-free input costs one detector call") {
  const auto c6 = oracle::graph_of({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}});
  std::size_t calls = 0;
  const auto r = list_triangles(c6, 5, counting(calls));
  CHECK(r.triangles.empty());
  CHECK(calls == 1);
  CHECK(r.stats.detector_calls == 1);
}

TEST_CASE("listing examples") {
  const auto k4 = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const auto all = list_triangles(k4, 10, baseline_detector());
  check_listing(k4, all.triangles, 10);
  CHECK(all.triangles.size() == 4);
  check_listing(k4, list_triangles(k4, 2, baseline_detector()).triangles, 2);
  CHECK_THROWS_AS(list_triangles(k4, 0, baseline_detector()), std::invalid_argument);
  CHECK(list_triangles(Graph{}, 3, baseline_detector()).triangles.empty());
}

TEST_CASE("listing matches the oracle on random graphs") {
  ListingParams practical;
  practical.delta = 0.005;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = gen_graph(40 + seed % 30, 150 + 5 * seed, seed % 6, seed);
    const std::size_t z = list_all_triangles(g).size();
    for (std::size_t t : {std::size_t{1}, (z + 1) / 2, z, g.edge_count()}) {
      const auto r = list_triangles(g, t, baseline_detector(), practical);
      check_listing(g, r.triangles, t);
      CHECK_FALSE(r.stats.live_bound_violated);
      CHECK(r.stats.max_partition_ratio <= 0.25 + practical.gamma + 1e-12);
      check_listing(g, list_triangles(g, t, baseline_detector()).triangles, t);
    }
  }
}

TEST_CASE("listing composes with the 3SUM detector") {
  ListingParams p;
  p.delta = 0.01;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = gen_graph(25, 70, 3, seed + 500);
    const std::size_t z = list_all_triangles(g).size();
    check_listing(g, list_triangles(g, z + 1, via_3sum(), p).triangles, z + 1);
  }
}

TEST_CASE("trace lines have four fields") {
  ListingParams p;
  p.delta = 0.005;
  p.trace = true;
  const auto g = gen_graph(1000, 2000, 5, 3);
  const auto r = list_triangles(g, 100, baseline_detector(), p);
  REQUIRE_FALSE(r.stats.trace.empty());
  for (const auto& line : r.stats.trace) {
    std::istringstream in(line);
    std::string a, b, c, d, extra;
    CHECK(static_cast<bool>(in >> a >> b >> c >> d));
    CHECK_FALSE(static_cast<bool>(in >> extra));
  }
}
